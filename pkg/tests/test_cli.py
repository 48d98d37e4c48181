import pytest

from conftest import ARP_TEXT
from ecdlink import linkframe as lf
from ecdlink.cli import main
from ecdlink.curves import key_from_text


def run(*argv):
    return main(list(argv))


@pytest.fixture
def keys(tmp_path):
    """Deterministic recipient and signer key pairs on disk."""
    alice = tmp_path / "alice.key"
    bob = tmp_path / "bob.key"
    assert run("keygen", "--curve", "P-192", "--out", str(alice), "--seed", "a1") == 0
    assert run("keygen", "--curve", "P-192", "--out", str(bob), "--seed", "b2") == 0
    return alice, bob


def write_capture(path, *frames, byte_order="big"):
    records = [
        lf.PcapRecord(ts_sec=i, ts_usec=i, data=f.to_bytes())
        for i, f in enumerate(frames)
    ]
    path.write_bytes(lf.pcap_write(lf.PcapFile(byte_order, 65535, 1, records)))


def arp_text_frame():
    packet = lf.ArpPacket(1, 0x0800, 6, 4, 1, b"\x0a" * 6,
                          bytes([1, 1, 0, 178]), b"\x00" * 6, bytes([1, 1, 0, 1]))
    return lf.EthernetFrame(b"\xff" * 6, b"\x0a" * 6, lf.ETHERTYPE_ARP, packet.to_bytes())


class TestKeygen:
    def test_writes_private_and_public(self, tmp_path):
        out = tmp_path / "k.key"
        assert run("keygen", "--curve", "P-256", "--out", str(out), "--seed", "33") == 0
        curve, Q, d = key_from_text(out.read_text())
        assert curve.name == "P-256" and d is not None
        curve2, Q2, d2 = key_from_text((tmp_path / "k.key.pub").read_text())
        assert (curve2.name, Q2, d2) == ("P-256", Q, None)

    def test_seed_determinism(self, tmp_path):
        a, b = tmp_path / "a.key", tmp_path / "b.key"
        run("keygen", "--curve", "P-192", "--out", str(a), "--seed", "77")
        run("keygen", "--curve", "P-192", "--out", str(b), "--seed", "77")
        assert a.read_bytes() == b.read_bytes()

    def test_seed_warning_on_stderr(self, tmp_path, capsys):
        run("keygen", "--curve", "P-192", "--out", str(tmp_path / "k"), "--seed", "01")
        captured = capsys.readouterr()
        assert "testing only" in captured.err or "predictable" in captured.err

    def test_bad_seed_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run("keygen", "--curve", "P-192", "--out", str(tmp_path / "k"), "--seed", "zz")
        assert exc.value.code == 2

    def test_unknown_curve_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run("keygen", "--curve", "K-163", "--out", str(tmp_path / "k"))
        assert exc.value.code == 2


class TestEncryptDecrypt:
    def test_roundtrip(self, tmp_path, keys):
        alice, _ = keys
        src = tmp_path / "msg.bin"
        src.write_bytes(bytes(range(256)) * 3)
        assert run("encrypt", "--pub", f"{alice}.pub", "--in", str(src),
                   "--out", str(tmp_path / "msg.ecdl")) == 0
        assert run("decrypt", "--priv", str(alice), "--in", str(tmp_path / "msg.ecdl"),
                   "--out", str(tmp_path / "msg.out")) == 0
        assert (tmp_path / "msg.out").read_bytes() == src.read_bytes()

    def test_seeded_encrypt_is_deterministic(self, tmp_path, keys):
        alice, _ = keys
        src = tmp_path / "msg.txt"
        src.write_bytes(ARP_TEXT)
        for name in ("one.ecdl", "two.ecdl"):
            assert run("encrypt", "--pub", f"{alice}.pub", "--in", str(src),
                       "--out", str(tmp_path / name), "--seed", "5eed") == 0
        assert (tmp_path / "one.ecdl").read_bytes() == (tmp_path / "two.ecdl").read_bytes()

    def test_wrong_key_reports_corrupt_block(self, tmp_path, keys, capsys):
        alice, bob = keys
        src = tmp_path / "msg.txt"
        src.write_bytes(b"between nodes")
        run("encrypt", "--pub", f"{alice}.pub", "--in", str(src),
            "--out", str(tmp_path / "msg.ecdl"))
        rc = run("decrypt", "--priv", str(bob), "--in", str(tmp_path / "msg.ecdl"),
                 "--out", str(tmp_path / "bad.out"))
        assert rc == 1
        assert "CorruptBlock" in capsys.readouterr().err
        assert not (tmp_path / "bad.out").exists()  # no partial output

    def test_signed_flow(self, tmp_path, keys, capsys):
        alice, bob = keys
        src = tmp_path / "msg.txt"
        src.write_bytes(b"signed payload")
        ct = tmp_path / "msg.ecdl"
        assert run("encrypt", "--pub", f"{alice}.pub", "--in", str(src),
                   "--out", str(ct), "--sign", str(bob)) == 0
        # without --verify: policy failure
        rc = run("decrypt", "--priv", str(alice), "--in", str(ct),
                 "--out", str(tmp_path / "x.out"))
        assert rc == 1
        assert "SignatureRequired" in capsys.readouterr().err
        # with the right verifier
        assert run("decrypt", "--priv", str(alice), "--in", str(ct),
                   "--out", str(tmp_path / "ok.out"), "--verify", f"{bob}.pub") == 0
        assert (tmp_path / "ok.out").read_bytes() == b"signed payload"
        # with the wrong verifier
        rc = run("decrypt", "--priv", str(alice), "--in", str(ct),
                 "--out", str(tmp_path / "y.out"), "--verify", f"{alice}.pub")
        assert rc == 1
        assert "SignatureInvalid" in capsys.readouterr().err

    def test_missing_input_maps_to_exit_1(self, tmp_path, keys, capsys):
        alice, _ = keys
        rc = run("encrypt", "--pub", f"{alice}.pub", "--in", str(tmp_path / "absent"),
                 "--out", str(tmp_path / "out"))
        assert rc == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_public_key_cannot_decrypt(self, tmp_path, keys, capsys):
        alice, _ = keys
        src = tmp_path / "m"
        src.write_bytes(b"x")
        run("encrypt", "--pub", f"{alice}.pub", "--in", str(src), "--out", str(tmp_path / "c"))
        rc = run("decrypt", "--priv", f"{alice}.pub", "--in", str(tmp_path / "c"),
                 "--out", str(tmp_path / "o"))
        assert rc == 1
        assert "KeyFileError" in capsys.readouterr().err


class TestSignVerify:
    def test_roundtrip_and_tamper(self, tmp_path, keys, capsys):
        alice, _ = keys
        doc = tmp_path / "doc.bin"
        doc.write_bytes(b"frame log contents")
        sig = tmp_path / "doc.sig"
        assert run("sign", "--priv", str(alice), "--in", str(doc), "--out", str(sig)) == 0
        assert run("verify", "--pub", f"{alice}.pub", "--in", str(doc), "--sig", str(sig)) == 0
        doc.write_bytes(b"frame log Contents")
        rc = run("verify", "--pub", f"{alice}.pub", "--in", str(doc), "--sig", str(sig))
        assert rc == 1
        assert "SignatureInvalid" in capsys.readouterr().err


class TestPcapCommands:
    def test_arp_show(self, tmp_path, capsys):
        cap = tmp_path / "cap.pcap"
        write_capture(cap, arp_text_frame())
        assert run("arp-show", "--in", str(cap)) == 0
        assert capsys.readouterr().out == "Who has 1.1.0.1? Tell 1.1.0.178\n"

    def test_secure_open_roundtrip(self, tmp_path, keys, capsys):
        alice, _ = keys
        cap = tmp_path / "cap.pcap"
        raw = lf.EthernetFrame(b"\x01" * 6, b"\x02" * 6, 0x0800, b"\x00\x01\x02")
        write_capture(cap, arp_text_frame(), raw)
        sec = tmp_path / "sec.pcap"
        out = tmp_path / "opened.txt"
        assert run("pcap-secure", "--pub", f"{alice}.pub", "--in", str(cap),
                   "--out", str(sec), "--seed", "caffe1") == 0
        assert run("pcap-open", "--priv", str(alice), "--in", str(sec),
                   "--out", str(out)) == 0
        assert out.read_text() == "Who has 1.1.0.1? Tell 1.1.0.178\nhex:000102\n"

    def test_signed_capture_policy(self, tmp_path, keys, capsys):
        alice, bob = keys
        cap = tmp_path / "cap.pcap"
        write_capture(cap, arp_text_frame())
        sec = tmp_path / "sec.pcap"
        assert run("pcap-secure", "--pub", f"{alice}.pub", "--in", str(cap),
                   "--out", str(sec), "--sign", str(bob), "--seed", "0123") == 0
        rc = run("pcap-open", "--priv", str(alice), "--in", str(sec),
                 "--out", str(tmp_path / "t.txt"))
        assert rc == 1
        assert "SignatureRequired" in capsys.readouterr().err
        assert run("pcap-open", "--priv", str(alice), "--in", str(sec),
                   "--out", str(tmp_path / "ok.txt"), "--verify", f"{bob}.pub") == 0

    def test_not_pcap_maps_to_exit_1(self, tmp_path, keys, capsys):
        alice, _ = keys
        bogus = tmp_path / "bogus.pcap"
        bogus.write_bytes(b"\x00" * 100)
        rc = run("arp-show", "--in", str(bogus))
        assert rc == 1
        assert "NotPcap" in capsys.readouterr().err


class TestBench:
    def test_writes_all_outputs(self, tmp_path):
        csv_path = tmp_path / "bench.csv"
        plot = tmp_path / "bench.dat"
        fig = tmp_path / "bench.png"
        sig_csv = tmp_path / "sig.csv"
        assert run("bench", "--reps", "3", "--csv", str(csv_path),
                   "--plot", str(plot), "--fig", str(fig),
                   "--ecdsa-csv", str(sig_csv), "--seed", "be7c") == 0
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "curve,bits,keygen_s,encrypt_s,decrypt_s,reps"
        assert len(lines) == 6
        assert [l.split(",")[0] for l in lines[1:]] == [
            "P-192", "P-224", "P-256", "P-384", "P-521",
        ]
        assert len(plot.read_text().splitlines()) == 5
        assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
        assert sig_csv.read_text().splitlines()[0] == "curve,bits,sign_s,verify_s,reps"


class TestUsage:
    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run("frobnicate")
        assert exc.value.code == 2
        assert "usage" in capsys.readouterr().err.lower()

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run("arp-show", "--in", "x", "--bogus")
        assert exc.value.code == 2

    def test_no_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run()
        assert exc.value.code == 2
