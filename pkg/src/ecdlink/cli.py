"""Command-line front end.

Exit codes: 0 on success, 1 for operational failures (bad keys, corrupt
input, I/O errors), 2 for usage errors. Diagnostics go to stderr only;
data goes to stdout or to files. Output files are written to a
temporary name and renamed into place, so failures never leave partial
output behind.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile

from . import benchkit, ecdsa, linkframe
from .curves import (
    CurveParams,
    CURVE_NAMES,
    Point,
    curve_from_name,
    key_from_text,
    key_to_text,
    keygen,
)
from .ecelgamal import (
    attach_signature,
    ct_deserialize,
    ct_serialize,
    decrypt,
    encrypt,
    verify_ciphertext,
)
from .errors import (
    CurveMismatch,
    EcdlError,
    KeyFileError,
    SignatureInvalid,
    SignatureRequired,
)
from .modmath import RandomSource, SeededRandom, SystemRandom

log = logging.getLogger(__name__)


def _seed_bytes(value: str) -> bytes:
    try:
        seed = bytes.fromhex(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--seed wants hex octets, got {value!r}")
    if not seed:
        raise argparse.ArgumentTypeError("--seed must not be empty")
    return seed


def _write_atomic(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ecdlink-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _read_file(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _load_key(path: str) -> tuple[CurveParams, Point, int | None]:
    return key_from_text(_read_file(path).decode("utf-8"))


def _load_private(path: str) -> tuple[CurveParams, Point, int]:
    curve, Q, d = _load_key(path)
    if d is None:
        raise KeyFileError(f"{path} holds no private scalar (public key file?)")
    return curve, Q, d


def _require_same_curve(a: CurveParams, b: CurveParams, what: str) -> None:
    if a.name != b.name:
        raise CurveMismatch(f"{what}: {a.name} vs {b.name}")


def _plaintext_line(data: bytes) -> str:
    if all(0x20 <= b < 0x7F for b in data):
        return data.decode("ascii")
    return "hex:" + data.hex()


# --- subcommand handlers ----------------------------------------------------


def _cmd_keygen(args: argparse.Namespace, rng: RandomSource) -> int:
    curve = curve_from_name(args.curve)
    kp = keygen(curve, rng)
    _write_atomic(args.out, key_to_text(curve, kp.Q, kp.d).encode())
    _write_atomic(args.out + ".pub", key_to_text(curve, kp.Q).encode())
    return 0


def _cmd_encrypt(args: argparse.Namespace, rng: RandomSource) -> int:
    curve, Q, _ = _load_key(args.pub)
    ct = encrypt(_read_file(args.infile), Q, curve, rng)
    if args.sign:
        sign_curve, _, d = _load_private(args.sign)
        _require_same_curve(curve, sign_curve, "signing key curve differs")
        ct = attach_signature(ct, d, curve, rng)
    _write_atomic(args.out, ct_serialize(ct))
    return 0


def _cmd_decrypt(args: argparse.Namespace, rng: RandomSource) -> int:
    curve, _, d = _load_private(args.priv)
    ct = ct_deserialize(_read_file(args.infile))
    _require_same_curve(curve, curve_from_name(ct.curve), "container curve differs")
    if args.verify:
        verify_curve, verifier, _ = _load_key(args.verify)
        _require_same_curve(curve, verify_curve, "verification key curve differs")
        if ct.signature is None:
            raise SignatureRequired("--verify given but container is unsigned")
        if not verify_ciphertext(ct, verifier, curve):
            raise SignatureInvalid("container signature does not verify")
    elif ct.signature is not None:
        raise SignatureRequired("container is signed; pass --verify <pubkeyfile>")
    _write_atomic(args.out, decrypt(ct, d, curve))
    return 0


def _cmd_sign(args: argparse.Namespace, rng: RandomSource) -> int:
    curve, _, d = _load_private(args.priv)
    sig = ecdsa.sign(_read_file(args.infile), d, curve, rng)
    _write_atomic(args.out, ecdsa.sig_to_text(curve, sig).encode())
    return 0


def _cmd_verify(args: argparse.Namespace, rng: RandomSource) -> int:
    curve, Q, _ = _load_key(args.pub)
    sig_curve, sig = ecdsa.sig_from_text(_read_file(args.sig).decode("utf-8"))
    _require_same_curve(curve, sig_curve, "signature curve differs")
    if not ecdsa.verify(sig, _read_file(args.infile), Q, curve):
        raise SignatureInvalid(f"signature {args.sig} does not cover {args.infile}")
    return 0


def _cmd_pcap_secure(args: argparse.Namespace, rng: RandomSource) -> int:
    curve, Q, _ = _load_key(args.pub)
    signer = None
    if args.sign:
        sign_curve, _, signer = _load_private(args.sign)
        _require_same_curve(curve, sign_curve, "signing key curve differs")
    pf = linkframe.pcap_read(_read_file(args.infile))
    secured = linkframe.secure_capture(pf, Q, curve, rng, signer)
    _write_atomic(args.out, linkframe.pcap_write(secured))
    return 0


def _cmd_pcap_open(args: argparse.Namespace, rng: RandomSource) -> int:
    _, _, d = _load_private(args.priv)
    verifier = None
    if args.verify:
        _, verifier, _ = _load_key(args.verify)
    pf = linkframe.pcap_read(_read_file(args.infile))
    plaintexts = linkframe.open_capture(pf, d, verifier)
    text = "".join(_plaintext_line(p) + "\n" for p in plaintexts)
    _write_atomic(args.out, text.encode("utf-8"))
    return 0


def _cmd_arp_show(args: argparse.Namespace, rng: RandomSource) -> int:
    pf = linkframe.pcap_read(_read_file(args.infile))
    for i, rec in enumerate(pf.records):
        frame = linkframe.parse_ethernet(rec.data)
        if frame.ethertype != linkframe.ETHERTYPE_ARP:
            continue
        try:
            packet = linkframe.parse_arp(frame.payload)
        except EcdlError as exc:
            log.warning("record %d looks like ARP but does not parse: %s", i, exc)
            continue
        print(linkframe.arp_display(packet))
    return 0


def _cmd_bench(args: argparse.Namespace, rng: RandomSource) -> int:
    rows = benchkit.run_bench(list(CURVE_NAMES), args.reps, rng=rng)
    _write_atomic(args.csv, benchkit.emit_csv(rows).encode())
    if args.plot:
        _write_atomic(args.plot, benchkit.emit_plot_data(rows).encode())
    if args.fig:
        directory = os.path.dirname(os.path.abspath(args.fig))
        suffix = os.path.splitext(args.fig)[1] or ".png"
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ecdlink-", suffix=suffix)
        os.close(fd)
        try:
            benchkit.render_figure(rows, tmp)
            os.replace(tmp, args.fig)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
    if args.ecdsa_csv:
        sig_rows = benchkit.run_sig_bench(list(CURVE_NAMES), args.reps, rng=rng)
        _write_atomic(args.ecdsa_csv, benchkit.emit_sig_csv(sig_rows).encode())
    return 0


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed",
        type=_seed_bytes,
        metavar="HEX",
        help="derive all randomness from this hex seed (testing only)",
    )

    parser = argparse.ArgumentParser(
        prog="ecdlink",
        description="Elliptic-curve encryption and signing for link-layer traffic.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("keygen", parents=[common], help="generate a key pair")
    p.add_argument("--curve", required=True, choices=CURVE_NAMES)
    p.add_argument("--out", required=True, help="private key path; '.pub' twin is also written")
    p.set_defaults(handler=_cmd_keygen)

    p = sub.add_parser("encrypt", parents=[common], help="encrypt a file")
    p.add_argument("--pub", required=True, help="recipient key file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--sign", help="private key file; sign the container")
    p.set_defaults(handler=_cmd_encrypt)

    p = sub.add_parser("decrypt", parents=[common], help="decrypt a container")
    p.add_argument("--priv", required=True, help="private key file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--verify", help="public key file; demand a valid signature")
    p.set_defaults(handler=_cmd_decrypt)

    p = sub.add_parser("sign", parents=[common], help="write a detached signature")
    p.add_argument("--priv", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True, help="signature file path")
    p.set_defaults(handler=_cmd_sign)

    p = sub.add_parser("verify", parents=[common], help="check a detached signature")
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--sig", required=True, help="signature file path")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("pcap-secure", parents=[common], help="encrypt every frame of a capture")
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--sign", help="private key file; sign each container")
    p.set_defaults(handler=_cmd_pcap_secure)

    p = sub.add_parser("pcap-open", parents=[common], help="recover plaintexts from a secured capture")
    p.add_argument("--priv", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True, help="text output, one line per frame")
    p.add_argument("--verify", help="public key file; demand valid signatures")
    p.set_defaults(handler=_cmd_pcap_open)

    p = sub.add_parser("arp-show", parents=[common], help="print ARP summary lines from a capture")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(handler=_cmd_arp_show)

    p = sub.add_parser("bench", parents=[common], help="time keygen/encrypt/decrypt per curve")
    p.add_argument("--reps", type=int, default=5, help="repetitions per measurement (default 5)")
    p.add_argument("--csv", required=True, help="CSV output path")
    p.add_argument("--plot", help="plot-data output path (bits vs encrypt seconds)")
    p.add_argument("--fig", help="rendered figure output path (.png/.svg/.pdf)")
    p.add_argument("--ecdsa-csv", dest="ecdsa_csv", help="auxiliary sign/verify timing CSV")
    p.set_defaults(handler=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.seed is not None:
        print(
            "warning: --seed makes all randomness predictable; testing only",
            file=sys.stderr,
        )
        rng: RandomSource = SeededRandom(args.seed)
    else:
        rng = SystemRandom()
    try:
        return args.handler(args, rng)
    except (EcdlError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
