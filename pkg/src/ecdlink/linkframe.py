"""Classic pcap ingestion, Ethernet/ARP dissection, and the secured-frame
transform.

Only classic pcap (magic 0xA1B2C3D4, either byte order) with Ethernet
link type is accepted; pcapng is out of scope. Captures round-trip
byte-identically through read/write, so every global-header field and
each record's original length is preserved.

Securing a frame keeps the MAC header, encrypts the payload into a
ciphertext container, and rewrites the ethertype to 0x88B5 (an IEEE
local-experimental value, so secured frames cannot be mistaken for a
real protocol). ARP payloads are encrypted via their human-readable
summary line - the same "Who has A? Tell B" text Wireshark shows -
while every other ethertype is encrypted as raw octets.
"""

from __future__ import annotations

import logging
import struct
from dataclasses import dataclass, field

from .curves import CurveParams, Point, curve_from_name
from .ecelgamal import (
    attach_signature,
    ct_deserialize,
    ct_serialize,
    encrypt,
    decrypt,
    verify_ciphertext,
)
from .errors import (
    ContainerError,
    NotArp,
    NotPcap,
    SignatureInvalid,
    SignatureRequired,
    TruncatedCapture,
    TruncatedFrame,
    UnsupportedLinkType,
)
from .modmath import RandomSource

log = logging.getLogger(__name__)

PCAP_MAGIC = 0xA1B2C3D4
LINKTYPE_ETHERNET = 1

ETHERTYPE_IPV4 = 0x0800
ETHERTYPE_ARP = 0x0806
ETHERTYPE_SECURED = 0x88B5  # IEEE 802 local experimental

ARP_REQUEST = 1
ARP_REPLY = 2

_ETHERNET_MTU = 1500


@dataclass
class PcapRecord:
    ts_sec: int
    ts_usec: int
    data: bytes
    orig_len: int | None = None  # None means "same as captured"

    @property
    def original_length(self) -> int:
        return len(self.data) if self.orig_len is None else self.orig_len


@dataclass
class PcapFile:
    byte_order: str  # "big" or "little"
    snaplen: int
    linktype: int
    records: list[PcapRecord] = field(default_factory=list)
    version_major: int = 2
    version_minor: int = 4
    thiszone: int = 0
    sigfigs: int = 0


def _endian_prefix(byte_order: str) -> str:
    if byte_order == "big":
        return ">"
    if byte_order == "little":
        return "<"
    raise ValueError(f"byte_order must be 'big' or 'little', not {byte_order!r}")


def pcap_read(data: bytes) -> PcapFile:
    if len(data) < 24:
        raise NotPcap(f"global header needs 24 octets, got {len(data)}")
    if data[:4] == b"\xa1\xb2\xc3\xd4":
        byte_order = "big"
    elif data[:4] == b"\xd4\xc3\xb2\xa1":
        byte_order = "little"
    else:
        raise NotPcap(f"bad magic {data[:4].hex()}")
    fmt = _endian_prefix(byte_order)
    vmaj, vmin, thiszone, sigfigs, snaplen, linktype = struct.unpack(
        fmt + "HHiIII", data[4:24]
    )
    if linktype != LINKTYPE_ETHERNET:
        raise UnsupportedLinkType(f"link type {linktype}, only Ethernet (1) handled")
    records = []
    offset = 24
    while offset < len(data):
        if len(data) - offset < 16:
            raise TruncatedCapture(f"record header cut short at offset {offset}")
        ts_sec, ts_usec, incl_len, orig_len = struct.unpack(
            fmt + "IIII", data[offset : offset + 16]
        )
        offset += 16
        if incl_len > snaplen:
            raise TruncatedCapture(
                f"record claims {incl_len} captured octets, snaplen is {snaplen}"
            )
        if len(data) - offset < incl_len:
            raise TruncatedCapture(
                f"record needs {incl_len} octets, {len(data) - offset} remain"
            )
        records.append(
            PcapRecord(
                ts_sec=ts_sec,
                ts_usec=ts_usec,
                data=data[offset : offset + incl_len],
                orig_len=orig_len,
            )
        )
        offset += incl_len
    return PcapFile(
        byte_order=byte_order,
        snaplen=snaplen,
        linktype=linktype,
        records=records,
        version_major=vmaj,
        version_minor=vmin,
        thiszone=thiszone,
        sigfigs=sigfigs,
    )


def pcap_write(pf: PcapFile) -> bytes:
    fmt = _endian_prefix(pf.byte_order)
    out = [
        struct.pack(
            fmt + "IHHiIII",
            PCAP_MAGIC,
            pf.version_major,
            pf.version_minor,
            pf.thiszone,
            pf.sigfigs,
            pf.snaplen,
            pf.linktype,
        )
    ]
    for i, rec in enumerate(pf.records):
        if len(rec.data) > pf.snaplen:
            raise ValueError(
                f"record {i} holds {len(rec.data)} octets, snaplen is {pf.snaplen}"
            )
        out.append(
            struct.pack(
                fmt + "IIII",
                rec.ts_sec,
                rec.ts_usec,
                len(rec.data),
                rec.original_length,
            )
        )
        out.append(rec.data)
    return b"".join(out)


# --- frames ----------------------------------------------------------------


@dataclass(frozen=True)
class EthernetFrame:
    dst_mac: bytes
    src_mac: bytes
    ethertype: int
    payload: bytes

    def to_bytes(self) -> bytes:
        return self.dst_mac + self.src_mac + self.ethertype.to_bytes(2, "big") + self.payload


@dataclass(frozen=True)
class ArpPacket:
    htype: int
    ptype: int
    hlen: int
    plen: int
    oper: int
    sha: bytes
    spa: bytes
    tha: bytes
    tpa: bytes

    def to_bytes(self) -> bytes:
        return (
            struct.pack(">HHBBH", self.htype, self.ptype, self.hlen, self.plen, self.oper)
            + self.sha
            + self.spa
            + self.tha
            + self.tpa
        )


@dataclass(frozen=True)
class SecuredFrame:
    dst_mac: bytes
    src_mac: bytes
    payload: bytes  # serialized ciphertext container
    ethertype: int = ETHERTYPE_SECURED

    def to_bytes(self) -> bytes:
        return self.dst_mac + self.src_mac + self.ethertype.to_bytes(2, "big") + self.payload


def parse_ethernet(data: bytes) -> EthernetFrame:
    if len(data) < 14:
        raise TruncatedFrame(f"Ethernet header needs 14 octets, got {len(data)}")
    return EthernetFrame(
        dst_mac=data[0:6],
        src_mac=data[6:12],
        ethertype=int.from_bytes(data[12:14], "big"),
        payload=data[14:],
    )


def parse_arp(payload: bytes) -> ArpPacket:
    """Parse an ARP request/reply; trailing padding octets are ignored."""
    if len(payload) < 28:
        raise TruncatedFrame(f"ARP needs 28 octets, got {len(payload)}")
    htype, ptype, hlen, plen, oper = struct.unpack(">HHBBH", payload[:8])
    if htype != 1 or ptype != ETHERTYPE_IPV4 or hlen != 6 or plen != 4:
        raise NotArp(
            f"not Ethernet/IPv4 ARP (htype={htype} ptype={ptype:#06x} "
            f"hlen={hlen} plen={plen})"
        )
    if oper not in (ARP_REQUEST, ARP_REPLY):
        raise NotArp(f"operation {oper} is neither request (1) nor reply (2)")
    return ArpPacket(
        htype=htype,
        ptype=ptype,
        hlen=hlen,
        plen=plen,
        oper=oper,
        sha=payload[8:14],
        spa=payload[14:18],
        tha=payload[18:24],
        tpa=payload[24:28],
    )


def format_ipv4(addr: bytes) -> str:
    return ".".join(str(b) for b in addr)


def format_mac(addr: bytes) -> str:
    return ":".join(f"{b:02x}" for b in addr)


def arp_display(packet: ArpPacket) -> str:
    """Wireshark-style one-line ARP summary."""
    if packet.oper == ARP_REQUEST:
        return f"Who has {format_ipv4(packet.tpa)}? Tell {format_ipv4(packet.spa)}"
    return f"{format_ipv4(packet.spa)} is at {format_mac(packet.sha)}"


# --- securing --------------------------------------------------------------


def secure_frame(
    frame: EthernetFrame,
    Q: Point,
    curve: CurveParams,
    rng: RandomSource | None = None,
    signer: int | None = None,
) -> SecuredFrame:
    """Encrypt a frame's payload in place of itself, keeping the MAC header.

    ARP frames are encrypted via their display string; anything else as
    raw payload octets. When signer (a private scalar) is given, the
    container is signed.
    """
    if not frame.payload:
        raise TruncatedFrame("refusing to secure a frame with an empty payload")
    if frame.ethertype == ETHERTYPE_ARP:
        plaintext = arp_display(parse_arp(frame.payload)).encode("ascii")
    else:
        plaintext = frame.payload
    ct = encrypt(plaintext, Q, curve, rng)
    if signer is not None:
        ct = attach_signature(ct, signer, curve, rng)
    payload = ct_serialize(ct)
    if len(payload) > _ETHERNET_MTU:
        log.warning(
            "secured payload is %d octets, beyond the usual %d-octet MTU",
            len(payload),
            _ETHERNET_MTU,
        )
    return SecuredFrame(dst_mac=frame.dst_mac, src_mac=frame.src_mac, payload=payload)


def open_frame(
    sf: SecuredFrame, d: int, verifier: Point | None = None
) -> bytes:
    """Recover the plaintext of a secured frame.

    Signature policy runs before any decryption: a verifier point demands
    a valid signature, and a signed container demands a verifier.
    """
    if sf.ethertype != ETHERTYPE_SECURED:
        raise ContainerError(
            f"ethertype {sf.ethertype:#06x} is not a secured frame"
        )
    ct = ct_deserialize(sf.payload)
    curve = curve_from_name(ct.curve)
    if verifier is not None:
        if ct.signature is None:
            raise SignatureRequired("verification requested but container is unsigned")
        if not verify_ciphertext(ct, verifier, curve):
            raise SignatureInvalid("container signature does not verify")
    elif ct.signature is not None:
        raise SignatureRequired("container is signed but no verification key was given")
    return decrypt(ct, d, curve)


def secure_capture(
    pf: PcapFile,
    Q: Point,
    curve: CurveParams,
    rng: RandomSource | None = None,
    signer: int | None = None,
) -> PcapFile:
    """Secure every frame of a capture, preserving record order and timestamps."""
    records = []
    for rec in pf.records:
        sf = secure_frame(parse_ethernet(rec.data), Q, curve, rng, signer)
        records.append(PcapRecord(ts_sec=rec.ts_sec, ts_usec=rec.ts_usec, data=sf.to_bytes()))
    snaplen = max([pf.snaplen] + [len(r.data) for r in records])
    return PcapFile(
        byte_order=pf.byte_order,
        snaplen=snaplen,
        linktype=pf.linktype,
        records=records,
        version_major=pf.version_major,
        version_minor=pf.version_minor,
        thiszone=pf.thiszone,
        sigfigs=pf.sigfigs,
    )


def open_capture(
    pf: PcapFile, d: int, verifier: Point | None = None
) -> list[bytes]:
    """Recover the plaintext of every secured frame, in capture order."""
    plaintexts = []
    for i, rec in enumerate(pf.records):
        frame = parse_ethernet(rec.data)
        if frame.ethertype != ETHERTYPE_SECURED:
            raise ContainerError(
                f"record {i} has ethertype {frame.ethertype:#06x}, not a secured frame"
            )
        sf = SecuredFrame(dst_mac=frame.dst_mac, src_mac=frame.src_mac, payload=frame.payload)
        plaintexts.append(open_frame(sf, d, verifier))
    return plaintexts
