"""Additive EC-ElGamal over block vectors, plus the ciphertext container.

Encryption draws one ephemeral scalar k per message and publishes
R = k*G together with the block vector masked coordinate-wise by the
shared point S = k*Q: even-indexed blocks absorb S.x, odd-indexed blocks
absorb S.y, everything reduced mod p. Decryption recovers S as d*R and
subtracts. Blocks are not curve points, so this is the Menezes-Vanstone
style of ElGamal rather than point addition on encoded messages.

One k for the whole message means block differences survive into the
ciphertext: within a single message, c_i - c_j = m_i - m_j (mod p) for
indices of equal parity. Callers who need semantic security across
blocks of one message must not use this scheme; across messages, fresh
randomness guarantees distinct ciphertexts for equal plaintexts.

Container layout, all integers big-endian:

    offset  size       field
    0       4          magic "ECDL"
    4       1          version, 0x01
    5       1          curve id (1=P-192 2=P-224 3=P-256 4=P-384 5=P-521)
    6       1          flags, bit0 = signature present
    7       4          original plaintext length (unsigned 32-bit)
    11      2          masked element count E (unsigned 16-bit, even)
    13      1+2w       R, SEC1 uncompressed (w = coordinate width)
    ...     E*w        masked residues, w octets each
    [...    2*nw       ECDSA r || s over all preceding octets]
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import ecdsa
from .blockcodec import BlockVector, decode_blocks, encode_blocks
from .curves import (
    CurveParams,
    Point,
    curve_from_name,
    is_on_curve,
    point_decode,
    point_encode,
    scalar_mul,
)
from .errors import (
    ContainerError,
    CurveMismatch,
    InvalidPublicKey,
    MalformedPoint,
)
from .modmath import RandomSource, mod_add, mod_sub, random_scalar

MAGIC = b"ECDL"
VERSION = 0x01
FLAG_SIGNED = 0x01

CURVE_IDS = {"P-192": 1, "P-224": 2, "P-256": 3, "P-384": 4, "P-521": 5}
_CURVE_BY_ID = {v: k for k, v in CURVE_IDS.items()}

_HEADER_LEN = 13


@dataclass(frozen=True)
class Ciphertext:
    curve: str
    R: Point
    masked: tuple[int, ...]
    original_len: int
    signature: tuple[int, int] | None = None


def _check_public_key(Q: Point, curve: CurveParams) -> None:
    try:
        on = is_on_curve(Q, curve)
    except MalformedPoint:
        on = False
    if Q.is_infinity or not on:
        raise InvalidPublicKey(f"public key is not a valid {curve.name} point")


def encrypt_blocks(
    vector: BlockVector,
    Q: Point,
    curve: CurveParams,
    rng: RandomSource | None = None,
    forced_k: int | None = None,
) -> Ciphertext:
    """Mask an already-encoded block vector.

    forced_k exists for reproducibility tests only; production callers
    must let the scalar be drawn fresh from rng.
    """
    _check_public_key(Q, curve)
    p, n = curve.p, curve.n
    for block in vector.blocks:
        if not 0 <= block < p:
            raise ValueError(f"block {block} out of range for {curve.name}")
    if len(vector.blocks) % 2:
        raise ValueError("block count must be even")
    if forced_k is not None:
        if not 1 <= forced_k <= n - 1:
            raise ValueError("forced scalar out of range")
        k = forced_k
    else:
        k = random_scalar(n, rng)
    shared = scalar_mul(k, Q, curve)
    assert not shared.is_infinity  # k < n and Q in the prime-order subgroup
    R = scalar_mul(k, curve.G, curve)
    masked = []
    for i in range(0, len(vector.blocks), 2):
        masked.append(mod_add(vector.blocks[i], shared.x, p))
        masked.append(mod_add(vector.blocks[i + 1], shared.y, p))
    return Ciphertext(
        curve=curve.name,
        R=R,
        masked=tuple(masked),
        original_len=vector.original_len,
    )


def encrypt(
    plaintext: bytes,
    Q: Point,
    curve: CurveParams,
    rng: RandomSource | None = None,
    forced_k: int | None = None,
) -> Ciphertext:
    return encrypt_blocks(encode_blocks(plaintext, curve), Q, curve, rng, forced_k)


def decrypt(ct: Ciphertext, d: int, curve: CurveParams) -> bytes:
    if ct.curve != curve.name:
        raise CurveMismatch(f"ciphertext is for {ct.curve}, key is for {curve.name}")
    if not 1 <= d <= curve.n - 1:
        raise ValueError("private scalar out of range")
    if ct.R.is_infinity or not is_on_curve(ct.R, curve):
        raise MalformedPoint("ephemeral point not on curve")
    p = curve.p
    if len(ct.masked) % 2:
        raise ContainerError("masked element count must be even")
    for value in ct.masked:
        if not 0 <= value < p:
            raise ContainerError(f"masked element {value} out of range")
    shared = scalar_mul(d, ct.R, curve)
    assert not shared.is_infinity
    blocks = []
    for i in range(0, len(ct.masked), 2):
        blocks.append(mod_sub(ct.masked[i], shared.x, p))
        blocks.append(mod_sub(ct.masked[i + 1], shared.y, p))
    return decode_blocks(BlockVector(tuple(blocks), ct.original_len), curve)


# --- container -------------------------------------------------------------


def _body(ct: Ciphertext, signed: bool) -> bytes:
    curve = curve_from_name(ct.curve)
    if len(ct.masked) % 2:
        raise ContainerError("masked element count must be even")
    if len(ct.masked) > 0xFFFF:
        raise ContainerError("too many masked elements for the container")
    if not 0 <= ct.original_len <= 0xFFFFFFFF:
        raise ContainerError("original length does not fit 32 bits")
    w = curve.byte_width
    parts = [
        MAGIC,
        bytes([VERSION, CURVE_IDS[ct.curve], FLAG_SIGNED if signed else 0x00]),
        ct.original_len.to_bytes(4, "big"),
        len(ct.masked).to_bytes(2, "big"),
        point_encode(ct.R, curve),
    ]
    for value in ct.masked:
        if not 0 <= value < curve.p:
            raise ContainerError(f"masked element {value} out of range")
        parts.append(value.to_bytes(w, "big"))
    return b"".join(parts)


def ct_serialize(ct: Ciphertext) -> bytes:
    signed = ct.signature is not None
    data = _body(ct, signed)
    if signed:
        curve = curve_from_name(ct.curve)
        nw = curve.n_byte_width
        r, s = ct.signature
        data += r.to_bytes(nw, "big") + s.to_bytes(nw, "big")
    return data


def ct_deserialize(data: bytes) -> Ciphertext:
    if len(data) < _HEADER_LEN:
        raise ContainerError("container shorter than the fixed header")
    if data[:4] != MAGIC:
        raise ContainerError(f"bad magic {data[:4]!r}")
    if data[4] != VERSION:
        raise ContainerError(f"unsupported version {data[4]}")
    curve_name = _CURVE_BY_ID.get(data[5])
    if curve_name is None:
        raise ContainerError(f"unknown curve id {data[5]}")
    curve = curve_from_name(curve_name)
    flags = data[6]
    if flags & ~FLAG_SIGNED:
        raise ContainerError(f"unknown flag bits {flags:#04x}")
    original_len = int.from_bytes(data[7:11], "big")
    count = int.from_bytes(data[11:13], "big")
    if count % 2:
        raise ContainerError("masked element count must be even")
    w = curve.byte_width
    nw = curve.n_byte_width
    point_len = 1 + 2 * w
    expected = _HEADER_LEN + point_len + count * w
    if flags & FLAG_SIGNED:
        expected += 2 * nw
    if len(data) != expected:
        raise ContainerError(
            f"container length {len(data)} does not match expected {expected}"
        )
    offset = _HEADER_LEN
    R = point_decode(data[offset : offset + point_len], curve)
    offset += point_len
    masked = []
    for _ in range(count):
        value = int.from_bytes(data[offset : offset + w], "big")
        if value >= curve.p:
            raise ContainerError(f"masked element {value} not a residue mod p")
        masked.append(value)
        offset += w
    signature = None
    if flags & FLAG_SIGNED:
        r = int.from_bytes(data[offset : offset + nw], "big")
        s = int.from_bytes(data[offset + nw : offset + 2 * nw], "big")
        signature = (r, s)
    return Ciphertext(
        curve=curve_name,
        R=R,
        masked=tuple(masked),
        original_len=original_len,
        signature=signature,
    )


def attach_signature(
    ct: Ciphertext,
    d: int,
    curve: CurveParams,
    rng: RandomSource | None = None,
    deterministic: bool = False,
) -> Ciphertext:
    """Sign the container body (with the signed flag set) and attach (r, s)."""
    if ct.curve != curve.name:
        raise CurveMismatch(f"ciphertext is for {ct.curve}, key is for {curve.name}")
    body = _body(ct, signed=True)
    if deterministic:
        sig = ecdsa.sign_deterministic(body, d, curve)
    else:
        sig = ecdsa.sign(body, d, curve, rng)
    return replace(ct, signature=(sig.r, sig.s))


def verify_ciphertext(ct: Ciphertext, Q: Point, curve: CurveParams) -> bool:
    """True iff ct carries a signature that verifies over its body under Q."""
    if ct.signature is None:
        return False
    if ct.curve != curve.name:
        return False
    r, s = ct.signature
    return ecdsa.verify(
        ecdsa.Signature(r=r, s=s), _body(ct, signed=True), Q, curve
    )
