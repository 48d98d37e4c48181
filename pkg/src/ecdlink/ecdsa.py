"""ECDSA over the registry curves.

Messages are hashed with SHA-256 and truncated to the bit length of the
group order. Nonces come from either an injected randomness source
(production) or the RFC 6979 HMAC-DRBG derivation (reproducible test
vectors); forced nonces exist only for the key-recovery regression test,
since reusing a nonce leaks the private key.
"""

from __future__ import annotations

import hashlib
import hmac
from dataclasses import dataclass
from typing import Iterator

from .curves import (
    CurveParams,
    Point,
    curve_from_name,
    is_on_curve,
    point_add,
    scalar_mul,
)
from .errors import KeyFileError, MalformedPoint
from .modmath import RandomSource, mod_inv, random_scalar

HASH_NAME = "sha256"


@dataclass(frozen=True)
class Signature:
    r: int
    s: int


def digest(message: bytes) -> bytes:
    """SHA-256 of the message."""
    return hashlib.sha256(message).digest()


def _bits2int(data: bytes, qbits: int) -> int:
    """Leftmost min(qbits, 8*len(data)) bits of data as an integer."""
    value = int.from_bytes(data, "big")
    excess = 8 * len(data) - qbits
    if excess > 0:
        value >>= excess
    return value


def _message_scalar(message: bytes, curve: CurveParams) -> int:
    return _bits2int(digest(message), curve.n.bit_length())


def rfc6979_nonces(d: int, h1: bytes, n: int) -> Iterator[int]:
    """RFC 6979 deterministic nonce stream for private scalar d and digest h1.

    Yields the initial nonce and then the retry sequence, so callers can
    keep drawing when r or s comes out zero.
    """
    qbits = n.bit_length()
    qolen = (qbits + 7) // 8

    def int2octets(value: int) -> bytes:
        return value.to_bytes(qolen, "big")

    def bits2octets(data: bytes) -> bytes:
        return int2octets(_bits2int(data, qbits) % n)

    def hmac_sha256(key: bytes, msg: bytes) -> bytes:
        return hmac.new(key, msg, hashlib.sha256).digest()

    V = b"\x01" * 32
    K = b"\x00" * 32
    seed = int2octets(d) + bits2octets(h1)
    K = hmac_sha256(K, V + b"\x00" + seed)
    V = hmac_sha256(K, V)
    K = hmac_sha256(K, V + b"\x01" + seed)
    V = hmac_sha256(K, V)
    while True:
        T = b""
        while len(T) * 8 < qbits:
            V = hmac_sha256(K, V)
            T += V
        k = _bits2int(T, qbits)
        if 1 <= k <= n - 1:
            yield k
        K = hmac_sha256(K, V + b"\x00")
        V = hmac_sha256(K, V)


def _sign_with_nonces(
    message: bytes, d: int, curve: CurveParams, nonces: Iterator[int]
) -> Signature:
    if not 1 <= d <= curve.n - 1:
        raise ValueError("private scalar out of range")
    n = curve.n
    e = _message_scalar(message, curve)
    for k in nonces:
        R = scalar_mul(k, curve.G, curve)
        r = R.x % n
        if r == 0:
            continue
        s = mod_inv(k % n, n) * ((e + r * d) % n) % n
        if s == 0:
            continue
        return Signature(r=r, s=s)
    raise RuntimeError("nonce source exhausted")  # pragma: no cover


def sign(
    message: bytes, d: int, curve: CurveParams, rng: RandomSource | None = None
) -> Signature:
    """Sign with random nonces drawn from rng (OS entropy when None)."""

    def nonces() -> Iterator[int]:
        while True:
            yield random_scalar(curve.n, rng)

    return _sign_with_nonces(message, d, curve, nonces())


def sign_deterministic(message: bytes, d: int, curve: CurveParams) -> Signature:
    """Sign with the RFC 6979 nonce; same (message, d) always gives the
    same signature."""
    nonces = rfc6979_nonces(d, digest(message), curve.n)
    return _sign_with_nonces(message, d, curve, nonces)


def _sign_with_k(message: bytes, d: int, curve: CurveParams, k: int) -> Signature:
    # Test hook only: a caller-chosen nonce breaks the scheme when reused.
    return _sign_with_nonces(message, d, curve, iter([k]))


def verify(sig: Signature, message: bytes, Q: Point, curve: CurveParams) -> bool:
    """Total verification: every malformed input yields False, never raises."""
    n = curve.n
    try:
        if Q.is_infinity or not is_on_curve(Q, curve):
            return False
    except MalformedPoint:
        return False
    if not (1 <= sig.r <= n - 1 and 1 <= sig.s <= n - 1):
        return False
    e = _message_scalar(message, curve)
    w = mod_inv(sig.s, n)
    u1 = e * w % n
    u2 = sig.r * w % n
    X = point_add(
        scalar_mul(u1, curve.G, curve),
        scalar_mul(u2, Q, curve),
        curve,
    )
    if X.is_infinity:
        return False
    return X.x % n == sig.r


# --- detached signature files ----------------------------------------------
#
# Line-oriented, LF-terminated:
#   curve=<name>
#   hash=sha256
#   r=<lowercase hex>
#   s=<lowercase hex>


def sig_to_text(curve: CurveParams, sig: Signature) -> str:
    w = 2 * curve.n_byte_width
    return (
        f"curve={curve.name}\n"
        f"hash={HASH_NAME}\n"
        f"r={sig.r:0{w}x}\n"
        f"s={sig.s:0{w}x}\n"
    )


def sig_from_text(text: str) -> tuple[CurveParams, Signature]:
    fields: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or key not in ("curve", "hash", "r", "s") or key in fields:
            raise KeyFileError(f"bad signature file line {lineno}: {line!r}")
        fields[key] = value
    missing = {"curve", "hash", "r", "s"} - fields.keys()
    if missing:
        raise KeyFileError(
            f"signature file missing fields: {', '.join(sorted(missing))}"
        )
    if fields["hash"] != HASH_NAME:
        raise KeyFileError(f"unsupported hash {fields['hash']!r}")
    curve = curve_from_name(fields["curve"])
    try:
        sig = Signature(r=int(fields["r"], 16), s=int(fields["s"], 16))
    except ValueError as exc:
        raise KeyFileError(f"bad hex in signature file: {exc}") from None
    return curve, sig
