"""Short-Weierstrass curves over prime fields: y^2 = x^3 + ax + b (mod p).

Provides the registry of the five NIST prime curves (P-192 through
P-521), affine point arithmetic with explicit handling of the point at
infinity, key generation, SEC1 uncompressed point serialization, and the
line-oriented text key file format.

Registry parameters are validated at import: nonzero discriminant, base
point on the curve, and n*G = infinity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InfinityNotSerializable, KeyFileError, MalformedPoint, UnknownCurve
from .modmath import RandomSource, mod_inv, random_scalar


@dataclass(frozen=True)
class Point:
    """Affine curve point, or the group identity when is_infinity is set."""

    x: int
    y: int
    is_infinity: bool = False

    def __repr__(self) -> str:
        if self.is_infinity:
            return "Point(infinity)"
        return f"Point({self.x:#x}, {self.y:#x})"


INFINITY = Point(0, 0, is_infinity=True)


@dataclass(frozen=True)
class CurveParams:
    name: str
    p: int
    a: int
    b: int
    G: Point
    n: int

    @property
    def bits(self) -> int:
        return self.p.bit_length()

    @property
    def byte_width(self) -> int:
        """Octets per coordinate in fixed-width encodings."""
        return (self.p.bit_length() + 7) // 8

    @property
    def n_byte_width(self) -> int:
        """Octets per signature component (covers the group order)."""
        return (self.n.bit_length() + 7) // 8


@dataclass(frozen=True)
class KeyPair:
    d: int
    Q: Point


def is_on_curve(P: Point, curve: CurveParams) -> bool:
    """True iff P is infinity or satisfies the curve equation.

    Raises MalformedPoint for coordinates outside [0, p).
    """
    if P.is_infinity:
        return True
    if not (0 <= P.x < curve.p and 0 <= P.y < curve.p):
        raise MalformedPoint(f"coordinates out of range for {curve.name}")
    lhs = P.y * P.y % curve.p
    rhs = (P.x * P.x * P.x + curve.a * P.x + curve.b) % curve.p
    return lhs == rhs


def _require_on_curve(P: Point, curve: CurveParams) -> None:
    if not is_on_curve(P, curve):
        raise MalformedPoint(f"point not on {curve.name}")


def point_neg(P: Point, curve: CurveParams) -> Point:
    if P.is_infinity:
        return INFINITY
    return Point(P.x, (-P.y) % curve.p)


def _add_raw(P: Point, Q: Point, curve: CurveParams) -> Point:
    # Chord-tangent group law, operands assumed valid.
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    p = curve.p
    if P.x == Q.x:
        if (P.y + Q.y) % p == 0:  # inverse pair, includes doubling with y = 0
            return INFINITY
        slope = (3 * P.x * P.x + curve.a) * mod_inv(2 * P.y % p, p) % p
    else:
        slope = (Q.y - P.y) * mod_inv((Q.x - P.x) % p, p) % p
    x = (slope * slope - P.x - Q.x) % p
    y = (slope * (P.x - x) - P.y) % p
    return Point(x, y)


def point_add(P: Point, Q: Point, curve: CurveParams) -> Point:
    """P + Q under the chord-tangent group law."""
    _require_on_curve(P, curve)
    _require_on_curve(Q, curve)
    result = _add_raw(P, Q, curve)
    assert is_on_curve(result, curve)
    return result


def scalar_mul(k: int, P: Point, curve: CurveParams) -> Point:
    """k*P by left-to-right double-and-add. k = 0 yields infinity."""
    if k < 0:
        raise ValueError("scalar must be non-negative")
    _require_on_curve(P, curve)
    if k == 0 or P.is_infinity:
        return INFINITY
    result = INFINITY
    for bit in bin(k)[2:]:
        result = _add_raw(result, result, curve)
        if bit == "1":
            result = _add_raw(result, P, curve)
    assert is_on_curve(result, curve)
    return result


def keygen(curve: CurveParams, rng: RandomSource | None = None) -> KeyPair:
    """Random private scalar in [1, n-1] and its public point d*G."""
    d = random_scalar(curve.n, rng)
    Q = scalar_mul(d, curve.G, curve)
    return KeyPair(d=d, Q=Q)


def point_encode(P: Point, curve: CurveParams) -> bytes:
    """SEC1 uncompressed encoding: 0x04 || x || y, fixed-width big-endian."""
    if P.is_infinity:
        raise InfinityNotSerializable("cannot encode the point at infinity")
    _require_on_curve(P, curve)
    w = curve.byte_width
    return b"\x04" + P.x.to_bytes(w, "big") + P.y.to_bytes(w, "big")


def point_decode(data: bytes, curve: CurveParams) -> Point:
    w = curve.byte_width
    if len(data) != 1 + 2 * w:
        raise MalformedPoint(
            f"expected {1 + 2 * w} octets for {curve.name}, got {len(data)}"
        )
    if data[0] != 0x04:
        raise MalformedPoint(f"bad point tag {data[0]:#04x}, expected 0x04")
    P = Point(
        int.from_bytes(data[1 : 1 + w], "big"),
        int.from_bytes(data[1 + w :], "big"),
    )
    if not is_on_curve(P, curve):
        raise MalformedPoint(f"decoded point not on {curve.name}")
    return P


def make_curve(name: str, p: int, a: int, b: int, gx: int, gy: int, n: int) -> CurveParams:
    """Build and validate curve parameters.

    Checks the invariants that are cheap enough to run at load time;
    primality of p and n is asserted by construction for the registry
    entries, not re-tested here.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"{name}: field modulus must be odd and >= 3")
    if (4 * a * a * a + 27 * b * b) % p == 0:
        raise ValueError(f"{name}: singular curve (zero discriminant)")
    if n < 2:
        raise ValueError(f"{name}: group order must be >= 2")
    curve = CurveParams(name=name, p=p, a=a % p, b=b % p, G=Point(gx, gy), n=n)
    if not is_on_curve(curve.G, curve):
        raise ValueError(f"{name}: base point not on curve")
    if not scalar_mul(n, curve.G, curve).is_infinity:
        raise ValueError(f"{name}: n is not the order of the base point")
    return curve


# NIST prime curves (FIPS 186-4 / SEC2); a = p - 3 throughout.
_P192 = make_curve(
    "P-192",
    p=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFFFFFFFFFFFF,
    a=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFFFFFFFFFFFC,
    b=0x64210519E59C80E70FA7E9AB72243049FEB8DEECC146B9B1,
    gx=0x188DA80EB03090F67CBF20EB43A18800F4FF0AFD82FF1012,
    gy=0x07192B95FFC8DA78631011ED6B24CDD573F977A11E794811,
    n=0xFFFFFFFFFFFFFFFFFFFFFFFF99DEF836146BC9B1B4D22831,
)
_P224 = make_curve(
    "P-224",
    p=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFF000000000000000000000001,
    a=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFFFFFFFFFFFFFFFFFFFE,
    b=0xB4050A850C04B3ABF54132565044B0B7D7BFD8BA270B39432355FFB4,
    gx=0xB70E0CBD6BB4BF7F321390B94A03C1D356C21122343280D6115C1D21,
    gy=0xBD376388B5F723FB4C22DFE6CD4375A05A07476444D5819985007E34,
    n=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFF16A2E0B8F03E13DD29455C5C2A3D,
)
_P256 = make_curve(
    "P-256",
    p=0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF,
    a=0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFC,
    b=0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B,
    gx=0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296,
    gy=0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5,
    n=0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551,
)
_P384 = make_curve(
    "P-384",
    p=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFFFF0000000000000000FFFFFFFF,
    a=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFFFF0000000000000000FFFFFFFC,
    b=0xB3312FA7E23EE7E4988E056BE3F82D19181D9C6EFE8141120314088F5013875AC656398D8A2ED19D2A85C8EDD3EC2AEF,
    gx=0xAA87CA22BE8B05378EB1C71EF320AD746E1D3B628BA79B9859F741E082542A385502F25DBF55296C3A545E3872760AB7,
    gy=0x3617DE4A96262C6F5D9E98BF9292DC29F8F41DBD289A147CE9DA3113B5F0B8C00A60B1CE1D7E819D7A431D7C90EA0E5F,
    n=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFC7634D81F4372DDF581A0DB248B0A77AECEC196ACCC52973,
)
_P521 = make_curve(
    "P-521",
    p=(1 << 521) - 1,
    a=(1 << 521) - 4,
    b=0x0051953EB9618E1C9A1F929A21A0B68540EEA2DA725B99B315F3B8B489918EF109E156193951EC7E937B1652C0BD3BB1BF073573DF883D2C34F1EF451FD46B503F00,
    gx=0x00C6858E06B70404E9CD9E3ECB662395B4429C648139053FB521F828AF606B4D3DBAA14B5E77EFE75928FE1DC127A2FFA8DE3348B3C1856A429BF97E7E31C2E5BD66,
    gy=0x011839296A789A3BC0045C8A5FB42C7D1BD998F54449579B446817AFBD17273E662C97EE72995EF42640C550B9013FAD0761353C7086A272C24088BE94769FD16650,
    n=0x01FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFA51868783BF2F966B7FCC0148F709A5D03BB5C9B8899C47AEBB6FB71E91386409,
)

_REGISTRY = {c.name: c for c in (_P192, _P224, _P256, _P384, _P521)}

CURVE_NAMES = tuple(_REGISTRY)


def curve_from_name(name: str) -> CurveParams:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownCurve(
            f"unknown curve {name!r}; available: {', '.join(CURVE_NAMES)}"
        ) from None


# --- text key files -------------------------------------------------------
#
# Line-oriented, LF-terminated:
#   curve=<name>
#   d=<lowercase hex>     (private key files only)
#   qx=<lowercase hex>
#   qy=<lowercase hex>


def key_to_text(curve: CurveParams, Q: Point, d: int | None = None) -> str:
    _require_on_curve(Q, curve)
    if Q.is_infinity:
        raise MalformedPoint("public point must not be infinity")
    w = curve.byte_width
    lines = [f"curve={curve.name}"]
    if d is not None:
        if not 1 <= d <= curve.n - 1:
            raise ValueError("private scalar out of range")
        lines.append(f"d={d:0{2 * curve.n_byte_width}x}")
    lines.append(f"qx={Q.x:0{2 * w}x}")
    lines.append(f"qy={Q.y:0{2 * w}x}")
    return "\n".join(lines) + "\n"


def key_from_text(text: str) -> tuple[CurveParams, Point, int | None]:
    """Parse a key file; returns (curve, public point, private scalar or None)."""
    fields: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or key not in ("curve", "d", "qx", "qy") or key in fields:
            raise KeyFileError(f"bad key file line {lineno}: {line!r}")
        fields[key] = value
    missing = {"curve", "qx", "qy"} - fields.keys()
    if missing:
        raise KeyFileError(f"key file missing fields: {', '.join(sorted(missing))}")
    curve = curve_from_name(fields["curve"])
    try:
        Q = Point(int(fields["qx"], 16), int(fields["qy"], 16))
        d = int(fields["d"], 16) if "d" in fields else None
    except ValueError as exc:
        raise KeyFileError(f"bad hex in key file: {exc}") from None
    if not is_on_curve(Q, curve) or Q.is_infinity:
        raise MalformedPoint(f"public point in key file not on {curve.name}")
    if d is not None and not 1 <= d <= curve.n - 1:
        raise KeyFileError("private scalar out of range")
    return curve, Q, d
