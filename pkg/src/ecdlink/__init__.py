"""Elliptic-curve encryption and signing for data-link-layer traffic.

Library layout:

- modmath: modular arithmetic, randomness sources
- curves: NIST prime curve registry, point arithmetic, keys
- blockcodec: plaintext <-> big-integer block vectors
- ecelgamal: additive EC-ElGamal and the ciphertext container
- ecdsa: signatures (random or RFC 6979 nonces)
- linkframe: pcap/Ethernet/ARP parsing and frame securing
- benchkit: curve-size timing harness with CSV/plot output
- cli: the `ecdlink` command
"""

from .curves import (
    CURVE_NAMES,
    CurveParams,
    INFINITY,
    KeyPair,
    Point,
    curve_from_name,
    is_on_curve,
    keygen,
    point_add,
    point_decode,
    point_encode,
    scalar_mul,
)
from .blockcodec import BlockVector, block_size, decode_blocks, encode_blocks
from .ecdsa import Signature, sign, sign_deterministic, verify
from .ecelgamal import (
    Ciphertext,
    attach_signature,
    ct_deserialize,
    ct_serialize,
    decrypt,
    encrypt,
    verify_ciphertext,
)
from .errors import EcdlError
from .modmath import RandomSource, SeededRandom, SystemRandom, random_scalar

__version__ = "0.1.0"

__all__ = [
    "BlockVector",
    "Ciphertext",
    "CURVE_NAMES",
    "CurveParams",
    "EcdlError",
    "INFINITY",
    "KeyPair",
    "Point",
    "RandomSource",
    "SeededRandom",
    "Signature",
    "SystemRandom",
    "attach_signature",
    "block_size",
    "ct_deserialize",
    "ct_serialize",
    "curve_from_name",
    "decode_blocks",
    "decrypt",
    "encode_blocks",
    "encrypt",
    "is_on_curve",
    "keygen",
    "point_add",
    "point_decode",
    "point_encode",
    "random_scalar",
    "scalar_mul",
    "sign",
    "sign_deterministic",
    "verify",
    "verify_ciphertext",
]
