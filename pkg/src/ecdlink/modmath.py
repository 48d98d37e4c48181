"""Modular arithmetic over Python's native big integers, plus the
randomness sources injected into every key- and nonce-generating
operation.

Residue arguments must already be reduced (< modulus); the functions
reject out-of-range inputs instead of silently reducing, which catches
bookkeeping mistakes in the callers.

Not constant time. This is research-grade code; see the README.
"""

from __future__ import annotations

import hashlib
import os

from .errors import NotInvertible


def _check_residues(m: int, *values: int) -> None:
    if m < 3 or m % 2 == 0:
        raise ValueError(f"modulus must be odd and >= 3, got {m}")
    for v in values:
        if not 0 <= v < m:
            raise ValueError(f"residue {v} out of range for modulus {m}")


def mod_add(a: int, b: int, m: int) -> int:
    _check_residues(m, a, b)
    return (a + b) % m


def mod_sub(a: int, b: int, m: int) -> int:
    _check_residues(m, a, b)
    return (a - b) % m


def mod_mul(a: int, b: int, m: int) -> int:
    _check_residues(m, a, b)
    return (a * b) % m


def mod_inv(a: int, m: int) -> int:
    """Multiplicative inverse of a mod m.

    Delegates to CPython's built-in extended-Euclid inverse; the Fermat
    identity a^(m-2) == a^-1 is cross-checked in the test suite.
    """
    _check_residues(m, a)
    if a == 0:
        raise NotInvertible("0 has no inverse")
    try:
        return pow(a, -1, m)
    except ValueError as exc:  # shared factor with a composite modulus
        raise NotInvertible(f"{a} is not invertible mod {m}") from exc


def mod_pow(a: int, e: int, m: int) -> int:
    """a**e mod m by square-and-multiply (CPython's built-in pow)."""
    _check_residues(m, a)
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return pow(a, e, m)


class RandomSource:
    """Source of random octets. Single-owner: do not share across threads."""

    def read(self, n: int) -> bytes:
        raise NotImplementedError


class SystemRandom(RandomSource):
    """OS-entropy source for production use."""

    def read(self, n: int) -> bytes:
        return os.urandom(n)


class SeededRandom(RandomSource):
    """Deterministic SHA-256 counter stream for tests and reproducible runs.

    Stream layout (block i = SHA256(seed || uint64_be(i))) is frozen:
    golden files in the test suite depend on it. Never use for real keys.
    """

    def __init__(self, seed: bytes):
        self._seed = bytes(seed)
        self._counter = 0
        self._buffer = b""

    def read(self, n: int) -> bytes:
        while len(self._buffer) < n:
            block = hashlib.sha256(
                self._seed + self._counter.to_bytes(8, "big")
            ).digest()
            self._counter += 1
            self._buffer += block
        out, self._buffer = self._buffer[:n], self._buffer[n:]
        return out


def random_scalar(upper: int, rng: RandomSource | None = None) -> int:
    """Uniform scalar in [1, upper-1] by rejection sampling (no modulo bias)."""
    if upper < 2:
        raise ValueError(f"upper bound must be >= 2, got {upper}")
    if rng is None:
        rng = SystemRandom()
    nbits = (upper - 1).bit_length()
    nbytes = (nbits + 7) // 8
    excess = nbytes * 8 - nbits
    while True:
        candidate = int.from_bytes(rng.read(nbytes), "big") >> excess
        if 1 <= candidate <= upper - 1:
            return candidate
