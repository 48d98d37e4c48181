"""Plaintext <-> big-integer block conversion.

Octets are treated as base-65536 digits (one octet per digit, so only 8
of each digit's 16 bits are used) and grouped into integers small enough
to stay below the curve's field modulus:

    L = (number of base-65536 digits of p) - 1

Any L-digit value is then strictly less than 65536^L <= p, which keeps
the additive masking in the encryption layer information-preserving.

Padding happens twice, both times with the space octet (32): the final
group is filled to L octets, and if the resulting integer count is odd a
lone block holding the integer 32 is appended so blocks can be consumed
in pairs. Because the pad value collides with genuine trailing spaces,
the original byte length travels with the blocks and drives de-padding.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import CurveParams
from .errors import CorruptBlock, LengthMismatch

BASE = 65536
PAD_OCTET = 32
PAD_BLOCK = 32

MAX_PLAINTEXT_LEN = 2**32 - 1  # original_len is stored as an unsigned 32-bit


@dataclass(frozen=True)
class BlockVector:
    """Even-count sequence of residues plus the unpadded plaintext length."""

    blocks: tuple[int, ...]
    original_len: int


def block_size_for_modulus(p: int) -> int:
    """Octets per block: one less than the base-65536 digit count of p."""
    if p < 1:
        raise ValueError("modulus must be positive")
    size = (p.bit_length() + 15) // 16 - 1
    if size < 1:
        raise ValueError(f"modulus {p} too small to hold even one octet group")
    return size


def block_size(curve: CurveParams) -> int:
    return block_size_for_modulus(curve.p)


def pad_and_group(data: bytes, size: int) -> list[list[int]]:
    """Pad with the space octet to a multiple of `size`, split into groups."""
    if size < 1:
        raise ValueError("group size must be >= 1")
    if len(data) % size:
        data = data + bytes([PAD_OCTET]) * (size - len(data) % size)
    return [list(data[i : i + size]) for i in range(0, len(data), size)]


def _group_to_int(group: list[int]) -> int:
    value = 0
    for octet in group:
        value = value * BASE + octet
    return value


def encode_blocks(plaintext: bytes, curve: CurveParams) -> BlockVector:
    """Convert raw octets into an even-count vector of residues < p."""
    if len(plaintext) > MAX_PLAINTEXT_LEN:
        raise ValueError("plaintext too long (original_len is 32-bit)")
    size = block_size(curve)
    blocks = [_group_to_int(g) for g in pad_and_group(plaintext, size)]
    if len(blocks) % 2:
        blocks.append(PAD_BLOCK)
    return BlockVector(blocks=tuple(blocks), original_len=len(plaintext))


def _int_to_octets(value: int, size: int) -> bytes:
    if value < 0:
        raise CorruptBlock("negative block value")
    digits = []
    for _ in range(size):
        value, digit = divmod(value, BASE)
        if digit > 0xFF:
            raise CorruptBlock(f"base-65536 digit {digit} does not fit one octet")
        digits.append(digit)
    if value:
        raise CorruptBlock("block value exceeds the group capacity")
    return bytes(reversed(digits))


def decode_blocks(vector: BlockVector, curve: CurveParams) -> bytes:
    """Inverse of encode_blocks.

    original_len decides how many blocks carry data and how many trailing
    pad octets to strip; a trailing pad block is dropped without
    inspecting its value. Raises CorruptBlock when any block does not
    expand to clean octets (the symptom of decrypting with a wrong key)
    and LengthMismatch when original_len and the block count disagree.
    """
    size = block_size(curve)
    if vector.original_len < 0:
        raise LengthMismatch("negative original length")
    data_blocks = -(-vector.original_len // size)  # ceil division
    expected = data_blocks + (data_blocks % 2)
    if len(vector.blocks) != expected:
        raise LengthMismatch(
            f"{len(vector.blocks)} blocks inconsistent with "
            f"original length {vector.original_len} (expected {expected})"
        )
    out = b"".join(_int_to_octets(b, size) for b in vector.blocks[:data_blocks])
    return out[: vector.original_len]
