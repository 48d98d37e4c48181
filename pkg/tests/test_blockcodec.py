import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ARP_TEXT
from ecdlink.blockcodec import (
    BASE,
    BlockVector,
    block_size,
    block_size_for_modulus,
    decode_blocks,
    encode_blocks,
    pad_and_group,
)
from ecdlink.curves import curve_from_name
from ecdlink.errors import CorruptBlock, LengthMismatch

P192 = curve_from_name("P-192")

# ASCII values of the ARP summary, grouped in elevens with two pad spaces.
ARP_ASCII = [
    87, 104, 111, 32, 104, 97, 115, 32, 49, 46, 49,
    46, 48, 46, 49, 63, 32, 84, 101, 108, 108, 32, 49,
    46, 49, 46, 48, 46, 49, 55, 56,
]
ARP_GROUPS = [
    [87, 104, 111, 32, 104, 97, 115, 32, 49, 46, 49],
    [46, 48, 46, 49, 63, 32, 84, 101, 108, 108, 32],
    [49, 46, 49, 46, 48, 46, 49, 55, 56, 32, 32],
]


def digit_count(value, base):
    count = 0
    while value:
        value //= base
        count += 1
    return count


class TestBlockSize:
    def test_p192_is_eleven(self):
        assert block_size(P192) == 11

    def test_p521_is_thirty_two(self):
        assert block_size(curve_from_name("P-521")) == 32

    @pytest.mark.parametrize("name", ["P-192", "P-224", "P-256", "P-384", "P-521"])
    def test_matches_digit_count_oracle(self, name):
        c = curve_from_name(name)
        assert block_size(c) == digit_count(c.p, BASE) - 1

    def test_two_digit_floor_case(self):
        assert block_size_for_modulus(65536) == 1

    def test_modulus_too_small(self):
        with pytest.raises(ValueError):
            block_size_for_modulus(65535)


class TestGrouping:
    def test_arp_text_ascii_values(self):
        assert list(ARP_TEXT) == ARP_ASCII

    def test_arp_text_groups(self):
        assert pad_and_group(ARP_TEXT, 11) == ARP_GROUPS

    def test_empty_has_no_groups(self):
        assert pad_and_group(b"", 11) == []

    def test_exact_multiple_not_padded(self):
        assert pad_and_group(b"abcd", 2) == [[97, 98], [99, 100]]


class TestEncode:
    def test_arp_text_shape(self):
        v = encode_blocks(ARP_TEXT, P192)
        assert len(v.blocks) == 4
        assert v.blocks[-1] == 32
        assert v.original_len == 31

    def test_empty(self):
        assert encode_blocks(b"", P192) == BlockVector((), 0)

    def test_single_octet_against_positional_oracle(self):
        # "A" padded with ten spaces, then one pad block for evenness.
        expected = 65 * BASE**10 + 32 * sum(BASE**i for i in range(10))
        v = encode_blocks(b"A", P192)
        assert v.blocks == (expected, 32)
        assert v.original_len == 1

    def test_blocks_below_modulus(self):
        v = encode_blocks(bytes([255] * 200), P192)
        assert all(b < P192.p for b in v.blocks)

    def test_even_count(self):
        for length in range(0, 40):
            v = encode_blocks(bytes(length), P192)
            assert len(v.blocks) % 2 == 0


class TestDecode:
    def test_arp_text_roundtrip(self):
        assert decode_blocks(encode_blocks(ARP_TEXT, P192), P192) == ARP_TEXT

    def test_empty_roundtrip(self):
        assert decode_blocks(BlockVector((), 0), P192) == b""

    def test_trailing_spaces_preserved(self):
        data = b"trailing   "
        assert decode_blocks(encode_blocks(data, P192), P192) == data

    def test_lone_pad_value_preserved(self):
        data = b" "
        assert decode_blocks(encode_blocks(data, P192), P192) == data

    def test_digit_too_wide(self):
        # A block whose lowest base-65536 digit is 256 cannot be an octet.
        with pytest.raises(CorruptBlock):
            decode_blocks(BlockVector((256, 32), 1), P192)

    def test_block_exceeds_group_capacity(self):
        with pytest.raises(CorruptBlock):
            decode_blocks(BlockVector((BASE**11, 32), 1), P192)

    def test_negative_block(self):
        with pytest.raises(CorruptBlock):
            decode_blocks(BlockVector((-1, 32), 1), P192)

    def test_count_inconsistent_with_length(self):
        with pytest.raises(LengthMismatch):
            decode_blocks(BlockVector((32,), 0), P192)

    def test_odd_count_rejected(self):
        with pytest.raises(LengthMismatch):
            decode_blocks(BlockVector((65, 65, 65), 33), P192)

    def test_length_exceeding_capacity(self):
        with pytest.raises(LengthMismatch):
            decode_blocks(BlockVector((65, 32), 100), P192)

    def test_negative_length(self):
        with pytest.raises(LengthMismatch):
            decode_blocks(BlockVector((65, 32), -1), P192)


@given(data=st.binary(max_size=4096))
@settings(max_examples=200)
def test_roundtrip_property_p192(data):
    assert decode_blocks(encode_blocks(data, P192), P192) == data


@pytest.mark.parametrize("name", ["P-224", "P-256", "P-384", "P-521"])
@given(data=st.binary(max_size=512))
@settings(max_examples=25)
def test_roundtrip_property_other_curves(name, data):
    c = curve_from_name(name)
    v = encode_blocks(data, c)
    assert all(0 <= b < c.p for b in v.blocks)
    assert decode_blocks(v, c) == data
