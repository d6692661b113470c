from jahangir_ramsey.utils.bits import full_mask, iter_bits, lowest_bits, lowest_member, mask_of, members


def test_mask_round_trip() -> None:
    mask = mask_of([5, 0, 3])
    assert mask == 0b101001
    assert members(mask) == [0, 3, 5]
    assert list(iter_bits(0)) == []


def test_lowest_bits() -> None:
    assert lowest_bits(0b101101, 2) == 0b000101
    assert lowest_bits(0b11, 5) == 0b11
    assert lowest_bits(0b1010, 0) == 0


def test_lowest_member_and_full_mask() -> None:
    assert lowest_member(0b101000) == 3
    assert full_mask(4) == 0b1111
    assert full_mask(0) == 0
