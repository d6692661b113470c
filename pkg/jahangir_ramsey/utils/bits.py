"""Vertex sets as Python ints: bit v set means vertex v is a member."""

from typing import Iterable, Iterator


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield member vertices in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> list[int]:
    return list(iter_bits(mask))


def lowest_bits(mask: int, count: int) -> int:
    """The `count` smallest members of `mask` (all of them if fewer)."""
    out = 0
    while mask and count > 0:
        low = mask & -mask
        out |= low
        mask ^= low
        count -= 1
    return out


def lowest_member(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def full_mask(order: int) -> int:
    return (1 << order) - 1
