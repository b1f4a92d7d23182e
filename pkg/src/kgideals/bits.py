"""Small helpers for sets encoded as integer bit masks."""

from __future__ import annotations

from typing import Iterable, Iterator


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def full_mask(n: int) -> int:
    return (1 << n) - 1


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def lowest(mask: int) -> int:
    """Index of the lowest set bit (mask must be nonzero)."""
    return (mask & -mask).bit_length() - 1


def colors_of(fmask: int) -> tuple[int, ...]:
    """1-based colors of an F mask (bit i-1 is color i)."""
    return tuple(i + 1 for i in iter_bits(fmask))


def fmask_of(colors: Iterable[int]) -> int:
    return mask_of(c - 1 for c in colors)


def format_colorset(fmask: int) -> str:
    if not fmask:
        return "∅"
    return "{" + ",".join(str(c) for c in colors_of(fmask)) + "}"
