"""Exhaustive enumeration of small preorders and monotone maps.

Labeled enumeration: two isomorphic preorders on different labelings are
both produced.  Results are cached since the same small objects are
revisited by every bounded universal-property check.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .preorder import FinPreorder, MonotoneMap, PreorderError, bits

MAX_ENUM_SIZE = 4
MAX_MAPS = 200_000


@lru_cache(maxsize=None)
def _preorders(size: int) -> tuple[FinPreorder, ...]:
    off = [(i, j) for i in range(size) for j in range(size) if i != j]
    found = []
    for choice in product((0, 1), repeat=len(off)):
        rows = [1 << i for i in range(size)]
        for (i, j), on in zip(off, choice):
            if on:
                rows[i] |= 1 << j
        if all(rows[j] & ~rows[i] == 0 for i in range(size) for j in bits(rows[i])):
            found.append(FinPreorder._trusted(size, rows))
    return tuple(found)


def enumerate_preorders(size: int):
    """Every preorder on ``range(size)``, each exactly once."""
    if not 0 <= size <= MAX_ENUM_SIZE:
        raise PreorderError(f"enumeration limited to sizes 0..{MAX_ENUM_SIZE}")
    return iter(_preorders(size))


@lru_cache(maxsize=None)
def probe_objects(bound: int) -> tuple[FinPreorder, ...]:
    """All preorders of size at most ``bound``."""
    return tuple(p for n in range(bound + 1) for p in enumerate_preorders(n))


def _monotone(a: FinPreorder, b: FinPreorder):
    n = a.size
    img = [0] * n
    brows, bcols = b.rows, b.cols
    everything = (1 << b.size) - 1

    def extend(i):
        if i == n:
            yield tuple(img)
            return
        allowed = everything
        # constraints against already-assigned elements
        for j in bits(a.rows[i] & ((1 << i) - 1)):
            allowed &= bcols[img[j]]
        for j in bits(a.cols[i] & ((1 << i) - 1)):
            allowed &= brows[img[j]]
        for x in bits(allowed):
            img[i] = x
            yield from extend(i + 1)

    return extend(0)


@lru_cache(maxsize=4096)
def monotone_maps(a: FinPreorder, b: FinPreorder) -> tuple[tuple[int, ...], ...]:
    """All monotone functions ``a -> b`` as image tuples (cached)."""
    if b.size ** a.size > MAX_MAPS and not (a.size and b.size == 0):
        raise PreorderError("too many candidate maps to enumerate")
    return tuple(_monotone(a, b))


def enumerate_monotone_maps(a: FinPreorder, b: FinPreorder):
    """All monotone maps ``a -> b``."""
    return (MonotoneMap._trusted(a, b, m) for m in monotone_maps(a, b))
