"""Finite preorders, monotone maps and complemented subobjects.

Carriers are always ``range(size)``.  A relation is stored as a tuple of row
bitmasks: bit ``j`` of ``rows[i]`` is set iff ``i <= j``.  Python integers are
unbounded, so the same representation serves every carrier size.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class PreorderError(ValueError):
    """A value violates the invariants of the type it is built as."""


class NotComplemented(PreorderError):
    """A member set is not a union of comparability components."""


class BoundaryError(PreorderError):
    """Two morphisms cannot be composed or compared."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _check_pairs(size: int, pairs: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    out = []
    for i, j in pairs:
        if not (0 <= i < size and 0 <= j < size):
            raise PreorderError(f"pair ({i}, {j}) out of range for size {size}")
        out.append((i, j))
    return out


def _rows_from_pairs(size: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    rows = [0] * size
    for i, j in pairs:
        rows[i] |= 1 << j
    return rows


def _close_rows(rows: list[int]) -> list[int]:
    # iterated squaring: R <- R | R.R until stable
    while True:
        nxt = []
        for r in rows:
            acc = r
            for j in bits(r):
                acc |= rows[j]
            nxt.append(acc)
        if nxt == rows:
            return rows
        rows = nxt


def _transpose(rows: Sequence[int]) -> tuple[int, ...]:
    cols = [0] * len(rows)
    for i, r in enumerate(rows):
        for j in bits(r):
            cols[j] |= 1 << i
    return tuple(cols)


@dataclass(frozen=True)
class Relation:
    """An arbitrary binary relation on ``range(size)``."""

    size: int
    pairs: frozenset

    def __post_init__(self):
        pairs = frozenset(_check_pairs(self.size, self.pairs))
        object.__setattr__(self, "pairs", pairs)

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(_rows_from_pairs(self.size, self.pairs))


def transitive_closure(r: Relation) -> Relation:
    """Least transitive relation containing ``r``."""
    rows = _close_rows(_rows_from_pairs(r.size, r.pairs))
    return Relation(r.size, frozenset((i, j) for i in range(r.size) for j in bits(rows[i])))


@dataclass(frozen=True)
class FinPreorder:
    """A reflexive, transitive relation on ``range(size)``.

    The constructor validates; use :func:`from_generators` to close an
    arbitrary set of pairs.
    """

    size: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if self.size < 0 or len(rows) != self.size:
            raise PreorderError("rows must have one entry per element")
        full = (1 << self.size) - 1
        for i, r in enumerate(rows):
            if r & ~full:
                raise PreorderError(f"row {i} references elements outside the carrier")
            if not r >> i & 1:
                raise PreorderError(f"not reflexive at {i}")
            for j in bits(r):
                if rows[j] & ~r:
                    raise PreorderError(f"not transitive at ({i}, {j})")

    @classmethod
    def _trusted(cls, size: int, rows: Sequence[int]) -> "FinPreorder":
        obj = object.__new__(cls)
        object.__setattr__(obj, "size", size)
        object.__setattr__(obj, "rows", tuple(rows))
        return obj

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]]) -> "FinPreorder":
        """Build from the complete relation (must already be a preorder)."""
        return cls(size, tuple(_rows_from_pairs(size, _check_pairs(size, pairs))))

    @classmethod
    def discrete(cls, size: int) -> "FinPreorder":
        return cls._trusted(size, [1 << i for i in range(size)])

    @classmethod
    def full(cls, size: int) -> "FinPreorder":
        return cls._trusted(size, [(1 << size) - 1] * size)

    @classmethod
    def chain(cls, size: int) -> "FinPreorder":
        full = (1 << size) - 1
        return cls._trusted(size, [full & ~((1 << i) - 1) for i in range(size)])

    def leq(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    @cached_property
    def rel(self) -> frozenset:
        return frozenset((i, j) for i in range(self.size) for j in bits(self.rows[i]))

    @cached_property
    def cols(self) -> tuple[int, ...]:
        return _transpose(self.rows)

    @cached_property
    def components(self) -> tuple[int, ...]:
        """Comparability components as bitmasks, ordered by least member."""
        seen = 0
        comps = []
        for start in range(self.size):
            if seen >> start & 1:
                continue
            comp = frontier = 1 << start
            while frontier:
                nxt = 0
                for i in bits(frontier):
                    nxt |= self.rows[i] | self.cols[i]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            comps.append(comp)
        return tuple(comps)

    @cached_property
    def component_index(self) -> tuple[int, ...]:
        idx = [0] * self.size
        for c, comp in enumerate(self.components):
            for i in bits(comp):
                idx[i] = c
        return tuple(idx)

    def __repr__(self):
        pairs = sorted((i, j) for i, j in self.rel if i != j)
        return f"FinPreorder({self.size}, {pairs})"


def from_generators(size: int, pairs: Relation | Iterable[tuple[int, int]] = ()) -> FinPreorder:
    """Least preorder on ``range(size)`` containing ``pairs``."""
    if isinstance(pairs, Relation):
        if pairs.size != size:
            raise PreorderError("relation size does not match")
        pairs = pairs.pairs
    rows = _rows_from_pairs(size, _check_pairs(size, pairs))
    rows = [r | 1 << i for i, r in enumerate(rows)]
    return FinPreorder._trusted(size, _close_rows(rows))


def opposite(a: FinPreorder) -> FinPreorder:
    return FinPreorder._trusted(a.size, a.cols)


def meet(a: FinPreorder, b: FinPreorder) -> FinPreorder:
    if a.size != b.size:
        raise BoundaryError("meet of preorders on different carriers")
    return FinPreorder._trusted(a.size, [x & y for x, y in zip(a.rows, b.rows)])


def is_equivalence(a: FinPreorder) -> bool:
    return a.rows == a.cols


def is_partial_order(a: FinPreorder) -> bool:
    return all(r & c == 1 << i for i, (r, c) in enumerate(zip(a.rows, a.cols)))


def is_discrete(a: FinPreorder) -> bool:
    return all(r == 1 << i for i, r in enumerate(a.rows))


def comparability_components(a: FinPreorder) -> list[frozenset]:
    return [frozenset(bits(c)) for c in a.components]


def induced(a: FinPreorder, members: Iterable[int]) -> tuple[FinPreorder, "MonotoneMap"]:
    """The preorder induced on ``members`` and its inclusion into ``a``.

    Members are renumbered in increasing order.
    """
    elems = sorted(members)
    pos = {x: k for k, x in enumerate(elems)}
    rows = [mask_of(pos[y] for y in bits(a.rows[x]) if y in pos) for x in elems]
    sub = FinPreorder._trusted(len(elems), rows)
    return sub, MonotoneMap._trusted(sub, a, tuple(elems))


@dataclass(frozen=True)
class MonotoneMap:
    """A relation-preserving function ``dom -> cod``."""

    dom: FinPreorder
    cod: FinPreorder
    map: tuple

    def __post_init__(self):
        m = tuple(self.map)
        object.__setattr__(self, "map", m)
        if len(m) != self.dom.size:
            raise PreorderError("map must assign every element of the domain")
        if any(not 0 <= x < self.cod.size for x in m):
            raise PreorderError("map value outside the codomain")
        crows = self.cod.rows
        for i, r in enumerate(self.dom.rows):
            target = crows[m[i]]
            for j in bits(r):
                if not target >> m[j] & 1:
                    raise PreorderError(f"not monotone on ({i}, {j})")

    @classmethod
    def _trusted(cls, dom: FinPreorder, cod: FinPreorder, m: Sequence[int]) -> "MonotoneMap":
        obj = object.__new__(cls)
        object.__setattr__(obj, "dom", dom)
        object.__setattr__(obj, "cod", cod)
        object.__setattr__(obj, "map", tuple(m))
        return obj

    def __call__(self, i: int) -> int:
        return self.map[i]


def identity(a: FinPreorder) -> MonotoneMap:
    return MonotoneMap._trusted(a, a, range(a.size))


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """``g . f`` (apply ``f`` first)."""
    if f.cod != g.dom:
        raise BoundaryError("codomain of f is not the domain of g")
    gm = g.map
    return MonotoneMap._trusted(f.dom, g.cod, [gm[x] for x in f.map])


def map_equal(f: MonotoneMap, g: MonotoneMap) -> bool:
    return f == g


def is_isomorphism(f: MonotoneMap) -> bool:
    """Bijective with monotone inverse."""
    if f.dom.size != f.cod.size or len(set(f.map)) != f.dom.size:
        return False
    m = f.map
    return all(
        f.dom.leq(i, j) == f.cod.leq(m[i], m[j])
        for i in range(f.dom.size)
        for j in range(f.dom.size)
    )


def inverse_isomorphism(f: MonotoneMap) -> MonotoneMap:
    if not is_isomorphism(f):
        raise PreorderError("map is not an isomorphism of preorders")
    inv = [0] * f.dom.size
    for i, x in enumerate(f.map):
        inv[x] = i
    return MonotoneMap._trusted(f.cod, f.dom, inv)


@dataclass(frozen=True)
class ComplementedSub:
    """A union of comparability components of ``parent``."""

    parent: FinPreorder
    members: frozenset

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        if any(not 0 <= i < self.parent.size for i in members):
            raise PreorderError("member outside the parent carrier")
        m = mask_of(members)
        for i in members:
            if (self.parent.rows[i] | self.parent.cols[i]) & ~m:
                raise NotComplemented(f"element {i} is comparable to a non-member")

    @classmethod
    def _trusted(cls, parent: FinPreorder, members: Iterable[int]) -> "ComplementedSub":
        obj = object.__new__(cls)
        object.__setattr__(obj, "parent", parent)
        object.__setattr__(obj, "members", frozenset(members))
        return obj

    @cached_property
    def mask(self) -> int:
        return mask_of(self.members)

    @property
    def complement(self) -> "ComplementedSub":
        return ComplementedSub._trusted(self.parent, set(range(self.parent.size)) - self.members)

    def induced(self) -> tuple[FinPreorder, MonotoneMap]:
        return induced(self.parent, self.members)


def complemented_sub(parent: FinPreorder, members: Iterable[int]) -> ComplementedSub:
    return ComplementedSub(parent, frozenset(members))


def whole(a: FinPreorder) -> ComplementedSub:
    return ComplementedSub._trusted(a, range(a.size))


def inverse_image(f: MonotoneMap, s: ComplementedSub) -> ComplementedSub:
    if s.parent != f.cod:
        raise BoundaryError("subobject does not live on the codomain")
    return ComplementedSub._trusted(f.dom, (i for i, x in enumerate(f.map) if x in s.members))


def coproduct(a: FinPreorder, b: FinPreorder) -> tuple[FinPreorder, MonotoneMap, MonotoneMap]:
    """Disjoint union: elements of ``a`` first, then ``b`` shifted by ``a.size``."""
    n = a.size
    rows = list(a.rows) + [r << n for r in b.rows]
    s = FinPreorder._trusted(n + b.size, rows)
    return (
        s,
        MonotoneMap._trusted(a, s, range(n)),
        MonotoneMap._trusted(b, s, range(n, n + b.size)),
    )


def coproduct_map(f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    """``f + g : dom f + dom g -> cod f + cod g``."""
    src, _, _ = coproduct(f.dom, g.dom)
    dst, _, _ = coproduct(f.cod, g.cod)
    n = f.cod.size
    return MonotoneMap._trusted(src, dst, list(f.map) + [x + n for x in g.map])


def copair(f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    """``[f, g] : dom f + dom g -> cod``."""
    if f.cod != g.cod:
        raise BoundaryError("copairing needs a common codomain")
    src, _, _ = coproduct(f.dom, g.dom)
    return MonotoneMap._trusted(src, f.cod, list(f.map) + list(g.map))
