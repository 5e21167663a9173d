"""The pretorsion theory (equivalence relations, partial orders) on preorders.

Discrete preorders are the trivial objects; a monotone map is trivial when it
factors through one, which for finite sets means it sends every related pair
to a single point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .enumeration import enumerate_monotone_maps, monotone_maps, probe_objects
from .preorder import (
    BoundaryError,
    FinPreorder,
    MonotoneMap,
    Relation,
    bits,
    compose,
    mask_of,
    meet,
    opposite,
    transitive_closure,
)

DEFAULT_BOUND = 3


@dataclass(frozen=True)
class ZExactSequence:
    """A composable pair ``left: T -> X``, ``right: X -> F``.

    Only composability is enforced here; exactness is decided by
    :func:`is_z_exact`.
    """

    left: MonotoneMap
    right: MonotoneMap

    def __post_init__(self):
        if self.left.cod != self.right.dom:
            raise BoundaryError("sequence maps are not composable")


def _sends_pairs_to_points(dom_rows, m) -> bool:
    for i, r in enumerate(dom_rows):
        x = m[i]
        for j in bits(r):
            if m[j] != x:
                return False
    return True


def is_trivial_morphism(f: MonotoneMap) -> bool:
    return _sends_pairs_to_points(f.dom.rows, f.map)


def torsion_part(a: FinPreorder) -> tuple[FinPreorder, MonotoneMap]:
    """``(A, rho & rho^op)`` with the identity-on-points inclusion into ``a``."""
    t = meet(a, opposite(a))
    return t, MonotoneMap._trusted(t, a, range(a.size))


def quotient(size: int, classes_of: list[int], rows: list[int]) -> tuple[FinPreorder, list[int]]:
    """Quotient a relation by a partition given as per-element class masks.

    Classes are numbered by least member.  Returns the closed quotient
    preorder and the projection as a list.
    """
    index: dict[int, int] = {}
    proj = []
    for i in range(size):
        c = classes_of[i]
        if c not in index:
            index[c] = len(index)
        proj.append(index[c])
    pairs = {(proj[i], proj[j]) for i in range(size) for j in bits(rows[i])}
    pairs |= {(k, k) for k in range(len(index))}
    closed = transitive_closure(Relation(len(index), frozenset(pairs)))
    q_rows = [0] * len(index)
    for i, j in closed.pairs:
        q_rows[i] |= 1 << j
    return FinPreorder._trusted(len(index), q_rows), proj


def torsion_free_part(a: FinPreorder) -> tuple[FinPreorder, MonotoneMap]:
    """The partial order of strongly connected classes and the projection."""
    classes = [r & c for r, c in zip(a.rows, a.cols)]
    q, proj = quotient(a.size, classes, list(a.rows))
    return q, MonotoneMap._trusted(a, q, proj)


def canonical_ses(a: FinPreorder) -> ZExactSequence:
    _, i = torsion_part(a)
    _, p = torsion_free_part(a)
    return ZExactSequence(i, p)


def z_kernel(f: MonotoneMap) -> tuple[FinPreorder, MonotoneMap]:
    """Keep the related pairs of ``f.dom`` that ``f`` identifies."""
    m = f.map
    rows = [mask_of(j for j in bits(r) if m[j] == m[i]) for i, r in enumerate(f.dom.rows)]
    k = FinPreorder._trusted(f.dom.size, rows)
    return k, MonotoneMap._trusted(k, f.dom, range(f.dom.size))


def z_cokernel(f: MonotoneMap) -> tuple[FinPreorder, MonotoneMap]:
    """Collapse what ``f`` makes related, then close the image order."""
    b = f.cod
    m = f.map
    glue = {(x, x) for x in range(b.size)}
    for i, r in enumerate(f.dom.rows):
        for j in bits(r):
            glue.add((m[i], m[j]))
            glue.add((m[j], m[i]))
    eq = transitive_closure(Relation(b.size, frozenset(glue)))
    classes = [0] * b.size
    for x, y in eq.pairs:
        classes[x] |= 1 << y
    q, proj = quotient(b.size, classes, list(b.rows))
    return q, MonotoneMap._trusted(b, q, proj)


def is_z_kernel(eps: MonotoneMap, f: MonotoneMap, bound: int = DEFAULT_BOUND) -> bool:
    """Bounded check of the Z-kernel universal property of ``eps`` for ``f``."""
    if eps.cod != f.dom or not is_trivial_morphism(compose(f, eps)):
        return False
    fm, em = f.map, eps.map
    for y in probe_objects(bound):
        factored = Counter(tuple(em[x] for x in u) for u in monotone_maps(y, eps.dom))
        for lam in monotone_maps(y, f.dom):
            if _sends_pairs_to_points(y.rows, [fm[x] for x in lam]) and factored[lam] != 1:
                return False
    return True


def is_z_cokernel(q: MonotoneMap, f: MonotoneMap, bound: int = DEFAULT_BOUND) -> bool:
    """Bounded check of the Z-cokernel universal property of ``q`` for ``f``."""
    if q.dom != f.cod or not is_trivial_morphism(compose(q, f)):
        return False
    fm, qm = f.map, q.map
    for y in probe_objects(bound):
        factored = Counter(tuple(v[x] for x in qm) for v in monotone_maps(q.cod, y))
        for mu in monotone_maps(f.cod, y):
            if _sends_pairs_to_points(f.dom.rows, [mu[x] for x in fm]) and factored[mu] != 1:
                return False
    return True


def is_z_exact(s: ZExactSequence, bound: int = DEFAULT_BOUND) -> bool:
    return is_z_kernel(s.left, s.right, bound) and is_z_cokernel(s.right, s.left, bound)


def all_maps_trivial(t: FinPreorder, f: FinPreorder) -> bool:
    """Whether every monotone map ``t -> f`` is trivial."""
    return all(is_trivial_morphism(g) for g in enumerate_monotone_maps(t, f))
