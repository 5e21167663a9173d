"""Partial maps of preorders and the stable category.

A partial map is a monotone map defined on a complemented subobject (a union
of comparability components) of its source.  Two partial maps are identified
in the stable category when they agree on a common complemented piece and are
trivial everywhere else.  On a single comparability component a trivial map is
a constant one, so every class has a unique representative: drop the
components on which the map is constant.  :class:`StableMorphism` is that
representative, and equality of stable morphisms is plain value equality.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from .enumeration import monotone_maps, probe_objects
from .preorder import (
    BoundaryError,
    ComplementedSub,
    FinPreorder,
    MonotoneMap,
    PreorderError,
    bits,
    coproduct,
    identity,
    induced,
    mask_of,
)
from .pretorsion import DEFAULT_BOUND, is_trivial_morphism, z_cokernel, z_kernel


def _as_raw(size: int, values) -> tuple:
    if isinstance(values, Mapping):
        return tuple(values.get(i) for i in range(size))
    values = tuple(values)
    if len(values) != size:
        raise PreorderError("map must list one entry (or None) per source element")
    return values


def _check_monotone_on(source: FinPreorder, target: FinPreorder, raw: Sequence) -> None:
    for i in range(source.size):
        x = raw[i]
        if x is None:
            continue
        if not 0 <= x < target.size:
            raise PreorderError("map value outside the target")
        for j in bits(source.rows[i]):
            if raw[j] is None or not target.leq(x, raw[j]):
                raise PreorderError(f"not monotone on ({i}, {j})")


@dataclass(frozen=True)
class PartialMap:
    """A monotone map defined on a complemented subobject of ``source``.

    ``map`` has one entry per source element, ``None`` outside ``domain``.
    """

    source: FinPreorder
    target: FinPreorder
    domain: ComplementedSub
    map: tuple

    def __post_init__(self):
        raw = _as_raw(self.source.size, self.map)
        object.__setattr__(self, "map", raw)
        if self.domain.parent != self.source:
            raise BoundaryError("domain is not a subobject of the source")
        defined = {i for i, x in enumerate(raw) if x is not None}
        if defined != self.domain.members:
            raise PreorderError("map must be defined exactly on the domain")
        _check_monotone_on(self.source, self.target, raw)

    @classmethod
    def _trusted(cls, source, target, domain, raw) -> "PartialMap":
        obj = object.__new__(cls)
        for name, value in (("source", source), ("target", target), ("domain", domain), ("map", tuple(raw))):
            object.__setattr__(obj, name, value)
        return obj

    @classmethod
    def total(cls, f: MonotoneMap) -> "PartialMap":
        """The partial map with full domain carrying ``f``."""
        return cls._trusted(f.dom, f.cod, ComplementedSub._trusted(f.dom, range(f.dom.size)), f.map)

    def restriction(self) -> MonotoneMap:
        """The underlying monotone map out of the induced domain."""
        sub, incl = self.domain.induced()
        return MonotoneMap._trusted(sub, self.target, [self.map[x] for x in incl.map])


@dataclass(frozen=True)
class StableMorphism:
    """Canonical representative of a morphism of the stable category."""

    source: FinPreorder
    target: FinPreorder
    kept: frozenset
    map: tuple

    def __post_init__(self):
        kept = frozenset(self.kept)
        raw = _as_raw(self.source.size, self.map)
        object.__setattr__(self, "kept", kept)
        object.__setattr__(self, "map", raw)
        ComplementedSub(self.source, kept)
        if {i for i, x in enumerate(raw) if x is not None} != kept:
            raise PreorderError("map must be defined exactly on the kept elements")
        _check_monotone_on(self.source, self.target, raw)
        for comp in self.source.components:
            if comp & mask_of(kept) and len({raw[i] for i in bits(comp)}) == 1:
                raise PreorderError("kept component with a constant map (not a normal form)")

    @classmethod
    def _trusted(cls, source, target, kept, raw) -> "StableMorphism":
        obj = object.__new__(cls)
        for name, value in (("source", source), ("target", target), ("kept", kept), ("map", tuple(raw))):
            object.__setattr__(obj, name, value)
        return obj

    def as_partial(self) -> PartialMap:
        return PartialMap._trusted(
            self.source, self.target, ComplementedSub._trusted(self.source, self.kept), self.map
        )

    def __repr__(self):
        body = ", ".join(f"{i}->{x}" for i, x in enumerate(self.map) if x is not None)
        return f"StableMorphism({self.source!r} -> {self.target!r}: {{{body}}})"


def _normal(source: FinPreorder, target: FinPreorder, raw: Sequence) -> StableMorphism:
    out = list(raw)
    keep = []
    for comp in source.components:
        members = list(bits(comp))
        values = {raw[i] for i in members}
        if None in values or len(values) == 1:
            for i in members:
                out[i] = None
        else:
            keep.extend(members)
    return StableMorphism._trusted(source, target, frozenset(keep), out)


def compose_partial(q: PartialMap, p: PartialMap) -> PartialMap:
    """``q . p``: restrict ``p`` to the preimage of ``q``'s domain, then apply ``q``."""
    if p.target != q.source:
        raise BoundaryError("target of p is not the source of q")
    qm = q.map
    raw = tuple(None if x is None else qm[x] for x in p.map)
    dom = ComplementedSub._trusted(p.source, (i for i, x in enumerate(raw) if x is not None))
    return PartialMap._trusted(p.source, q.target, dom, raw)


def identity_partial(a: FinPreorder) -> PartialMap:
    return PartialMap.total(identity(a))


def normalize(p: PartialMap) -> StableMorphism:
    return _normal(p.source, p.target, p.map)


def equivalent(p1: PartialMap, p2: PartialMap) -> bool:
    if p1.source != p2.source or p1.target != p2.target:
        raise BoundaryError("partial maps are not parallel")
    return normalize(p1) == normalize(p2)


@dataclass(frozen=True)
class CongruenceDiagram:
    """Witness that two partial maps agree on ``common`` and are trivial off it."""

    common: frozenset
    first_rest: frozenset
    second_rest: frozenset


def _trivial_on(p: PartialMap, members) -> bool:
    sub, incl = induced(p.source, members)
    return is_trivial_morphism(MonotoneMap._trusted(sub, p.target, [p.map[x] for x in incl.map]))


def _is_complemented(a: FinPreorder, mask: int) -> bool:
    return all(not ((a.rows[i] | a.cols[i]) & ~mask) for i in bits(mask))


def find_congruence_diagram(p1: PartialMap, p2: PartialMap) -> CongruenceDiagram | None:
    """Brute-force search for a congruence diagram between ``p1`` and ``p2``.

    Every subset of the common domain is tried, smallest first, so the
    returned common part is the least one.
    """
    if p1.source != p2.source or p1.target != p2.target:
        raise BoundaryError("partial maps are not parallel")
    a = p1.source
    shared = sorted(p1.domain.members & p2.domain.members)
    candidates = sorted(range(1 << len(shared)), key=lambda s: (bin(s).count("1"), s))
    for sel in candidates:
        common = frozenset(shared[k] for k in bits(sel))
        if not _is_complemented(a, mask_of(common)):
            continue
        if any(p1.map[i] != p2.map[i] for i in common):
            continue
        rest1 = p1.domain.members - common
        rest2 = p2.domain.members - common
        if _trivial_on(p1, rest1) and _trivial_on(p2, rest2):
            return CongruenceDiagram(common, rest1, rest2)
    return None


def sigma(f: MonotoneMap) -> StableMorphism:
    """Image of a monotone map in the stable category."""
    return _normal(f.dom, f.cod, f.map)


def zero(a: FinPreorder, b: FinPreorder) -> StableMorphism:
    return StableMorphism._trusted(a, b, frozenset(), (None,) * a.size)


def is_zero(m: StableMorphism) -> bool:
    return not m.kept


def stable_identity(a: FinPreorder) -> StableMorphism:
    return sigma(identity(a))


def compose_stable(n: StableMorphism, m: StableMorphism) -> StableMorphism:
    """``n . m`` in the stable category."""
    if m.target != n.source:
        raise BoundaryError("target of m is not the source of n")
    nm = n.map
    return _normal(m.source, n.target, [None if x is None else nm[x] for x in m.map])


def stable_coproduct(m1: StableMorphism, m2: StableMorphism) -> StableMorphism:
    """``m1 + m2 : A + C -> B + D``, blockwise."""
    src, _, _ = coproduct(m1.source, m2.source)
    dst, _, _ = coproduct(m1.target, m2.target)
    s, t = m1.source.size, m1.target.size
    raw = m1.map + tuple(None if x is None else x + t for x in m2.map)
    return StableMorphism._trusted(src, dst, m1.kept | {i + s for i in m2.kept}, raw)


def coproduct_injections(a: FinPreorder, b: FinPreorder):
    """The coproduct object with both injections as stable morphisms."""
    s, ia, ib = coproduct(a, b)
    return s, sigma(ia), sigma(ib)


def stable_copair(m1: StableMorphism, m2: StableMorphism) -> StableMorphism:
    """``[m1, m2] : A + C -> B``."""
    if m1.target != m2.target:
        raise BoundaryError("copairing needs a common target")
    src, _, _ = coproduct(m1.source, m2.source)
    s = m1.source.size
    return StableMorphism._trusted(src, m1.target, m1.kept | {i + s for i in m2.kept}, m1.map + m2.map)


def _kept_restriction(m: StableMorphism) -> MonotoneMap:
    sub, incl = induced(m.source, m.kept)
    return MonotoneMap._trusted(sub, m.target, [m.map[x] for x in incl.map])


def kernel_preimage(m: StableMorphism) -> MonotoneMap:
    """The monotone map whose image is the kernel of ``m``.

    Its domain is (Z-kernel of the kept part) + (induced complement), in that
    block order, and it sends every element back to where it came from.
    """
    a = m.source
    kept = sorted(m.kept)
    rest = [i for i in range(a.size) if i not in m.kept]
    zk, _ = z_kernel(_kept_restriction(m))
    rest_obj, _ = induced(a, rest)
    obj, _, _ = coproduct(zk, rest_obj)
    return MonotoneMap._trusted(obj, a, kept + rest)


def stable_kernel(m: StableMorphism) -> tuple[FinPreorder, StableMorphism]:
    n = kernel_preimage(m)
    return n.dom, sigma(n)


def stable_cokernel(m: StableMorphism) -> tuple[FinPreorder, StableMorphism]:
    """Image of the Z-cokernel of the kept part of ``m``."""
    q_obj, q = z_cokernel(_kept_restriction(m))
    return q_obj, sigma(q)


@dataclass(frozen=True)
class PreuniversalSplit:
    """``source = first + second`` with ``m`` factoring blockwise.

    ``first_map: first -> left`` and ``second_map: second -> right`` are
    stable morphisms out of the induced subobjects; the injections are the
    images of the inclusions.
    """

    first: ComplementedSub
    second: ComplementedSub
    first_map: StableMorphism
    second_map: StableMorphism
    first_injection: StableMorphism
    second_injection: StableMorphism


def preuniversal_decomposition(
    m: StableMorphism, left: FinPreorder, right: FinPreorder
) -> PreuniversalSplit:
    """Split the source of ``m : C -> left + right`` along the two summands.

    Components sent into ``right`` form the second block; everything else,
    including the components ``m`` kills, goes to the first block.
    """
    target, _, _ = coproduct(left, right)
    if m.target != target:
        raise BoundaryError("target is not the coproduct of the given summands")
    c = m.source
    n = left.size
    second = ComplementedSub._trusted(c, (i for i in m.kept if m.map[i] >= n))
    first = second.complement
    parts = []
    for sub, block, shift in ((first, left, 0), (second, right, n)):
        obj, incl = sub.induced()
        raw = [None if m.map[x] is None else m.map[x] - shift for x in incl.map]
        parts.append((_normal(obj, block, raw), sigma(incl)))
    (m1, s1), (m2, s2) = parts
    return PreuniversalSplit(first, second, m1, m2, s1, s2)


@lru_cache(maxsize=8192)
def _hom(a: FinPreorder, b: FinPreorder) -> tuple[StableMorphism, ...]:
    per_comp = []
    for comp in a.components:
        sub, incl = induced(a, bits(comp))
        options = [None] + [img for img in monotone_maps(sub, b) if len(set(img)) > 1]
        per_comp.append((incl.map, options))
    homs = []
    for choice in product(*(opts for _, opts in per_comp)):
        raw = [None] * a.size
        kept = []
        for (elems, _), img in zip(per_comp, choice):
            if img is not None:
                for e, v in zip(elems, img):
                    raw[e] = v
                kept.extend(elems)
        homs.append(StableMorphism._trusted(a, b, frozenset(kept), raw))
    return tuple(homs)


def enumerate_stable_morphisms(a: FinPreorder, b: FinPreorder):
    """Every morphism ``a -> b`` of the stable category, each once."""
    return iter(_hom(a, b))


def stable_inverse(m: StableMorphism) -> StableMorphism | None:
    """The inverse of ``m`` if it is an isomorphism, else ``None``.

    An isomorphism must restrict to an order isomorphism between the
    non-singleton components of source and target.
    """
    a, b = m.source, m.target
    big_a = {i for comp in a.components if comp & (comp - 1) for i in bits(comp)}
    big_b = {i for comp in b.components if comp & (comp - 1) for i in bits(comp)}
    if m.kept != big_a:
        return None
    image = [m.map[i] for i in sorted(big_a)]
    if len(set(image)) != len(image) or set(image) != big_b:
        return None
    for i in big_a:
        for j in big_a:
            if a.leq(i, j) != b.leq(m.map[i], m.map[j]):
                return None
    raw = [None] * b.size
    for i in big_a:
        raw[m.map[i]] = i
    return StableMorphism._trusted(b, a, frozenset(big_b), raw)


def is_mono(m: StableMorphism, bound: int = DEFAULT_BOUND) -> bool:
    """Left-cancellation against every probe object of size at most ``bound``."""
    for t in probe_objects(bound):
        images = [compose_stable(m, u) for u in _hom(t, m.source)]
        if len(set(images)) != len(images):
            return False
    return True


def is_kernel(k: StableMorphism, m: StableMorphism, bound: int = DEFAULT_BOUND) -> bool:
    """Bounded check that ``k`` is a kernel of ``m``."""
    if k.target != m.source or not is_zero(compose_stable(m, k)):
        return False
    for t in probe_objects(bound):
        factored = Counter(compose_stable(k, u) for u in _hom(t, k.source))
        for x in _hom(t, m.source):
            if is_zero(compose_stable(m, x)) and factored[x] != 1:
                return False
    return True


def is_cokernel(q: StableMorphism, m: StableMorphism, bound: int = DEFAULT_BOUND) -> bool:
    """Bounded check that ``q`` is a cokernel of ``m``."""
    if q.source != m.target or not is_zero(compose_stable(q, m)):
        return False
    for y in probe_objects(bound):
        factored = Counter(compose_stable(v, q) for v in _hom(q.target, y))
        for x in _hom(m.target, y):
            if is_zero(compose_stable(x, m)) and factored[x] != 1:
                return False
    return True


def is_short_exact(m1: StableMorphism, m2: StableMorphism, bound: int = DEFAULT_BOUND) -> bool:
    if m1.target != m2.source:
        raise BoundaryError("sequence maps are not composable")
    return is_kernel(m1, m2, bound) and is_cokernel(m2, m1, bound)
