"""Seeded random instances and re-exported exhaustive enumerators."""

from __future__ import annotations

import random

from ..enumeration import enumerate_monotone_maps, enumerate_preorders, probe_objects
from ..preorder import ComplementedSub, FinPreorder, MonotoneMap, bits, from_generators
from ..stable import PartialMap, StableMorphism, enumerate_stable_morphisms, normalize

__all__ = [
    "enumerate_monotone_maps",
    "enumerate_preorders",
    "enumerate_stable_morphisms",
    "gen_equivalent",
    "gen_monotone_map",
    "gen_partial_map",
    "gen_preorder",
    "gen_stable_morphism",
    "probe_objects",
]


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def gen_preorder(size: int, seed, density: float = 0.35) -> FinPreorder:
    """Closure of a random sample of ordered pairs, each kept with ``density``."""
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = _rng(seed)
    pairs = [(i, j) for i in range(size) for j in range(size) if i != j and rng.random() < density]
    return from_generators(size, pairs)


def _random_monotone(a: FinPreorder, b: FinPreorder, rng: random.Random) -> list[int] | None:
    n = a.size
    img = [0] * n
    everything = (1 << b.size) - 1

    def extend(i):
        if i == n:
            return True
        allowed = everything
        for j in bits(a.rows[i] & ((1 << i) - 1)):
            allowed &= b.cols[img[j]]
        for j in bits(a.cols[i] & ((1 << i) - 1)):
            allowed &= b.rows[img[j]]
        options = list(bits(allowed))
        rng.shuffle(options)
        for x in options:
            img[i] = x
            if extend(i + 1):
                return True
        return False

    return img if extend(0) else None


def gen_monotone_map(a: FinPreorder, b: FinPreorder, seed) -> MonotoneMap:
    """A random monotone map; ``b`` must be non-empty unless ``a`` is empty."""
    img = _random_monotone(a, b, _rng(seed))
    if img is None:
        raise ValueError("no monotone map exists between these preorders")
    return MonotoneMap._trusted(a, b, img)


def gen_partial_map(a: FinPreorder, b: FinPreorder, seed, keep: float = 0.7) -> PartialMap:
    """Random domain (each component kept with probability ``keep``) and map."""
    rng = _rng(seed)
    raw = [None] * a.size
    members = []
    for comp in a.components:
        if b.size and rng.random() < keep:
            members.extend(bits(comp))
    sub, incl = ComplementedSub._trusted(a, members).induced()
    img = _random_monotone(sub, b, rng) or []
    for x, v in zip(incl.map, img):
        raw[x] = v
    return PartialMap._trusted(a, b, ComplementedSub._trusted(a, members), raw)


def gen_stable_morphism(a: FinPreorder, b: FinPreorder, seed) -> StableMorphism:
    rng = _rng(seed)
    best = normalize(gen_partial_map(a, b, rng))
    # a few retries bias the sample away from the zero morphism
    for _ in range(3):
        if best.kept:
            break
        best = normalize(gen_partial_map(a, b, rng, keep=0.9))
    return best


def gen_equivalent(p: PartialMap, seed) -> PartialMap:
    """A random partial map equivalent to ``p``.

    Constant components may be dropped from the domain and components outside
    the domain may be added with a constant value.
    """
    rng = _rng(seed)
    a, b = p.source, p.target
    raw = list(p.map)
    for comp in a.components:
        members = list(bits(comp))
        values = {raw[i] for i in members}
        if None in values:
            if b.size and rng.random() < 0.5:
                c = rng.randrange(b.size)
                for i in members:
                    raw[i] = c
        elif len(values) == 1 and rng.random() < 0.5:
            for i in members:
                raw[i] = None
    dom = ComplementedSub._trusted(a, (i for i, x in enumerate(raw) if x is not None))
    return PartialMap._trusted(a, b, dom, raw)
