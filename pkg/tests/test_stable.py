import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_monotone, components, constant_components, preorders
from preordstab.enumeration import probe_objects
from preordstab.laws.generators import gen_equivalent, gen_partial_map, gen_preorder, gen_stable_morphism
from preordstab.preorder import (
    BoundaryError,
    ComplementedSub,
    FinPreorder,
    MonotoneMap,
    coproduct,
    coproduct_map,
    from_generators,
    identity,
)
from preordstab.pretorsion import canonical_ses, is_trivial_morphism, torsion_free_part
from preordstab.stable import (
    PartialMap,
    StableMorphism,
    compose_partial,
    compose_stable,
    coproduct_injections,
    enumerate_stable_morphisms,
    equivalent,
    find_congruence_diagram,
    identity_partial,
    is_cokernel,
    is_kernel,
    is_mono,
    is_short_exact,
    is_zero,
    normalize,
    preuniversal_decomposition,
    sigma,
    stable_cokernel,
    stable_coproduct,
    stable_identity,
    stable_inverse,
    stable_kernel,
    zero,
)

CHAIN2 = FinPreorder.chain(2)
PT = FinPreorder.discrete(1)
CYCLE_THEN_UP = from_generators(3, [(0, 1), (1, 0), (1, 2)])


def partial(a, b, values):
    dom = ComplementedSub(a, frozenset(i for i, v in enumerate(values) if v is not None))
    return PartialMap(a, b, dom, tuple(values))


def brute_inverse(m):
    for n in enumerate_stable_morphisms(m.target, m.source):
        if compose_stable(n, m) == stable_identity(m.source) and compose_stable(m, n) == stable_identity(m.target):
            return n
    return None


def test_partial_map_validation():
    with pytest.raises(ValueError):
        partial(CHAIN2, CHAIN2, (1, 0))
    with pytest.raises(ValueError):
        PartialMap(CHAIN2, CHAIN2, ComplementedSub(CHAIN2, frozenset({0, 1})), (0, None))


def test_compose_partial_examples():
    cp, _, _ = coproduct(CHAIN2, PT)
    p = PartialMap.total(MonotoneMap(CHAIN2, cp, (0, 1)))
    assert compose_partial(identity_partial(cp), p) == p
    assert compose_partial(p, identity_partial(CHAIN2)) == p
    empty_q = partial(cp, CHAIN2, (None, None, None))
    assert compose_partial(empty_q, p).domain.members == frozenset()
    q = partial(cp, CHAIN2, (None, None, 0))
    r = compose_partial(q, p)
    assert r.domain.members == {i for i in range(2) if p.map[i] in q.domain.members} == set()
    with pytest.raises(BoundaryError):
        compose_partial(p, p)


def test_normalize_examples():
    d = FinPreorder.discrete(3)
    assert normalize(identity_partial(d)).kept == frozenset()
    m = normalize(identity_partial(CHAIN2))
    assert m.kept == {0, 1} and m.map == (0, 1)
    cp, _, _ = coproduct(CHAIN2, PT)
    m = normalize(identity_partial(cp))
    assert m.kept == set(range(3)) - constant_components(cp, (0, 1, 2)) == {0, 1}


def test_equivalent_examples():
    p = identity_partial(CHAIN2)
    assert equivalent(p, p)
    const = PartialMap.total(MonotoneMap(CHAIN2, CHAIN2, (1, 1)))
    empty = partial(CHAIN2, CHAIN2, (None, None))
    assert equivalent(const, empty)
    src, _, _ = coproduct(CHAIN2, coproduct(PT, PT)[0])
    tgt = FinPreorder.chain(3)
    p1 = partial(src, tgt, (0, 1, 2, None))
    p2 = partial(src, tgt, (0, 1, None, 0))
    assert equivalent(p1, p2)
    diagram = find_congruence_diagram(p1, p2)
    assert diagram is not None and diagram.common == {0, 1}


def test_congruence_diagram_examples():
    p = identity_partial(CHAIN2)
    assert find_congruence_diagram(p, p).common == {0, 1}
    z = partial(CHAIN2, CHAIN2, (None, None))
    assert find_congruence_diagram(z, z).common == frozenset()
    assert find_congruence_diagram(p, z) is None


def test_sigma_examples():
    f = MonotoneMap(CHAIN2, CHAIN2, (0, 0))
    assert is_trivial_morphism(f) and sigma(f) == zero(CHAIN2, CHAIN2)
    assert sigma(identity(CHAIN2)) == stable_identity(CHAIN2)
    _, pi = torsion_free_part(CYCLE_THEN_UP)
    m = sigma(pi)
    assert m.kept == {0, 1, 2} and m.map == pi.map


def test_zero_and_composition():
    m = sigma(identity(CHAIN2))
    z = zero(CHAIN2, CHAIN2)
    assert compose_stable(z, m) == z and compose_stable(m, z) == z and is_zero(z)
    s = canonical_ses(CYCLE_THEN_UP)
    assert is_zero(compose_stable(sigma(s.right), sigma(s.left)))
    with pytest.raises(BoundaryError):
        compose_stable(m, sigma(identity(PT)))


def test_stable_coproduct_examples():
    za, zb = zero(CHAIN2, PT), zero(PT, CHAIN2)
    assert is_zero(stable_coproduct(za, zb))
    f = MonotoneMap(CHAIN2, FinPreorder.chain(3), (0, 2))
    g = identity(CHAIN2)
    assert stable_coproduct(sigma(f), sigma(g)) == sigma(coproduct_map(f, g))


def test_injections_jointly_epi():
    a, b = CHAIN2, FinPreorder.full(2)
    s, ia, ib = coproduct_injections(a, b)
    for y in probe_objects(3):
        seen = {}
        for x in enumerate_stable_morphisms(s, y):
            key = (compose_stable(x, ia), compose_stable(x, ib))
            assert key not in seen
            seen[key] = x


def test_stable_kernel_examples():
    _, pi = torsion_free_part(CYCLE_THEN_UP)
    k_obj, k = stable_kernel(sigma(pi))
    assert k_obj == canonical_ses(CYCLE_THEN_UP).left.dom
    assert k == sigma(canonical_ses(CYCLE_THEN_UP).left)
    k_obj, k = stable_kernel(zero(CHAIN2, PT))
    assert k_obj == CHAIN2 and k == stable_identity(CHAIN2)
    k_obj, k = stable_kernel(stable_identity(CHAIN2))
    assert k_obj == FinPreorder.discrete(2) and is_zero(k)
    assert is_kernel(k, stable_identity(CHAIN2))


def test_stable_cokernel_examples():
    s = canonical_ses(CYCLE_THEN_UP)
    q_obj, q = stable_cokernel(sigma(s.left))
    assert q_obj == s.right.cod and q == sigma(s.right)
    q_obj, q = stable_cokernel(stable_identity(CHAIN2))
    assert q_obj.size == 1 and is_zero(q)
    q_obj, q = stable_cokernel(zero(PT, CHAIN2))
    assert q_obj == CHAIN2 and q == stable_identity(CHAIN2)
    assert is_cokernel(q, zero(PT, CHAIN2))


def test_preuniversal_examples():
    b1, b2 = CHAIN2, PT
    target, s1, s2 = coproduct(b1, b2)
    split = preuniversal_decomposition(sigma(s1), b1, b2)
    assert split.first.members == {0, 1} and split.second.members == frozenset()
    split = preuniversal_decomposition(zero(CHAIN2, target), b1, b2)
    assert split.first.members == {0, 1} and split.second.members == frozenset()
    # one chain component into B1, a second chain component into the point block
    src, _, _ = coproduct(CHAIN2, FinPreorder.chain(3))
    big_t, t1, t2 = coproduct(b1, FinPreorder.chain(2))
    m = sigma(MonotoneMap(src, big_t, (0, 1, 2, 2, 3)))
    split = preuniversal_decomposition(m, b1, FinPreorder.chain(2))
    assert split.first.members == {0, 1} and split.second.members == {2, 3, 4}
    with pytest.raises(BoundaryError):
        preuniversal_decomposition(m, b1, PT)


def test_short_exact_examples():
    assert is_short_exact(*map(sigma, (canonical_ses(CYCLE_THEN_UP).left, canonical_ses(CYCLE_THEN_UP).right)))
    ident = stable_identity(CHAIN2)
    assert not is_short_exact(ident, ident)
    rng = random.Random(3)
    for _ in range(10):
        a, b = gen_preorder(rng.randint(1, 3), rng), gen_preorder(rng.randint(1, 3), rng)
        m = gen_stable_morphism(a, b, rng)
        _, k = stable_kernel(m)
        _, c = stable_cokernel(k)
        assert is_short_exact(k, c)


def test_hom_set_examples():
    d = FinPreorder.discrete(2)
    for b in probe_objects(2):
        assert list(enumerate_stable_morphisms(d, b)) == [zero(d, b)]
        assert list(enumerate_stable_morphisms(FinPreorder.discrete(0), b)) == [zero(FinPreorder.discrete(0), b)]
    homs = set(enumerate_stable_morphisms(CHAIN2, CHAIN2))
    assert homs == {zero(CHAIN2, CHAIN2), stable_identity(CHAIN2)}


def test_hom_sets_against_brute_force():
    for a in probe_objects(3):
        for b in probe_objects(2):
            expected = set()
            comps = components(a)
            for k in range(1 << len(comps)):
                members = set().union(*[c for i, c in enumerate(comps) if k >> i & 1])
                sub_vals = {}
                order = sorted(members)
                for img in product(range(b.size), repeat=len(order)):
                    raw = [None] * a.size
                    for i, v in zip(order, img):
                        raw[i] = v
                    raw = tuple(raw)
                    monotone = all((raw[i], raw[j]) in b.rel for i, j in a.rel if i in members)
                    if monotone and not (members & constant_components(a, raw)):
                        sub_vals[raw] = True
                for raw in sub_vals:
                    expected.add(StableMorphism(a, b, frozenset(members), raw))
            assert set(enumerate_stable_morphisms(a, b)) == expected


def test_stable_inverse_against_brute_force():
    objs = probe_objects(2) + tuple(gen_preorder(3, s) for s in range(6))
    for a in objs:
        for b in objs:
            for m in enumerate_stable_morphisms(a, b):
                assert stable_inverse(m) == brute_inverse(m)


@settings(max_examples=60, deadline=None)
@given(preorders(4), preorders(4), st.integers(0, 2**32 - 1))
def test_normalize_properties(a, b, seed):
    p = gen_partial_map(a, b, seed)
    m = normalize(p)
    assert normalize(m.as_partial()) == m
    assert normalize(compose_partial(identity_partial(b), p)) == m
    assert normalize(compose_partial(p, identity_partial(a))) == m
    p2 = gen_equivalent(p, seed + 1)
    assert equivalent(p, p2)
    assert (find_congruence_diagram(p, p2) is not None) == equivalent(p, p2)


@settings(max_examples=40, deadline=None)
@given(preorders(3), preorders(3), preorders(3), st.integers(0, 2**32 - 1))
def test_composition_well_defined(a, b, c, seed):
    rng = random.Random(seed)
    p, q = gen_partial_map(a, b, rng), gen_partial_map(b, c, rng)
    p2, q2 = gen_equivalent(p, rng), gen_equivalent(q, rng)
    assert equivalent(compose_partial(q, p), compose_partial(q2, p2))


@settings(max_examples=30, deadline=None)
@given(preorders(3), preorders(3))
def test_sigma_zero_iff_trivial_and_mono(a, b):
    for img in brute_monotone(a, b)[:8]:
        f = MonotoneMap(a, b, img)
        assert is_zero(sigma(f)) == is_trivial_morphism(f)
        if len(set(img)) == len(img):
            assert is_mono(sigma(f), bound=2)
