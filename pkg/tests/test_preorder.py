import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import fixpoint_closure, matrix_closure, preorders, union_find_blocks
from preordstab.preorder import (
    BoundaryError,
    ComplementedSub,
    FinPreorder,
    MonotoneMap,
    NotComplemented,
    PreorderError,
    Relation,
    comparability_components,
    complemented_sub,
    compose,
    coproduct,
    from_generators,
    identity,
    induced,
    inverse_image,
    is_discrete,
    is_equivalence,
    is_partial_order,
    map_equal,
    meet,
    opposite,
    transitive_closure,
    whole,
)

CHAIN2 = FinPreorder.chain(2)


def chain_plus_point():
    return from_generators(3, [(0, 1)])


def test_from_generators_examples():
    p = from_generators(3, [(0, 1), (1, 2)])
    assert p.rel == fixpoint_closure(3, {(0, 1), (1, 2)})
    assert p.rel == {(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)}
    assert from_generators(2, []) == FinPreorder.discrete(2)
    assert from_generators(1, [(0, 0)]).rel == {(0, 0)}


def test_constructor_rejects_non_preorders():
    with pytest.raises(PreorderError):
        FinPreorder.from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)])
    with pytest.raises(PreorderError):
        FinPreorder.from_pairs(2, [(0, 1)])
    with pytest.raises(PreorderError):
        from_generators(2, [(0, 5)])


def test_transitive_closure_examples():
    r = Relation(3, frozenset({(0, 1), (1, 2)}))
    assert transitive_closure(r).pairs == matrix_closure(3, {(0, 1), (1, 2)})
    assert transitive_closure(r).pairs == {(0, 1), (1, 2), (0, 2)}
    t = Relation(2, frozenset({(0, 1), (1, 1)}))
    assert transitive_closure(t) == t
    assert transitive_closure(Relation(4, frozenset())).pairs == frozenset()


def test_closure_exhaustive_small():
    for n in range(4):
        cells = [(i, j) for i in range(n) for j in range(n)]
        for picks in product((0, 1), repeat=len(cells)):
            pairs = {c for c, on in zip(cells, picks) if on}
            assert transitive_closure(Relation(n, frozenset(pairs))).pairs == matrix_closure(n, pairs)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 6).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0)))))))
def test_closure_random_up_to_six(case):
    n, pairs = case
    if n == 0:
        pairs = set()
    closed = transitive_closure(Relation(n, frozenset(pairs)))
    assert closed.pairs == matrix_closure(n, pairs)
    assert transitive_closure(closed) == closed
    assert closed.pairs >= pairs


def test_opposite_meet_examples():
    assert opposite(CHAIN2).rel == {(0, 0), (1, 1), (1, 0)}
    full = FinPreorder.full(3)
    assert opposite(full) == full
    assert opposite(FinPreorder.discrete(3)) == FinPreorder.discrete(3)
    assert meet(CHAIN2, opposite(CHAIN2)) == FinPreorder.discrete(2)
    assert meet(CHAIN2, CHAIN2) == CHAIN2
    rev = from_generators(2, [(1, 0)])
    assert meet(CHAIN2, rev).rel == CHAIN2.rel & rev.rel == {(0, 0), (1, 1)}
    with pytest.raises(BoundaryError):
        meet(CHAIN2, FinPreorder.chain(3))


def test_predicates():
    full = FinPreorder.full(2)
    assert is_equivalence(full) and not is_partial_order(full)
    assert is_partial_order(CHAIN2) and not is_equivalence(CHAIN2)
    d = FinPreorder.discrete(3)
    assert is_equivalence(d) and is_partial_order(d) and is_discrete(d)


def test_components_examples():
    assert comparability_components(chain_plus_point()) == union_find_blocks(3, {(0, 1)})
    assert comparability_components(chain_plus_point()) == [frozenset({0, 1}), frozenset({2})]
    assert comparability_components(FinPreorder.discrete(3)) == [frozenset({i}) for i in range(3)]
    assert comparability_components(FinPreorder.full(3)) == [frozenset({0, 1, 2})]


def test_complemented_sub_examples():
    p = chain_plus_point()
    s = complemented_sub(p, {2})
    assert s.complement.members == {0, 1}
    assert whole(p).complement.members == frozenset()
    with pytest.raises(NotComplemented):
        complemented_sub(CHAIN2, {0})


def test_coproduct_examples():
    c, sa, sb = coproduct(CHAIN2, FinPreorder.discrete(1))
    assert c.size == 3 and comparability_components(c) == [frozenset({0, 1}), frozenset({2})]
    empty = FinPreorder.discrete(0)
    c0, _, inj = coproduct(empty, CHAIN2)
    assert c0 == CHAIN2 and inj.map == (0, 1)
    a, b = FinPreorder.full(2), FinPreorder.chain(3)
    assert coproduct(a, b)[0].size == 5


def test_inverse_image_examples():
    p = chain_plus_point()
    s = complemented_sub(p, {2})
    const = MonotoneMap(CHAIN2, p, (0, 0))
    assert inverse_image(const, s).members == frozenset()
    assert inverse_image(identity(p), s) == s
    incl = MonotoneMap(CHAIN2, p, (0, 1))
    assert inverse_image(incl, s).members == {i for i in range(2) if incl.map[i] in s.members} == set()


def test_compose_and_identity():
    f = MonotoneMap(CHAIN2, FinPreorder.chain(3), (0, 1))
    g = MonotoneMap(FinPreorder.chain(3), FinPreorder.chain(4), (0, 1, 2))
    assert map_equal(compose(identity(f.cod), f), f)
    assert map_equal(compose(f, identity(f.dom)), f)
    assert compose(g, f).map == (0, 1)
    with pytest.raises(BoundaryError):
        compose(f, g)
    with pytest.raises(PreorderError):
        MonotoneMap(CHAIN2, CHAIN2, (1, 0))


@settings(max_examples=100, deadline=None)
@given(preorders(), st.data())
def test_complemented_iff_union_of_components(a, data):
    members = data.draw(st.sets(st.integers(0, max(a.size - 1, 0)))) if a.size else set()
    blocks = union_find_blocks(a.size, a.rel)
    is_union = all(b <= members or not (b & members) for b in blocks)
    try:
        complemented_sub(a, members)
        assert is_union
    except NotComplemented:
        assert not is_union


@settings(max_examples=100, deadline=None)
@given(preorders(4), preorders(4))
def test_coproduct_disjoint(a, b):
    c, sa, sb = coproduct(a, b)
    left = {(sa.map[i], sa.map[j]) for i, j in a.rel}
    right = {(sb.map[i], sb.map[j]) for i, j in b.rel}
    assert not (left & right) and left | right == c.rel
    ia = complemented_sub(c, sa.map)
    assert ia.complement.members == frozenset(sb.map)


@settings(max_examples=100, deadline=None)
@given(preorders(), st.data())
def test_constructed_values_are_preorders(a, data):
    for p in (opposite(a), meet(a, opposite(a))):
        assert fixpoint_closure(p.size, p.rel) == p.rel
    if a.size:
        members = data.draw(st.sets(st.integers(0, a.size - 1)))
        sub, incl = induced(a, members)
        assert fixpoint_closure(sub.size, sub.rel) == sub.rel
        assert all(a.leq(incl.map[i], incl.map[j]) for i, j in sub.rel)


@settings(max_examples=60, deadline=None)
@given(preorders(4), st.integers(0, 2**32 - 1))
def test_inverse_image_is_complemented(a, seed):
    from preordstab.laws.generators import gen_monotone_map, gen_preorder

    rng = random.Random(seed)
    b = gen_preorder(rng.randint(1, 4), rng)
    f = gen_monotone_map(a, b, rng)
    comps = comparability_components(b)
    members = set().union(*[c for c in comps if rng.random() < 0.5])
    s = inverse_image(f, complemented_sub(b, members))
    assert isinstance(s, ComplementedSub)
    assert s.members == {i for i in range(a.size) if f.map[i] in members}
