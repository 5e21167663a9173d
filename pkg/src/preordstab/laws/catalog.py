"""The built-in laws.  Importing this module registers them."""

from __future__ import annotations

from ..enumeration import monotone_maps, probe_objects
from ..preorder import (
    MonotoneMap,
    compose,
    coproduct,
    coproduct_map,
    identity,
    is_equivalence,
    is_isomorphism,
    is_partial_order,
)
from ..pretorsion import (
    ZExactSequence,
    all_maps_trivial,
    canonical_ses,
    is_trivial_morphism,
    is_z_cokernel,
    is_z_exact,
    is_z_kernel,
    torsion_free_part,
    torsion_part,
    z_cokernel,
    z_kernel,
)
from ..stable import (
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
    kernel_preimage,
    normalize,
    preuniversal_decomposition,
    sigma,
    stable_cokernel,
    stable_copair,
    stable_coproduct,
    stable_identity,
    stable_inverse,
    stable_kernel,
    zero,
)
from ..universal import (
    forced_values_agree,
    induced_on_morphism,
    sigma_functor,
    verify_induced_coproducts,
    verify_induced_functoriality,
    verify_induced_tt,
    verify_preservation,
    verify_well_defined,
)
from .generators import gen_equivalent, gen_monotone_map, gen_partial_map, gen_stable_morphism
from .suite import law

MAP_SAMPLE = 64


def _maps(a, b, rng, limit=MAP_SAMPLE):
    found = monotone_maps(a, b)
    if len(found) > limit:
        found = rng.sample(found, limit)
    return [MonotoneMap._trusted(a, b, m) for m in found]


def _maps_exist(*chain):
    # a map into the empty preorder exists only out of the empty preorder
    return all(not a.size or b.size for a, b in zip(chain, chain[1:]))


# -- pretorsion theory in preorders ---------------------------------------


@law("pretorsion-ses", 1, "the canonical sequence of every preorder is Z-exact")
def _pretorsion_ses(objs, rng, cfg):
    (a,) = objs
    s = canonical_ses(a)
    return is_equivalence(s.left.dom) and is_partial_order(s.right.cod) and is_z_exact(s, cfg.bound)


@law("pretorsion-trivial", 2, "maps from an equivalence relation to a partial order are trivial")
def _pretorsion_trivial(objs, rng, cfg):
    t, _ = torsion_part(objs[0])
    f, _ = torsion_free_part(objs[1])
    return all_maps_trivial(t, f)


@law("trivial-ideal", 3, "trivial morphisms form an ideal")
def _trivial_ideal(objs, rng, cfg):
    a, b, c = objs
    if not _maps_exist(a, b, c):
        return None
    for f in _maps(a, b, rng, 16):
        for g in _maps(b, c, rng, 16):
            if (is_trivial_morphism(f) or is_trivial_morphism(g)) and not is_trivial_morphism(compose(g, f)):
                return False
    return True


@law("z-kernel", 2, "the restricted relation is a Z-kernel")
def _z_kernel(objs, rng, cfg):
    a, b = objs
    if not _maps_exist(a, b):
        return None
    f = gen_monotone_map(a, b, rng)
    return is_z_kernel(z_kernel(f)[1], f, cfg.bound)


@law("z-cokernel", 2, "the closed quotient is a Z-cokernel")
def _z_cokernel(objs, rng, cfg):
    a, b = objs
    if not _maps_exist(a, b):
        return None
    f = gen_monotone_map(a, b, rng)
    return is_z_cokernel(z_cokernel(f)[1], f, cfg.bound)


# -- the stable category --------------------------------------------------


@law("zero-morphisms", 2, "a stable morphism is zero iff its map is trivial")
def _zero_morphisms(objs, rng, cfg):
    a, b = objs
    for f in _maps(a, b, rng):
        if is_zero(sigma(f)) != is_trivial_morphism(f):
            return False
    for _ in range(8):
        p = gen_partial_map(a, b, rng)
        if is_zero(normalize(p)) != is_trivial_morphism(p.restriction()):
            return False
    return True


@law("justification", 2, "<alpha,f> restricts to Sigma(f) on the domain and to 0 on the complement")
def _justification(objs, rng, cfg):
    a, b = objs
    for _ in range(4):
        p = gen_partial_map(a, b, rng)
        m = normalize(p)
        _, incl = p.domain.induced()
        _, incl_c = p.domain.complement.induced()
        if compose_stable(m, sigma(incl)) != sigma(p.restriction()):
            return False
        if not is_zero(compose_stable(m, sigma(incl_c))):
            return False
    return True


@law("congruence", 2, "normal-form equality agrees with congruence-diagram search")
def _congruence(objs, rng, cfg):
    a, b = objs
    for _ in range(8):
        p1 = gen_partial_map(a, b, rng)
        for p2 in (gen_partial_map(a, b, rng), gen_equivalent(p1, rng)):
            if equivalent(p1, p2) != (find_congruence_diagram(p1, p2) is not None):
                return False
    return True


@law("normal-form", 2, "normalization is idempotent and stable under identities")
def _normal_form(objs, rng, cfg):
    a, b = objs
    p = gen_partial_map(a, b, rng)
    m = normalize(p)
    return (
        normalize(m.as_partial()) == m
        and normalize(compose_partial(identity_partial(b), p)) == m
        and normalize(compose_partial(p, identity_partial(a))) == m
    )


@law("stab-category", 4, "composition in Stab is associative and unital")
def _stab_category(objs, rng, cfg):
    a, b, c, d = objs
    m1 = gen_stable_morphism(a, b, rng)
    m2 = gen_stable_morphism(b, c, rng)
    m3 = gen_stable_morphism(c, d, rng)
    assoc = compose_stable(m3, compose_stable(m2, m1)) == compose_stable(compose_stable(m3, m2), m1)
    units = compose_stable(stable_identity(b), m1) == m1 == compose_stable(m1, stable_identity(a))
    return assoc and units


@law("stab-well-defined", 3, "composition respects the congruence")
def _stab_well_defined(objs, rng, cfg):
    a, b, c = objs
    p = gen_partial_map(a, b, rng)
    q = gen_partial_map(b, c, rng)
    p2, q2 = gen_equivalent(p, rng), gen_equivalent(q, rng)
    return equivalent(compose_partial(q, p), compose_partial(q2, p2))


@law("sigma-functor", 3, "Sigma preserves identities and composition")
def _sigma_functor(objs, rng, cfg):
    a, b, c = objs
    if not _maps_exist(a, b, c):
        return None
    f = gen_monotone_map(a, b, rng)
    g = gen_monotone_map(b, c, rng)
    return sigma(compose(g, f)) == compose_stable(sigma(g), sigma(f)) and sigma(identity(a)) == stable_identity(a)


@law("sigma-coproducts", 2, "Sigma preserves binary coproducts")
def _sigma_coproducts(objs, rng, cfg):
    a, b = objs
    s, ia, ib = coproduct_injections(a, b)
    comparison = stable_copair(ia, ib)
    inv = stable_inverse(comparison)
    if inv is None:
        return False
    f = gen_monotone_map(a, a, rng) if a.size else identity(a)
    g = gen_monotone_map(b, b, rng) if b.size else identity(b)
    return (
        compose_stable(inv, comparison) == stable_identity(s)
        and compose_stable(comparison, inv) == stable_identity(s)
        and stable_coproduct(sigma(f), sigma(g)) == sigma(coproduct_map(f, g))
    )


@law("sigma-mono", 2, "Sigma sends injective monotone maps to monomorphisms")
def _sigma_mono(objs, rng, cfg):
    a, b = objs
    monos = [m for m in monotone_maps(a, b) if len(set(m)) == a.size] if a.size <= b.size else []
    _, sa, _ = coproduct(a, b)
    candidates = [sa] + [MonotoneMap._trusted(a, b, m) for m in rng.sample(monos, min(2, len(monos)))]
    return all(is_mono(sigma(f), cfg.bound) for f in candidates)


@law("stab-torsion", 2, "every stable morphism from Eq to ParOrd is zero")
def _stab_torsion(objs, rng, cfg):
    t, _ = torsion_part(objs[0])
    f, _ = torsion_free_part(objs[1])
    return all(is_zero(m) for m in enumerate_stable_morphisms(t, f))


@law("stab-disjoint", 2, "coproducts in Stab are disjoint")
def _stab_disjoint(objs, rng, cfg):
    a, b = objs
    _, ia, ib = coproduct_injections(a, b)
    for t in probe_objects(cfg.bound):
        left = {compose_stable(ia, u) for u in enumerate_stable_morphisms(t, a)}
        right = {compose_stable(ib, v) for v in enumerate_stable_morphisms(t, b)}
        if any(not is_zero(m) for m in left & right):
            return False
    return True


@law("preuniversal", 3, "pre-universal decomposition squares commute")
def _preuniversal(objs, rng, cfg):
    c, a, b = objs
    target, _, _ = coproduct(a, b)
    _, ia, ib = coproduct_injections(a, b)
    m = gen_stable_morphism(c, target, rng)
    split = preuniversal_decomposition(m, a, b)
    return (
        split.first.members | split.second.members == frozenset(range(c.size))
        and not split.first.members & split.second.members
        and compose_stable(m, split.first_injection) == compose_stable(ia, split.first_map)
        and compose_stable(m, split.second_injection) == compose_stable(ib, split.second_map)
    )


@law("sum-of-kernels", 4, "the coproduct of kernels is the kernel of the coproduct")
def _sum_of_kernels(objs, rng, cfg):
    a, b, c, d = objs
    m1 = gen_stable_morphism(a, b, rng)
    m2 = gen_stable_morphism(c, d, rng)
    both = stable_coproduct(m1, m2)
    summed = stable_coproduct(stable_kernel(m1)[1], stable_kernel(m2)[1])
    # reindex the direct kernel of m1 + m2 onto the blockwise one
    direct = kernel_preimage(both)
    blockwise = coproduct_map(kernel_preimage(m1), kernel_preimage(m2))
    where = {x: i for i, x in enumerate(direct.map)}
    phi = MonotoneMap(blockwise.dom, direct.dom, [where[x] for x in blockwise.map])
    return (
        is_isomorphism(phi)
        and compose_stable(sigma(direct), sigma(phi)) == summed
        and is_kernel(summed, both, cfg.bound)
    )


@law("stab-kernel", 2, "the kernel formula satisfies the kernel universal property")
def _stab_kernel(objs, rng, cfg):
    m = gen_stable_morphism(*objs, rng)
    _, k = stable_kernel(m)
    return is_kernel(k, m, cfg.bound)


@law("stab-cokernel", 2, "the cokernel is the image of the Z-cokernel")
def _stab_cokernel(objs, rng, cfg):
    m = gen_stable_morphism(*objs, rng)
    _, q = stable_cokernel(m)
    return q == sigma(z_cokernel(m.as_partial().restriction())[1]) and is_cokernel(q, m, cfg.bound)


@law("stab-ses", 1, "Sigma sends canonical sequences to short exact sequences")
def _stab_ses(objs, rng, cfg):
    s = canonical_ses(objs[0])
    return is_short_exact(sigma(s.left), sigma(s.right), cfg.bound)


@law("stab-ses-converse", 2, "kernel/cokernel pairs in Stab come from Z-exact sequences")
def _stab_ses_converse(objs, rng, cfg):
    m = gen_stable_morphism(*objs, rng)
    n = kernel_preimage(m)
    k = sigma(n)
    _, q = stable_cokernel(k)
    _, q_pre = z_cokernel(n)
    return (
        is_short_exact(k, q, cfg.bound)
        and sigma(q_pre) == q
        and is_z_exact(ZExactSequence(n, q_pre), cfg.bound)
    )


# -- the induced functor --------------------------------------------------


@law("universal-well-defined", 2, "equivalent representatives have equal images")
def _universal_well_defined(objs, rng, cfg):
    g = sigma_functor(cfg.bound)
    p = gen_partial_map(*objs, rng)
    return verify_well_defined(g, p, gen_equivalent(p, rng))


@law("universal-factorization", 2, "the induced functor composed with Sigma is G")
def _universal_factorization(objs, rng, cfg):
    a, b = objs
    if not _maps_exist(a, b):
        return None
    g = sigma_functor(cfg.bound)
    f = gen_monotone_map(a, b, rng)
    return g.oracle.equal(induced_on_morphism(g, sigma(f)), g.on_morphism(f))


@law("universal-functoriality", 3, "the induced functor preserves composition")
def _universal_functoriality(objs, rng, cfg):
    a, b, c = objs
    g = sigma_functor(cfg.bound)
    return verify_induced_functoriality(g, gen_stable_morphism(a, b, rng), gen_stable_morphism(b, c, rng))


@law("universal-coproducts", 2, "the induced functor preserves binary coproducts")
def _universal_coproducts(objs, rng, cfg):
    return verify_induced_coproducts(sigma_functor(cfg.bound), *objs)


@law("universal-forced", 2, "[G(f), 0] reproduces every stable morphism")
def _universal_forced(objs, rng, cfg):
    return forced_values_agree(sigma_functor(cfg.bound), *objs)


@law("universal-tt", 1, "the induced functor is a torsion theory functor")
def _universal_tt(objs, rng, cfg):
    return verify_induced_tt(sigma_functor(cfg.bound), objs[0])


@law("universal-preservation", 2, "the induced functor preserves kernels and cokernels")
def _universal_preservation(objs, rng, cfg):
    g = sigma_functor(cfg.bound)
    return verify_preservation(g, [gen_stable_morphism(*objs, rng)]).ok


@law("zero-object", 1, "discrete preorders are zero objects of Stab")
def _zero_object(objs, rng, cfg):
    (a,) = objs
    hom_in = all(
        len(list(enumerate_stable_morphisms(t, a))) == 1 and len(list(enumerate_stable_morphisms(a, t))) == 1
        for t in probe_objects(min(cfg.bound, 2))
    )
    is_discrete_a = all(len({i for i in range(a.size) if a.leq(i, j) or a.leq(j, i)}) == 1 for j in range(a.size))
    return hom_in == is_discrete_a and (stable_identity(a) == zero(a, a)) == is_discrete_a
