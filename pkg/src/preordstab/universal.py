"""Torsion theory functors out of preorders and their factorization through Stab.

A target category is described by a :class:`TargetCategoryOracle`.  Given a
coproduct-preserving torsion theory functor ``G`` into it, the induced functor
on the stable category sends ``<alpha, f>`` to the copairing ``[G(f), 0]``
read along the decomposition of the source into the domain of ``f`` and its
complement.  The ``verify_*`` functions check the properties of that functor
on finite samples.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .preorder import (
    FinPreorder,
    MonotoneMap,
    compose,
    copair,
    coproduct,
    identity,
    inverse_isomorphism,
    is_equivalence,
    is_partial_order,
)
from .pretorsion import DEFAULT_BOUND, canonical_ses, torsion_free_part, torsion_part
from .stable import (
    PartialMap,
    StableMorphism,
    compose_stable,
    coproduct_injections,
    enumerate_stable_morphisms,
    is_cokernel,
    is_kernel,
    is_short_exact,
    sigma,
    stable_cokernel,
    stable_copair,
    stable_identity,
    stable_inverse,
    stable_kernel,
    zero,
)


class MissingCapability(NotImplementedError):
    """The oracle does not provide a structure the operation needs."""


class TargetCategoryOracle(ABC):
    """A pointed category with finite coproducts and a torsion theory.

    Kernels and cokernels are optional; set ``has_kernels`` /
    ``has_cokernels`` when the corresponding methods are implemented.
    """

    has_kernels = False
    has_cokernels = False

    @abstractmethod
    def source(self, m): ...

    @abstractmethod
    def target(self, m): ...

    @abstractmethod
    def compose(self, g, f):
        """``g . f``."""

    @abstractmethod
    def identity(self, obj): ...

    @abstractmethod
    def zero(self, a, b): ...

    def equal(self, m1, m2) -> bool:
        return m1 == m2

    @abstractmethod
    def coproduct(self, a, b):
        """Return ``(a + b, inj_a, inj_b)``."""

    @abstractmethod
    def copair(self, f, g):
        """``[f, g] : source(f) + source(g) -> target``."""

    @abstractmethod
    def inverse(self, m):
        """The inverse of ``m`` or ``None`` when ``m`` is not invertible."""

    @abstractmethod
    def is_torsion(self, obj) -> bool: ...

    @abstractmethod
    def is_torsion_free(self, obj) -> bool: ...

    def kernel(self, m):
        raise MissingCapability("oracle has no kernels")

    def cokernel(self, m):
        raise MissingCapability("oracle has no cokernels")

    def is_kernel(self, k, m) -> bool:
        raise MissingCapability("oracle has no kernels")

    def is_cokernel(self, q, m) -> bool:
        raise MissingCapability("oracle has no cokernels")

    def is_short_exact(self, k, q) -> bool:
        return self.is_kernel(k, q) and self.is_cokernel(q, k)


class StabOracle(TargetCategoryOracle):
    """The stable category itself, with torsion theory (Eq, ParOrd)."""

    has_kernels = True
    has_cokernels = True

    def __init__(self, bound: int = DEFAULT_BOUND):
        self.bound = bound

    def source(self, m):
        return m.source

    def target(self, m):
        return m.target

    def compose(self, g, f):
        return compose_stable(g, f)

    def identity(self, obj):
        return stable_identity(obj)

    def zero(self, a, b):
        return zero(a, b)

    def coproduct(self, a, b):
        return coproduct_injections(a, b)

    def copair(self, f, g):
        return stable_copair(f, g)

    def inverse(self, m):
        return stable_inverse(m)

    def is_torsion(self, obj):
        return is_equivalence(obj)

    def is_torsion_free(self, obj):
        return is_partial_order(obj)

    def kernel(self, m):
        return stable_kernel(m)

    def cokernel(self, m):
        return stable_cokernel(m)

    def is_kernel(self, k, m):
        return is_kernel(k, m, self.bound)

    def is_cokernel(self, q, m):
        return is_cokernel(q, m, self.bound)


def stab_oracle(bound: int = DEFAULT_BOUND) -> StabOracle:
    return StabOracle(bound)


@dataclass(frozen=True)
class TTFunctor:
    """A functor from preorders into an oracle category."""

    oracle: TargetCategoryOracle
    on_object: Callable[[FinPreorder], Any]
    on_morphism: Callable[[MonotoneMap], Any]


def sigma_functor(bound: int = DEFAULT_BOUND) -> TTFunctor:
    """The canonical functor into the stable category."""
    return TTFunctor(stab_oracle(bound), lambda a: a, sigma)


@dataclass
class VerificationReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, passed: bool, witness) -> None:
        self.checked += 1
        if not passed:
            self.failures.append(witness)


def _comparison_inverse(g: TTFunctor, a: FinPreorder, b: FinPreorder):
    """Inverse of ``[G(s_a), G(s_b)] : G(a) + G(b) -> G(a + b)``."""
    ox = g.oracle
    _, sa, sb = coproduct(a, b)
    comparison = ox.copair(g.on_morphism(sa), g.on_morphism(sb))
    inv = ox.inverse(comparison)
    if inv is None:
        raise MissingCapability("functor does not preserve this coproduct")
    return comparison, inv


def induced_on_partial(g: TTFunctor, p: PartialMap):
    """``[G(f), 0]`` for the representative ``p = (alpha, f)``."""
    ox = g.oracle
    kept_obj, kept_incl = p.domain.induced()
    rest_obj, rest_incl = p.domain.complement.induced()
    f = p.restriction()
    # the source, rebuilt as (domain + complement), and the reindexing back
    reindex = inverse_isomorphism(copair(kept_incl, rest_incl))
    _, comp_inv = _comparison_inverse(g, kept_obj, rest_obj)
    body = ox.copair(g.on_morphism(f), ox.zero(g.on_object(rest_obj), g.on_object(p.target)))
    return ox.compose(body, ox.compose(comp_inv, g.on_morphism(reindex)))


def induced_on_morphism(g: TTFunctor, m: StableMorphism):
    return induced_on_partial(g, m.as_partial())


def verify_tt_functor(
    g: TTFunctor, objects: Iterable[FinPreorder], maps: Iterable[tuple[MonotoneMap, MonotoneMap]] = ()
) -> VerificationReport:
    """Sampled check that ``g`` is a coproduct-preserving torsion theory functor.

    ``maps`` holds composable pairs ``(f, h)`` with ``h . f`` defined.
    """
    ox = g.oracle
    rep = VerificationReport("tt-functor")
    objects = list(objects)
    for a in objects:
        rep.record(ox.equal(g.on_morphism(identity(a)), ox.identity(g.on_object(a))), ("identity", a))
        t, i = torsion_part(a)
        fr, p = torsion_free_part(a)
        rep.record(ox.is_torsion(g.on_object(t)), ("torsion", a))
        rep.record(ox.is_torsion_free(g.on_object(fr)), ("torsion-free", a))
        rep.record(ox.is_short_exact(g.on_morphism(i), g.on_morphism(p)), ("ses", a))
    for a in objects:
        for b in objects[:4]:
            comparison, inv = _comparison_inverse(g, a, b)
            src = ox.source(comparison)
            tgt = ox.target(comparison)
            ok = ox.equal(ox.compose(inv, comparison), ox.identity(src)) and ox.equal(
                ox.compose(comparison, inv), ox.identity(tgt)
            )
            rep.record(ok, ("coproduct", a, b))
    for f, h in maps:
        lhs = g.on_morphism(compose(h, f))
        rhs = ox.compose(g.on_morphism(h), g.on_morphism(f))
        rep.record(ox.equal(lhs, rhs), ("functoriality", f, h))
    return rep


def verify_well_defined(g: TTFunctor, p1: PartialMap, p2: PartialMap) -> bool:
    return g.oracle.equal(induced_on_partial(g, p1), induced_on_partial(g, p2))


def verify_factorization(g: TTFunctor, sample: Iterable[MonotoneMap]) -> VerificationReport:
    rep = VerificationReport("factorization")
    for f in sample:
        rep.record(g.oracle.equal(induced_on_morphism(g, sigma(f)), g.on_morphism(f)), f)
    return rep


def verify_induced_functoriality(g: TTFunctor, m1: StableMorphism, m2: StableMorphism) -> bool:
    """``G(m2 . m1) == G(m2) . G(m1)`` for the induced functor."""
    ox = g.oracle
    whole = induced_on_morphism(g, compose_stable(m2, m1))
    return ox.equal(whole, ox.compose(induced_on_morphism(g, m2), induced_on_morphism(g, m1)))


def verify_induced_coproducts(g: TTFunctor, a: FinPreorder, b: FinPreorder) -> bool:
    """The induced functor sends the stable coproduct of ``a, b`` to a coproduct."""
    ox = g.oracle
    _, sa, sb = coproduct_injections(a, b)
    comparison = ox.copair(induced_on_morphism(g, sa), induced_on_morphism(g, sb))
    inv = ox.inverse(comparison)
    if inv is None:
        return False
    return ox.equal(ox.compose(inv, comparison), ox.identity(ox.source(comparison))) and ox.equal(
        ox.compose(comparison, inv), ox.identity(ox.target(comparison))
    )


def verify_induced_tt(g: TTFunctor, a: FinPreorder) -> bool:
    """Torsion-theory-functor conditions for the induced functor at ``a``."""
    ox = g.oracle
    s = canonical_ses(a)
    t_obj, f_obj = s.left.dom, s.right.cod
    if not (ox.is_torsion(g.on_object(t_obj)) and ox.is_torsion_free(g.on_object(f_obj))):
        return False
    left = induced_on_morphism(g, sigma(s.left))
    right = induced_on_morphism(g, sigma(s.right))
    return ox.is_short_exact(left, right)


def verify_preservation(
    g: TTFunctor, sample: Iterable[StableMorphism], objects: Iterable[FinPreorder] = ()
) -> VerificationReport:
    """Kernels, cokernels and canonical short exact sequences are preserved."""
    ox = g.oracle
    if not (ox.has_kernels and ox.has_cokernels):
        raise MissingCapability("preservation needs kernels and cokernels in the oracle")
    rep = VerificationReport("preservation")
    for m in sample:
        gm = induced_on_morphism(g, m)
        _, k = stable_kernel(m)
        _, q = stable_cokernel(m)
        rep.record(ox.is_kernel(induced_on_morphism(g, k), gm), ("kernel", m))
        rep.record(ox.is_cokernel(induced_on_morphism(g, q), gm), ("cokernel", m))
    for a in objects:
        rep.record(verify_induced_tt(g, a), ("ses", a))
    return rep


def forced_values_agree(g: TTFunctor, a: FinPreorder, b: FinPreorder) -> bool:
    """With ``g`` the canonical functor, ``[G(f), 0]`` reproduces every morphism ``a -> b``."""
    return all(g.oracle.equal(induced_on_morphism(g, m), m) for m in enumerate_stable_morphisms(a, b))
