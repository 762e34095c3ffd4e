"""Centric linking systems of groups and the abstract linking-system axioms."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import perm as P
from .cohomology import GModule, group_cohomology
from .fusion import (FusionSystem, centric_subgroups, fusion_of_group, is_saturated,
                     SaturationReport, _conj_table)
from .groups import (Group, center, centralizer, p_part, p_prime_centralizer, sylow,
                     transporter)
from .perm import Perm

Coset = tuple[Perm, ...]


class InternalError(AssertionError):
    pass


@dataclass(eq=False)
class LinkingSystem:
    """Objects are indices into ``F.subs``; a morphism is a sorted coset g C'_G(P)."""
    F: FusionSystem
    G: Group
    objects: list[int]
    complements: dict[int, frozenset[Perm]]
    morphisms: dict[tuple[int, int], frozenset[Coset]] = field(repr=False)

    def coset(self, P_idx: int, g: Perm) -> Coset:
        return tuple(sorted(P.mul(g, c) for c in self.complements[P_idx]))

    def compose(self, f: Coset, g: Coset, P_idx: int) -> Coset:
        """f o g where g starts at P."""
        return self.coset(P_idx, P.mul(f[0], g[0]))

    def delta(self, P_idx: int, x: Perm) -> Coset:
        return self.coset(P_idx, x)

    def pi(self, P_idx: int, f: Coset) -> tuple[Perm, ...]:
        return _conj_table(f[0], self.F.subs[P_idx])

    def mor(self, a: int, b: int) -> frozenset[Coset]:
        return self.morphisms.get((a, b), frozenset())


def is_p_centric(G: Group, H: Group, p: int) -> bool:
    return center(H).order == p_part(centralizer(G, H).order, p)


def linking_of_group(G: Group, S: Group, p: int) -> LinkingSystem:
    """L_S^c(G): transporter sets N_G(P, Q) modulo C'_G(P) on the p-centric P <= S."""
    if S.order != p_part(G.order, p) or not S.is_p_group(p):
        raise ValueError("S is not a Sylow subgroup of G")
    F = fusion_of_group(G, S, p)
    subs = F.subs
    objects = [i for i, H in enumerate(subs) if is_p_centric(G, H, p)]
    f_centric = {F.index_of(H) for H in centric_subgroups(F)}
    if set(objects) != f_centric:
        raise InternalError("p-centric and F-centric subgroups disagree")
    comps = {i: frozenset(p_prime_centralizer(G, subs[i], p).elements) for i in objects}
    L = LinkingSystem(F, G, objects, comps, {})
    for a in objects:
        for b in objects:
            cosets = {L.coset(a, g) for g in transporter(G, subs[a], subs[b])}
            if cosets:
                L.morphisms[(a, b)] = frozenset(cosets)
    return L


@dataclass
class AxiomResult:
    ok: bool
    counterexample: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_axiom_A(L: LinkingSystem) -> AxiomResult:
    """Z(P) acts freely on Mor(P, Q) and pi induces Mor(P, Q)/Z(P) = Hom_F(P, Q)."""
    F = L.F
    for a in L.objects:
        Z = center(F.subs[a]).elements
        for b in L.objects:
            mors = L.mor(a, b)
            homs = F.hom(a, b)
            fibers: dict[tuple, set[Coset]] = {}
            for f in mors:
                orbit = {L.compose(f, L.delta(a, z), a) for z in Z}
                if len(orbit) != len(Z) or not orbit <= mors:
                    return AxiomResult(False, ("free action", a, b, f))
                fibers.setdefault(L.pi(a, f), set()).add(f)
            if set(fibers) != set(homs):
                return AxiomResult(False, ("pi not onto Hom_F", a, b))
            for t, fib in fibers.items():
                if len(fib) != len(Z):
                    return AxiomResult(False, ("fiber size", a, b, t, len(fib), len(Z)))
    return AxiomResult(True)


def verify_axiom_B(L: LinkingSystem) -> AxiomResult:
    F = L.F
    for a in L.objects:
        H = F.subs[a]
        for g in H.elements:
            if L.pi(a, L.delta(a, g)) != _conj_table(g, H):
                return AxiomResult(False, ("pi(delta(g)) != c_g", a, g))
    return AxiomResult(True)


def verify_axiom_C(L: LinkingSystem) -> AxiomResult:
    F = L.F
    for (a, b), mors in L.morphisms.items():
        H = F.subs[a]
        for f in mors:
            image = dict(zip(H.elements, L.pi(a, f)))
            for g in H.elements:
                left = L.compose(f, L.delta(a, g), a)
                right = L.compose(L.delta(b, image[g]), f, a)
                if left != right:
                    return AxiomResult(False, ("square does not commute", a, b, f[0], g))
    return AxiomResult(True)


def verify_delta_injective(L: LinkingSystem) -> bool:
    F = L.F
    for a in L.objects:
        H = F.subs[a]
        if len({L.delta(a, g) for g in H.elements}) != H.order:
            return False
    return True


@dataclass
class PLFGReport:
    p: int
    sylow_order: int
    saturation: SaturationReport
    axiom_A: AxiomResult
    axiom_B: AxiomResult
    axiom_C: AxiomResult
    objects: int

    @property
    def ok(self) -> bool:
        return bool(self.saturation.saturated and self.axiom_A and self.axiom_B and self.axiom_C)


def verify_plfg(G: Group, p: int) -> PLFGReport:
    """Check that (S, F_S(G), L_S^c(G)) is a p-local finite group for S Sylow in G."""
    S = sylow(G, p)
    L = linking_of_group(G, S, p)
    return PLFGReport(p, S.order, is_saturated(L.F), verify_axiom_A(L), verify_axiom_B(L),
                      verify_axiom_C(L), len(L.objects))


def obstruction_vanishing(W: Group, S: Group, p: int | None = None) -> bool:
    """H^2(W; S) = 0 for W <= Aut(S) acting on abelian S."""
    if not S.is_abelian:
        raise ValueError("S must be abelian")
    if p is not None and W.order % p == 0:
        raise ValueError(f"p = {p} divides |W| = {W.order}")
    return group_cohomology(GModule.from_automorphisms(W, S), 2) == []
