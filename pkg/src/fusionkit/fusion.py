"""Fusion systems over a finite p-group, stored extensionally.

A morphism P -> Q is the tuple of images of ``P.elements`` (sorted) and the
morphism sets are keyed by pairs of indices into ``subgroups(S)``.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

from . import perm as P
from .groups import (Group, GroupHom, NotASubgroup, automorphism_group, automorphisms,
                     centralizer, is_prime, normalizer, p_part, subgroups)
from .perm import Perm

Table = tuple[Perm, ...]
BRUTE_FORCE_MAX_ORDER = 8


class MalformedFusionSystem(ValueError):
    pass


class InternalConsistencyError(AssertionError):
    pass


@dataclass(eq=False)
class FusionSystem:
    p: int
    S: Group
    homs: dict[tuple[int, int], frozenset[Table]]
    group: Group | None = None
    W: Group | None = None

    @cached_property
    def subs(self) -> list[Group]:
        return subgroups(self.S)

    @cached_property
    def _index(self) -> dict[tuple, int]:
        return {H.elements: i for i, H in enumerate(self.subs)}

    @property
    def top(self) -> int:
        return len(self.subs) - 1

    def index_of(self, H: Group | int | Iterable[Perm]) -> int:
        if isinstance(H, int):
            return H
        els = H.elements if isinstance(H, Group) else tuple(sorted(H))
        try:
            return self._index[els]
        except KeyError:
            raise NotASubgroup("not a subgroup of S") from None

    def hom(self, A, B) -> frozenset[Table]:
        return self.homs.get((self.index_of(A), self.index_of(B)), frozenset())

    def aut(self, A) -> frozenset[Table]:
        return self.hom(A, A)

    def image_index(self, table: Table) -> int:
        return self._index[tuple(sorted(set(table)))]

    def key(self) -> frozenset:
        """Identical keys iff identical morphism sets into S (hence everywhere)."""
        top = self.top
        return frozenset((i, t) for i in range(len(self.subs)) for t in self.homs.get((i, top), ()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FusionSystem):
            return NotImplemented
        return self.S == other.S and self.homs == other.homs

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        n = sum(len(v) for v in self.homs.values())
        return f"<FusionSystem p={self.p} |S|={self.S.order} morphisms={n}>"

    def with_homs(self, homs) -> "FusionSystem":
        return FusionSystem(self.p, self.S, dict(homs), self.group, self.W)


def _from_maps(p: int, S: Group, maps_from: dict[int, set[Table]], **kw) -> FusionSystem:
    subs = subgroups(S)
    sets = [H.element_set for H in subs]
    homs: dict[tuple[int, int], set[Table]] = {}
    for i, tabs in maps_from.items():
        for t in tabs:
            img = set(t)
            for j, Qs in enumerate(sets):
                if len(Qs) >= len(img) and img <= Qs:
                    homs.setdefault((i, j), set()).add(t)
    return FusionSystem(p, S, {k: frozenset(v) for k, v in sorted(homs.items())}, **kw)


def _conj_table(g: Perm, H: Group) -> Table:
    return tuple(P.conj(g, x) for x in H.elements)


def fusion_of_group(G: Group, S: Group, p: int) -> FusionSystem:
    """F_S(G): morphisms are the conjugations c_g with g P g^-1 <= Q."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not S.is_p_group(p):
        raise ValueError(f"S (order {S.order}) is not a {p}-group")
    if not S.element_set <= G.element_set:
        raise NotASubgroup("S is not contained in G")
    Ss = S.element_set
    maps_from = {}
    for i, H in enumerate(subgroups(S)):
        maps = set()
        for g in G.elements:
            t = _conj_table(g, H)
            if all(y in Ss for y in t):
                maps.add(t)
        maps_from[i] = maps
    return _from_maps(p, S, maps_from, group=G)


def _aut_images(W: Group, S: Group, H: Group) -> set[Table]:
    idx = S.index
    els = S.elements
    return {tuple(els[w[idx[x]]] for x in H.elements) for w in W.elements}


def fusion_abelian(W: Group, S: Group, p: int) -> FusionSystem:
    """F_S(W x| S) built directly: restrictions of elements of W <= Aut(S)."""
    if not S.is_abelian:
        raise ValueError("S must be abelian")
    if W.order % p == 0:
        raise ValueError(f"p = {p} divides |W| = {W.order}")
    if W.degree != S.order:
        raise ValueError("W must act on the element indices of S")
    maps_from = {i: _aut_images(W, S, H) for i, H in enumerate(subgroups(S))}
    return _from_maps(p, S, maps_from, W=W)


def inner_fusion(S: Group, p: int) -> FusionSystem:
    return fusion_of_group(S, S, p)


def transport(F: FusionSystem, f: GroupHom) -> FusionSystem:
    """Push F along an isomorphism f: S -> S'."""
    if not f.injective:
        raise ValueError("transport needs an isomorphism")
    S2 = f.image()
    fm = f.mapping
    maps_from = {}
    subs2 = subgroups(S2)
    idx2 = {H.elements: i for i, H in enumerate(subs2)}
    for (i, j), tabs in F.homs.items():
        if j != F.top:
            continue
        H = F.subs[i]
        H2 = tuple(sorted(fm[x] for x in H.elements))
        order = sorted(range(len(H.elements)), key=lambda k: fm[H.elements[k]])
        maps_from[idx2[H2]] = {tuple(fm[t[k]] for k in order) for t in tabs}
    return _from_maps(F.p, S2, maps_from, group=F.group, W=F.W)


# ---------------------------------------------------------------------------
# axioms

def _apply(H: Group, t: Table) -> dict[Perm, Perm]:
    return dict(zip(H.elements, t))


def _is_injective_hom(H: Group, t: Table) -> bool:
    if len(set(t)) != len(t):
        return False
    f = _apply(H, t)
    return all(f[P.mul(x, y)] == P.mul(f[x], f[y]) for x in H.gens for y in H.elements)


def _restrict(H: Group, t: Table, K: Group) -> Table:
    f = _apply(H, t)
    return tuple(f[x] for x in K.elements)


def _compose(H: Group, t: Table, K: Group, u: Table) -> Table:
    """(u on K) o (t on H); requires t(H) <= K."""
    g = _apply(K, u)
    return tuple(g[y] for y in t)


def _inverse(H: Group, t: Table) -> Table:
    inv = {v: x for x, v in zip(H.elements, t)}
    return tuple(inv[y] for y in sorted(t))


def is_fusion_system(F: FusionSystem) -> tuple[bool, list[tuple]]:
    """Check the fusion system axioms; returns (ok, violations)."""
    subs = F.subs
    n = len(subs)
    sets = [H.element_set for H in subs]
    bad: list[tuple] = []
    for i in range(n):
        H = subs[i]
        if H.elements not in F.hom(i, i):
            bad.append(("identity", i))
        for j in range(n):
            homs = F.homs.get((i, j), frozenset())
            inner = {_conj_table(s, H) for s in F.S.elements
                     if all(P.conj(s, x) in sets[j] for x in H.gens)}
            if not inner <= homs:
                bad.append(("a: missing Hom_S", i, j))
            for t in homs:
                if len(t) != len(H.elements) or not set(t) <= sets[j] or not _is_injective_hom(H, t):
                    bad.append(("a: not in Inj", i, j, t))
                    continue
                k = F.image_index(t)
                if t not in F.homs.get((i, k), ()) or _inverse(H, t) not in F.homs.get((k, i), ()):
                    bad.append(("b: no factorization", i, j, t))
    if bad:
        return False, bad
    for i in range(n):
        for j in range(n):
            for t in F.homs.get((i, j), ()):
                for K_idx in range(i + 1):
                    if sets[K_idx] <= sets[i] and _restrict(subs[i], t, subs[K_idx]) not in F.homs.get((K_idx, j), ()):
                        bad.append(("restriction", i, j, K_idx, t))
                for k in range(n):
                    for u in F.homs.get((j, k), ()):
                        if _compose(subs[i], t, subs[j], u) not in F.homs.get((i, k), ()):
                            bad.append(("composition", i, j, k))
    return not bad, bad


def f_conjugacy_classes(F: FusionSystem) -> list[list[int]]:
    classes: list[list[int]] = []
    seen = set()
    for i in range(len(F.subs)):
        if i in seen:
            continue
        cls = sorted({F.image_index(t) for t in F.hom(i, F.top)})
        if i not in cls:
            cls = sorted(set(cls) | {i})
        seen.update(cls)
        classes.append(cls)
    return classes


def f_class_of(F: FusionSystem, H) -> list[int]:
    i = F.index_of(H)
    return sorted({F.image_index(t) for t in F.hom(i, F.top)} | {i})


def is_fully_centralized(F: FusionSystem, H) -> bool:
    i = F.index_of(H)
    mine = centralizer(F.S, F.subs[i]).order
    return all(mine >= centralizer(F.S, F.subs[j]).order for j in f_class_of(F, i))


def is_fully_normalized(F: FusionSystem, H) -> bool:
    i = F.index_of(H)
    mine = normalizer(F.S, F.subs[i]).order
    return all(mine >= normalizer(F.S, F.subs[j]).order for j in f_class_of(F, i))


def aut_S(F: FusionSystem, H) -> frozenset[Table]:
    i = F.index_of(H)
    K = F.subs[i]
    return frozenset(_conj_table(g, K) for g in normalizer(F.S, K).elements)


@dataclass
class SaturationReport:
    saturated: bool
    axiom_I_failures: list[tuple[int, dict]] = field(default_factory=list)
    axiom_II_failures: list[tuple[tuple[int, Table], dict]] = field(default_factory=list)


def is_saturated(F: FusionSystem, *, check_axioms: bool = True) -> SaturationReport:
    """Check saturation axioms I and II exhaustively.

    Axiom II uses N_phi = {g in N_S(P) : phi c_g phi^-1 in Aut_S(phi(P))}.
    """
    if check_axioms:
        ok, bad = is_fusion_system(F)
        if not ok:
            raise MalformedFusionSystem(f"not a fusion system: {bad[:3]}")
    p = F.p
    subs = F.subs
    fc = [is_fully_centralized(F, i) for i in range(len(subs))]
    I_fail = []
    for i, H in enumerate(subs):
        if not is_fully_normalized(F, i):
            continue
        nS, nF = len(aut_S(F, i)), len(F.aut(i))
        why = {}
        if not fc[i]:
            why["fully_centralized"] = False
        if nS != p_part(nF, p):
            why["sylow"] = False
        if why:
            why.update(aut_S=nS, aut_F=nF,
                       reason=f"Aut_S(P) of order {nS} is not Sylow in Aut_F(P) of order {nF}"
                       if "sylow" in why else "fully normalized but not fully centralized")
            I_fail.append((i, why))
    II_fail = []
    top = F.top
    for i, H in enumerate(subs):
        NH = normalizer(F.S, H)
        for t in sorted(F.hom(i, top)):
            k = F.image_index(t)
            if not fc[k]:
                continue
            f = _apply(H, t)
            autS_img = aut_S(F, k)
            image = subs[k]
            inv = {v: x for x, v in f.items()}
            N_phi = [g for g in NH.elements
                     if tuple(f[P.conj(g, inv[y])] for y in image.elements) in autS_img]
            n_idx = F.index_of(N_phi)
            N = subs[n_idx]
            if not any(_restrict(N, u, H) == t for u in F.hom(n_idx, top)):
                II_fail.append(((i, t), {"N_phi": n_idx, "reason": "no extension to N_phi"}))
    return SaturationReport(not I_fail and not II_fail, I_fail, II_fail)


def is_saturated_abelian(F: FusionSystem) -> bool:
    """Saturation over abelian S: Aut_F(S) is a p'-group and every morphism
    is a restriction of an F-automorphism of S."""
    if not F.S.is_abelian:
        raise ValueError("S must be abelian")
    top = F.top
    autF = F.aut(top)
    if len(autF) % F.p == 0:
        return False
    full = [_apply(F.S, w) for w in autF]
    for (i, j), tabs in F.homs.items():
        H = F.subs[i]
        restr = {tuple(w[x] for x in H.elements) for w in full}
        if not tabs <= restr:
            return False
    return True


def centric_subgroups(F: FusionSystem) -> list[Group]:
    out = []
    for i, H in enumerate(F.subs):
        if all(centralizer(F.S, F.subs[j]).element_set <= F.subs[j].element_set
               for j in f_class_of(F, i)):
            out.append(H)
    return out


# ---------------------------------------------------------------------------
# exhaustive classification over small abelian S

def _all_isos(S: Group) -> list[tuple[int, Table]]:
    subs = subgroups(S)
    out = []
    for i, H in enumerate(subs):
        gens = H.gens
        for j, K in enumerate(subs):
            if K.order != H.order:
                continue
            by_order = {}
            for x in K.elements:
                by_order.setdefault(P.order(x), []).append(x)
            for imgs in itertools.product(*[by_order.get(P.order(g), []) for g in gens]):
                try:
                    f = GroupHom(H, K, dict(zip(gens, imgs)), validate=False)
                except ValueError:
                    continue
                if f.injective:
                    out.append((i, f.table))
    return out


class _Groupoid:
    """Isomorphisms between subgroups of S, closed under inverse, restriction, composition."""

    def __init__(self, S: Group):
        self.S = S
        self.subs = subgroups(S)
        self.idx = {H.elements: i for i, H in enumerate(self.subs)}
        self.below = [[k for k, K in enumerate(self.subs) if K.element_set <= H.element_set]
                      for H in self.subs]

    def target(self, t: Table) -> int:
        return self.idx[tuple(sorted(t))]

    def close(self, base: frozenset, new: Iterable[tuple[int, Table]]) -> frozenset:
        have = set(base)
        by_src: dict[int, set] = {}
        by_tgt: dict[int, set] = {}
        for i, t in have:
            by_src.setdefault(i, set()).add(t)
            by_tgt.setdefault(self.target(t), set()).add((i, t))
        work = [x for x in new if x not in have]
        subs = self.subs
        while work:
            i, t = work.pop()
            if (i, t) in have:
                continue
            have.add((i, t))
            j = self.target(t)
            by_src.setdefault(i, set()).add(t)
            by_tgt.setdefault(j, set()).add((i, t))
            H = subs[i]
            cand = [(j, _inverse(H, t))]
            for k in self.below[i]:
                K = subs[k]
                cand.append((k, _restrict(H, t, K)))
            for u in list(by_src.get(j, ())):
                cand.append((i, _compose(H, t, subs[j], u)))
            for (h, v) in list(by_tgt.get(i, ())):
                cand.append((h, _compose(subs[h], v, H, t)))
            work.extend(c for c in cand if c not in have)
        return frozenset(have)

    def to_fusion(self, p: int, closed: frozenset) -> FusionSystem:
        maps_from: dict[int, set[Table]] = {}
        for i, t in closed:
            maps_from.setdefault(i, set()).add(t)
        return _from_maps(p, self.S, maps_from)


def brute_force_fusion_systems(S: Group, p: int) -> list[FusionSystem]:
    """Every fusion system over S, by exploring closed isomorphism groupoids."""
    if S.order > BRUTE_FORCE_MAX_ORDER:
        raise ValueError(f"brute-force enumeration limited to |S| <= {BRUTE_FORCE_MAX_ORDER}")
    gd = _Groupoid(S)
    isos = _all_isos(S)
    inner = [(i, _conj_table(s, H)) for i, H in enumerate(gd.subs) for s in S.elements]
    start = gd.close(frozenset(), inner)
    seen = {start}
    queue = [start]
    while queue:
        C = queue.pop()
        for x in isos:
            if x in C:
                continue
            D = gd.close(C, [x])
            if D not in seen:
                seen.add(D)
                queue.append(D)
    return sorted((gd.to_fusion(p, C) for C in seen), key=lambda F: sorted(F.key()))


def coprime_automorphism_subgroups(S: Group, p: int) -> list[Group]:
    A = automorphism_group(S)
    return [W for W in subgroups(A) if W.order % p != 0]


def enumerate_saturated_fusion_systems(S: Group, p: int) -> list[FusionSystem]:
    """Saturated fusion systems over abelian S, computed two ways that must agree.

    (i) every fusion system over S filtered by the general saturation test;
    (ii) F_S(W x| S) for each W <= Aut(S) of order prime to p.
    """
    if not S.is_abelian:
        raise ValueError("S must be abelian")
    if not S.is_p_group(p):
        raise ValueError(f"S is not a {p}-group")
    brute = [F for F in brute_force_fusion_systems(S, p) if is_saturated(F).saturated]
    via_W = [fusion_abelian(W, S, p) for W in coprime_automorphism_subgroups(S, p)]
    kb = {F.key() for F in brute}
    kw = [F.key() for F in via_W]
    if len(set(kw)) != len(kw):
        raise InternalConsistencyError("distinct W gave the same fusion system")
    if kb != set(kw):
        raise InternalConsistencyError(
            f"brute force found {len(kb)} saturated systems, W-construction {len(kw)}")
    return via_W


def isomorphism_classes(systems: list[FusionSystem]) -> list[list[int]]:
    """Group systems over a common S by transport along Aut(S)."""
    if not systems:
        return []
    S = systems[0].S
    auts = automorphisms(S)
    keys = [F.key() for F in systems]
    out: list[list[int]] = []
    placed: set[int] = set()
    for a, F in enumerate(systems):
        if a in placed:
            continue
        orbit = {transport(F, f).key() for f in auts}
        cls = [b for b, k in enumerate(keys) if k in orbit]
        placed.update(cls)
        out.append(cls)
    return out
