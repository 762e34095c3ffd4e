"""The p-local double Burnside module A(S, T) of bifree bisets.

A basis pair [P, phi] with P <= S and phi: P -> T injective stands for the
(T, S)-biset T x_(P,phi) S, the quotient of T x S by (t phi(p), s) ~ (t, p s).
It has |T||S|/|P| points, and its augmentation is [S : P].

Composition uses the double coset formula

    [Q, psi] o [P, phi] = sum over x in Q \\ T / phi(P) of [P_x, psi o c_x o phi]

with P_x = {p in P : x phi(p) x^-1 in Q}.  An explicit biset model is kept
alongside as an independent oracle.
"""
from __future__ import annotations

import functools
import itertools
from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import perm as P
from .coeffs import Residue, as_local
from .groups import Group, GroupHom, direct_product, subgroups
from .perm import Perm


class BasisPair(NamedTuple):
    """[P, phi]: ``images`` lists phi on ``subgroup`` (sorted elements of P)."""
    order: int
    subgroup: tuple[Perm, ...]
    images: tuple[Perm, ...]


class GroupMismatch(ValueError):
    pass


def _is_local_coeff(c) -> bool:
    return isinstance(c, (int, Fraction, Residue))


@functools.lru_cache(maxsize=None)
def _canonical(S: Group, T: Group, sub: tuple[Perm, ...], images: tuple[Perm, ...]) -> BasisPair:
    """Least representative of (sPs^-1, c_t o phi o c_s^-1) over s in S, t in T."""
    best_sub = None
    bases = []
    for s in S.elements:
        conj = [P.conj(s, x) for x in sub]
        key = tuple(sorted(conj))
        if best_sub is None or key < best_sub:
            best_sub, bases = key, []
        if key == best_sub:
            order = sorted(range(len(sub)), key=lambda i: conj[i])
            bases.append(tuple(images[i] for i in order))
    best = None
    for base in set(bases):
        for t in T.elements:
            cand = tuple(P.conj(t, y) for y in base)
            if best is None or cand < best:
                best = cand
    return BasisPair(len(sub), best_sub, best)


def canonical_pair(S: Group, T: Group, sub: Iterable[Perm], images: Sequence[Perm]) -> BasisPair:
    """Canonical form of [P, phi]; ``images`` is aligned with the order of ``sub``."""
    sub = [tuple(x) for x in sub]
    order = sorted(range(len(sub)), key=lambda i: sub[i])
    return _canonical(S, T, tuple(sub[i] for i in order), tuple(tuple(images[i]) for i in order))


class BurnsideElement:
    """A Z_(p)-linear combination of canonical basis pairs in A(S, T)."""

    __slots__ = ("source", "target", "prime", "terms")

    def __init__(self, source: Group, target: Group, prime: int, terms=None, *,
                 canonical: bool = False):
        self.source = source
        self.target = target
        self.prime = prime
        acc: dict[BasisPair, object] = {}
        for pair, c in (terms or {}).items():
            if not _is_local_coeff(c):
                raise TypeError(f"unsupported coefficient {c!r}")
            if isinstance(c, Fraction):
                as_local(c, prime)
            if not canonical:
                sub, images = (pair.subgroup, pair.images) if isinstance(pair, BasisPair) else pair
                pair = canonical_pair(source, target, sub, images)
            acc[pair] = acc.get(pair, 0) + c
        self.terms = {k: acc[k] for k in sorted(acc) if acc[k] != 0}

    # -- basics
    def _check(self, other: "BurnsideElement") -> None:
        if (self.source, self.target, self.prime) != (other.source, other.target, other.prime):
            raise GroupMismatch("elements live in different Burnside modules")

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return BurnsideElement(self.source, self.target, self.prime, terms, canonical=True)

    def __neg__(self) -> "BurnsideElement":
        return self.scale(-1)

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        return self + (-other)

    def scale(self, c) -> "BurnsideElement":
        if isinstance(c, Fraction):
            as_local(c, self.prime)
        return BurnsideElement(self.source, self.target, self.prime,
                               {k: v * c for k, v in self.terms.items()}, canonical=True)

    def __mul__(self, c) -> "BurnsideElement":
        if isinstance(c, BurnsideElement):
            return compose(self, c)
        return self.scale(c)

    def __rmul__(self, c) -> "BurnsideElement":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        if (self.source, self.target, self.prime) != (other.source, other.target, other.prime):
            return False
        return not (self - other).terms

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        parts = []
        for k, c in self.terms.items():
            parts.append(f"{c}*[{k.order}:{','.join(P.to_cycles(x) for x in k.images)}]")
        return " + ".join(parts) or "0"

    @property
    def is_exact(self) -> bool:
        return all(not isinstance(c, Residue) for c in self.terms.values())

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1)
                   for c in self.terms.values())

    def to_residue(self, m: int) -> "BurnsideElement":
        terms = {k: Residue(c.value if isinstance(c, Residue) else Fraction(c), self.prime, m)
                 for k, c in self.terms.items()}
        return BurnsideElement(self.source, self.target, self.prime, terms, canonical=True)

    def coefficient(self, pair: BasisPair):
        return self.terms.get(pair, 0)


def basis_element(S: Group, T: Group, p: int, sub: Iterable[Perm], images: Sequence[Perm],
                  coeff=1) -> BurnsideElement:
    return BurnsideElement(S, T, p, {canonical_pair(S, T, sub, images): coeff}, canonical=True)


def identity(S: Group, p: int) -> BurnsideElement:
    """[S, id]."""
    return basis_element(S, S, p, S.elements, S.elements)


def zero(S: Group, T: Group, p: int) -> BurnsideElement:
    return BurnsideElement(S, T, p, {}, canonical=True)


# ---------------------------------------------------------------------------
# composition

@functools.lru_cache(maxsize=None)
def compose_pairs(S: Group, T: Group, U: Group, a: BasisPair, b: BasisPair) -> tuple:
    """[Q, psi] o [P, phi] for a = [P, phi] in A(S, T), b = [Q, psi] in A(T, U).

    Returns a sorted tuple of (canonical pair, integer multiplicity).
    """
    Qset = frozenset(b.subgroup)
    psi = dict(zip(b.subgroup, b.images))
    phiP = a.images
    seen: set[Perm] = set()
    out: dict[BasisPair, int] = {}
    for x in T.elements:
        if x in seen:
            continue
        for q in b.subgroup:
            qx = P.mul(q, x)
            for y in phiP:
                seen.add(P.mul(qx, y))
        sub, imgs = [], []
        for pt, y in zip(a.subgroup, phiP):
            z = P.conj(x, y)
            if z in Qset:
                sub.append(pt)
                imgs.append(psi[z])
        pair = canonical_pair(S, U, sub, imgs)
        out[pair] = out.get(pair, 0) + 1
    return tuple(sorted(out.items()))


def compose(b: BurnsideElement, a: BurnsideElement) -> BurnsideElement:
    """b o a, for a in A(S, T) and b in A(T, U)."""
    if a.target != b.source:
        raise GroupMismatch("target of the inner map differs from source of the outer map")
    if a.prime != b.prime:
        raise GroupMismatch("prime mismatch")
    S, T, U = a.source, a.target, b.target
    acc: dict[BasisPair, object] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            c = ca * cb
            for pair, n in compose_pairs(S, T, U, ka, kb):
                acc[pair] = acc.get(pair, 0) + c * n
    return BurnsideElement(S, U, a.prime, acc, canonical=True)


def power(x: BurnsideElement, n: int) -> BurnsideElement:
    if x.source != x.target:
        raise GroupMismatch("powers need an element of A(S, S)")
    result = identity(x.source, x.prime)
    base = x
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


# ---------------------------------------------------------------------------
# transfers, maps, products

def transfer(S: Group, H: Group, p: int) -> BurnsideElement:
    """tr_P = [P <= S, id_P] in A(S, P)."""
    if not H.element_set <= S.element_set:
        raise ValueError("P is not a subgroup of S")
    return basis_element(S, H, p, H.elements, H.elements)


def b_map(phi: GroupHom, p: int) -> BurnsideElement:
    """B(phi) = [P <= P, phi] in A(P, T)."""
    if not phi.injective:
        raise ValueError("phi is not injective")
    return basis_element(phi.domain, phi.codomain, p, phi.domain.elements, phi.table)


def b_map_op(phi: GroupHom, p: int) -> BurnsideElement:
    """The opposite biset of B(phi): [phi(P), phi^-1] in A(T, P)."""
    if not phi.injective:
        raise ValueError("phi is not injective")
    K = phi.image()
    inv = {v: k for k, v in phi.mapping.items()}
    return basis_element(phi.codomain, phi.domain, p, K.elements, [inv[k] for k in K.elements])


def inclusion(H: Group, S: Group) -> GroupHom:
    return GroupHom(H, S, H.elements, validate=False)


def external_product(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    """a x b in A(S1 x S2, T1 x T2), bilinear with [P, phi] x [Q, psi] = [P x Q, phi x psi]."""
    if a.prime != b.prime:
        raise GroupMismatch("prime mismatch")
    SS = direct_product(a.source, b.source)
    TT = direct_product(a.target, b.target)
    acc: dict[BasisPair, object] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            sub, imgs = [], []
            for x, fx in zip(ka.subgroup, ka.images):
                for y, fy in zip(kb.subgroup, kb.images):
                    sub.append(SS.pair(x, y))
                    imgs.append(TT.pair(fx, fy))
            pair = canonical_pair(SS, TT, sub, imgs)
            acc[pair] = acc.get(pair, 0) + ca * cb
    return BurnsideElement(SS, TT, a.prime, acc, canonical=True)


def diagonal(S: Group, p: int) -> BurnsideElement:
    """Delta_S = [S, s -> (s, s)] in A(S, S x S)."""
    SS = direct_product(S, S)
    return basis_element(S, SS, p, S.elements, [SS.pair(s, s) for s in S.elements])


def augmentation(x: BurnsideElement):
    """Sum of coeff * [S : P]."""
    total = 0
    for k, c in x.terms.items():
        total = total + c * (x.source.order // k.order)
    return total


# ---------------------------------------------------------------------------
# explicit bisets (oracle)

@dataclass
class ExplicitBiset:
    """A finite (T, S)-biset given by action tables on point indices.

    ``left[t]`` and ``right[s]`` are tuples of point indices, for t in T and s in S.
    """
    left_group: Group
    right_group: Group
    points: list[Hashable]
    left: dict[Perm, tuple[int, ...]]
    right: dict[Perm, tuple[int, ...]]

    @classmethod
    def from_actions(cls, T: Group, S: Group, points: Sequence[Hashable],
                     lact: Callable[[Perm, Hashable], Hashable],
                     ract: Callable[[Hashable, Perm], Hashable]) -> "ExplicitBiset":
        pts = list(points)
        idx = {x: i for i, x in enumerate(pts)}
        left = {t: tuple(idx[lact(t, x)] for x in pts) for t in T.elements}
        right = {s: tuple(idx[ract(x, s)] for x in pts) for s in S.elements}
        X = cls(T, S, pts, left, right)
        X.check()
        return X

    def __len__(self) -> int:
        return len(self.points)

    def check(self) -> None:
        n = len(self.points)
        T, S = self.left_group, self.right_group
        for t in T.gens:
            for t2 in T.elements:
                a = tuple(self.left[t][self.left[t2][i]] for i in range(n))
                if a != self.left[P.mul(t, t2)]:
                    raise ValueError("left action is not an action")
        for s in S.gens:
            for s2 in S.elements:
                # (x.s2).s = x.(s2 s)
                a = tuple(self.right[s][self.right[s2][i]] for i in range(n))
                if a != self.right[P.mul(s2, s)]:
                    raise ValueError("right action is not an action")
        for t in T.gens:
            for s in S.gens:
                for i in range(n):
                    if self.right[s][self.left[t][i]] != self.left[t][self.right[s][i]]:
                        raise ValueError("left and right actions do not commute")

    def is_bifree(self) -> bool:
        T, S = self.left_group, self.right_group
        for t in T.elements:
            if t != T.identity and any(self.left[t][i] == i for i in range(len(self))):
                return False
        for s in S.elements:
            if s != S.identity and any(self.right[s][i] == i for i in range(len(self))):
                return False
        return True

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for i in range(len(self)):
            if i in seen:
                continue
            orb = {self.right[s][self.left[t][i]] for t in self.left for s in self.right}
            seen |= orb
            out.append(sorted(orb))
        return out


def decompose(X: ExplicitBiset, p: int) -> BurnsideElement:
    """Orbit decomposition: each transitive bifree (T, S)-biset is one [P, phi].

    At a point x the stabilizer {(t, s) : t x s = x} is {(phi(u), u^-1) : u in P}.
    """
    if not X.is_bifree():
        raise ValueError("biset is not bifree")
    T, S = X.left_group, X.right_group
    terms: dict[BasisPair, int] = {}
    for orb in X.orbits():
        x = orb[0]
        sub, imgs = [], []
        for s in S.elements:
            y = X.right[s][x]
            for t in T.elements:
                if X.left[t][y] == x:
                    sub.append(P.inverse(s))
                    imgs.append(t)
        pair = canonical_pair(S, T, sub, imgs)
        terms[pair] = terms.get(pair, 0) + 1
    return BurnsideElement(S, T, p, terms, canonical=True)


def pair_biset(S: Group, T: Group, pair: BasisPair) -> ExplicitBiset:
    """T x_(P,phi) S as an explicit (T, S)-biset."""
    phi = list(zip(pair.subgroup, pair.images))

    def rep(t: Perm, s: Perm) -> tuple[Perm, Perm]:
        return min((P.mul(t, fu), P.mul(P.inverse(u), s)) for u, fu in phi)

    pts = sorted({rep(t, s) for t in T.elements for s in S.elements})
    return ExplicitBiset.from_actions(
        T, S, pts,
        lambda t, x: rep(P.mul(t, x[0]), x[1]),
        lambda x, s: rep(x[0], P.mul(x[1], s)))


def element_biset(x: BurnsideElement) -> ExplicitBiset:
    """Disjoint union of pair bisets; coefficients must be non-negative integers."""
    pts: list = []
    pieces = []
    for k, c in x.terms.items():
        if not (x.is_integral and c >= 0):
            raise ValueError("only non-negative integer elements are realized by bisets")
        for copy in range(int(c)):
            pieces.append((len(pieces), pair_biset(x.source, x.target, k)))
    lookup = {}
    for tag, Y in pieces:
        for i, pt in enumerate(Y.points):
            lookup[(tag, pt)] = (Y, i)
            pts.append((tag, pt))

    def lact(t, q):
        Y, i = lookup[q]
        return (q[0], Y.points[Y.left[t][i]])

    def ract(q, s):
        Y, i = lookup[q]
        return (q[0], Y.points[Y.right[s][i]])

    return ExplicitBiset.from_actions(x.target, x.source, pts, lact, ract)


def balanced_product(Y: ExplicitBiset, X: ExplicitBiset) -> ExplicitBiset:
    """Y x_T X for a (U, T)-biset Y and a (T, S)-biset X."""
    T = X.left_group
    if Y.right_group != T:
        raise GroupMismatch("middle groups differ")

    def rep(y: int, x: int) -> tuple[int, int]:
        return min((Y.right[t][y], X.left[P.inverse(t)][x]) for t in T.elements)

    pts = sorted({rep(y, x) for y in range(len(Y)) for x in range(len(X))})
    return ExplicitBiset.from_actions(
        Y.left_group, X.right_group, pts,
        lambda u, q: rep(Y.left[u][q[0]], q[1]),
        lambda q, s: rep(q[0], X.right[s][q[1]]))


def product_biset(X1: ExplicitBiset, X2: ExplicitBiset) -> ExplicitBiset:
    """Cartesian product, a (T1 x T2, S1 x S2)-biset."""
    TT = direct_product(X1.left_group, X2.left_group)
    SS = direct_product(X1.right_group, X2.right_group)
    pts = [(i, j) for i in range(len(X1)) for j in range(len(X2))]

    def lact(t, q):
        a, b = TT.split(t)
        return (X1.left[a][q[0]], X2.left[b][q[1]])

    def ract(q, s):
        a, b = SS.split(s)
        return (X1.right[a][q[0]], X2.right[b][q[1]])

    return ExplicitBiset.from_actions(TT, SS, pts, lact, ract)


def group_biset(G: Group, S: Group, embedding: GroupHom | None = None) -> ExplicitBiset:
    """G as an (S, S)-biset by left and right multiplication (through ``embedding``)."""
    e = embedding.mapping if embedding is not None else {s: s for s in S.elements}
    return ExplicitBiset.from_actions(
        S, S, G.elements,
        lambda s, g: P.mul(e[s], g),
        lambda g, s: P.mul(g, e[s]))


# ---------------------------------------------------------------------------
# enumeration of basis pairs

def injective_homs(H: Group, T: Group) -> list[GroupHom]:
    """All injective homomorphisms H -> T, sorted by image table."""
    by_order: dict[int, list[Perm]] = {}
    for y in T.elements:
        by_order.setdefault(P.order(y), []).append(y)
    gens = H.gens
    out = []
    for imgs in itertools.product(*[by_order.get(P.order(g), []) for g in gens]):
        try:
            f = GroupHom(H, T, dict(zip(gens, imgs)), validate=False)
        except ValueError:
            continue
        if not f.injective:
            continue
        try:
            f._validate()
        except ValueError:
            continue
        out.append(f)
    return sorted(out, key=lambda f: f.table)


def all_pairs(S: Group, T: Group) -> list[BasisPair]:
    """Every canonical basis pair of A(S, T)."""
    out = {canonical_pair(S, T, H.elements, f.table)
           for H in subgroups(S) for f in injective_homs(H, T)}
    return sorted(out)


def subgroup_index(S: Group, pair: BasisPair) -> int:
    for i, H in enumerate(subgroups(S)):
        if H.elements == pair.subgroup:
            return i
    raise ValueError("subgroup not found")


def to_json(x: BurnsideElement) -> dict:
    terms = []
    for k, c in x.terms.items():
        t = {"subgroup_index": subgroup_index(x.source, k),
             "phi_images": [P.to_cycles(y) for y in k.images]}
        if isinstance(c, Residue):
            t["residue"] = c.value
            t["precision"] = c.m
        else:
            c = Fraction(c)
            t["numerator"] = c.numerator
            t["denominator"] = c.denominator
        terms.append(t)
    return {"source": [P.to_cycles(g) for g in x.source.gens], "source_order": x.source.order,
            "target": [P.to_cycles(g) for g in x.target.gens], "target_order": x.target.order,
            "prime": x.prime, "terms": terms}
