"""Characteristic idempotents of fusion systems and Frobenius reciprocity checks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .burnside import (BasisPair, BurnsideElement, augmentation, b_map, basis_element,
                       canonical_pair, b_map_op, compose, compose_pairs, decompose, diagonal,
                       external_product, group_biset, identity, inclusion, power, transfer)
from .coeffs import is_local
from .fusion import FusionSystem
from .groups import Group, GroupHom, semidirect_product

DEFAULT_PRECISION = 16
ITERATION_CAP = 64


class NonConvergence(AssertionError):
    pass


class NotGroupRealized(ValueError):
    pass


def f_pairs(F: FusionSystem) -> list[BasisPair]:
    """Canonical pairs [P, phi] of A(S, S) with phi in Hom_F(P, S)."""
    S = F.S
    out = set()
    for i, H in enumerate(F.subs):
        for t in F.hom(i, F.top):
            out.add(canonical_pair(S, S, H.elements, t))
    return sorted(out)


@dataclass
class StabilityResult:
    ok: bool
    reason: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def _stability_tests(F: FusionSystem, side: str):
    """Pairs of maps (reference, other) that an F-stable element must equalize.

    Right: x o B(i_P) = x o B(phi) in A(P, S).  Left: B(i_P)^op o x = B(phi)^op o x in A(S, P).
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    S, p = F.S, F.p
    for i, H in enumerate(F.subs):
        incl = inclusion(H, S)
        for t in sorted(F.hom(i, F.top)):
            phi = GroupHom(H, S, t, validate=False)
            if side == "right":
                yield (i, t), b_map(incl, p), b_map(phi, p)
            else:
                yield (i, t), b_map_op(incl, p), b_map_op(phi, p)


def _apply_test(x: BurnsideElement, side: str, f: BurnsideElement) -> BurnsideElement:
    return compose(x, f) if side == "right" else compose(f, x)


def is_F_stable(x: BurnsideElement, F: FusionSystem, side: str = "right") -> StabilityResult:
    """Support in F, and x o B(i_P) = x o B(phi) for every phi in Hom_F(P, S).

    ``side="left"`` tests B(i_P)^op o x = B(phi)^op o x instead, ``"both"`` tests both.
    """
    S = F.S
    if x.source != S or x.target != S:
        raise ValueError("x must lie in A(S, S)")
    allowed = set(f_pairs(F))
    for k in x.terms:
        if k not in allowed:
            return StabilityResult(False, "support outside F", (k,))
    for sd in (("right", "left") if side == "both" else (side,)):
        for witness, ref, other in _stability_tests(F, sd):
            if _apply_test(x, sd, ref) != _apply_test(x, sd, other):
                return StabilityResult(False, f"not {sd} F-stable", witness)
    return StabilityResult(True)


def is_idempotent(x: BurnsideElement) -> bool:
    return compose(x, x) == x


def xi_element(F: FusionSystem) -> BurnsideElement:
    """The realizing group G as an (S, S)-biset, divided by [G : S]."""
    S, p = F.S, F.p
    if F.group is not None:
        G = F.group
        X = group_biset(G, S)
    elif F.W is not None:
        G = semidirect_product(F.W, S)
        X = group_biset(G, S, G.embedding)
    else:
        raise NotGroupRealized("fusion system carries neither a group nor W")
    xi = decompose(X, p)
    eps = augmentation(xi)
    if eps != G.order // S.order or eps % p == 0:
        raise AssertionError("augmentation of the group biset is not a p'-index")
    return xi.scale(Fraction(1, eps))


def idempotent_limit(x: BurnsideElement, m: int) -> tuple[BurnsideElement, int]:
    """lim x^(k!) in A(S, S) tensor Z/p^m; returns the limit and the iteration count."""
    t = x.to_residue(m)
    for k in range(1, ITERATION_CAP + 1):
        if compose(t, t) == t:
            return t, k
        t = power(t, k + 1)
    raise NonConvergence(f"no idempotent after {ITERATION_CAP} iterations")


def _reconstruct(t: BurnsideElement) -> BurnsideElement | None:
    terms = {}
    for k, c in t.terms.items():
        r = c.reconstruct()
        if r is None:
            return None
        terms[k] = r
    return BurnsideElement(t.source, t.target, t.prime, terms, canonical=True)


def characteristic_idempotent(F: FusionSystem, m: int = DEFAULT_PRECISION) -> BurnsideElement:
    """omega for F: exact when rational recovery succeeds and verifies, else mod p^m."""
    if m < 1:
        raise ValueError("precision must be at least 1")
    t, _ = idempotent_limit(xi_element(F), m)
    w = _reconstruct(t)
    if w is not None and is_idempotent(w) and augmentation(w) == 1 and is_F_stable(w, F):
        return w
    return t


def abelian_idempotent(W: Group, S: Group, p: int) -> BurnsideElement:
    """(1/|W|) sum over w in W of [S, w], for W acting on the element indices of S."""
    c = Fraction(1, W.order)
    out = BurnsideElement(S, S, p, {}, canonical=True)
    for w in W.elements:
        out = out + basis_element(S, S, p, S.elements, [S.elements[w[i]] for i in range(S.order)], c)
    return out


# ---------------------------------------------------------------------------
# uniqueness: solve (a), (b), (c) linearly, then idempotency

def _linear_conditions(F: FusionSystem, basis: list[BasisPair], sides: tuple[str, ...]):
    S, p = F.S, F.p
    units = [BurnsideElement(S, S, p, {b: 1}, canonical=True) for b in basis]
    rows: list[dict] = []
    for side in sides:
        for _, ref, other in _stability_tests(F, side):
            row: dict = {}
            for j, e in enumerate(units):
                diff = _apply_test(e, side, ref) - _apply_test(e, side, other)
                for k, c in diff.terms.items():
                    row.setdefault(k, {})[j] = c
            rows += list(row.values())
    return rows


@dataclass
class IdempotentSolutions:
    """Z_(p)-rational idempotents meeting (a), (b), (c), plus whether a positive-dimensional
    family of solutions turned up (which also makes the answer non-unique)."""
    elements: list[BurnsideElement]
    positive_dimensional: bool
    free_parameters: int

    @property
    def unique(self) -> bool:
        return len(self.elements) == 1 and not self.positive_dimensional


def idempotent_solutions(F: FusionSystem, two_sided: bool = True,
                         max_free: int = 8) -> IdempotentSolutions:
    """Solve support + stability + augmentation 1 exactly, then impose x o x = x.

    The affine solution space of the linear conditions is parametrized with sympy
    and the quadratic idempotency system is solved in the free parameters.
    """
    S, p = F.S, F.p
    basis = f_pairs(F)
    n = len(basis)
    xs = sympy.symbols(f"c0:{n}")
    sides = ("right", "left") if two_sided else ("right",)
    eqs = [sum(sympy.Rational(c.numerator, c.denominator) * xs[j] for j, c in
               ((j, Fraction(c)) for j, c in row.items()))
           for row in _linear_conditions(F, basis, sides)]
    eqs.append(sum((S.order // b.order) * xs[j] for j, b in enumerate(basis)) - 1)
    sol = sympy.linsolve(eqs, xs)
    if not sol:
        return IdempotentSolutions([], False, 0)
    (param,) = list(sol)
    free = sorted(set().union(*[e.free_symbols for e in param]), key=str)
    if len(free) > max_free:
        raise ValueError(f"{len(free)} free parameters exceed the bound {max_free}")
    index = {b: j for j, b in enumerate(basis)}
    square: dict[BasisPair, object] = {}
    for a in basis:
        for b in basis:
            for k, mult in compose_pairs(S, S, S, a, b):
                square[k] = square.get(k, 0) + mult * param[index[a]] * param[index[b]]
    quad = []
    for k in sorted(set(square) | set(basis)):
        rhs = param[index[k]] if k in index else 0
        quad.append(sympy.expand(square.get(k, 0) - rhs))
    quad = [q for q in quad if q != 0]
    if not free:
        sols = [{}] if not quad else []
    else:
        sols = sympy.solve(quad, free, dict=True)
    out, family = [], False
    for s in sols:
        vals = [sympy.nsimplify(e.subs(s)) for e in param]
        if any(v.free_symbols for v in vals):
            family = True
            continue
        if any(not v.is_Rational for v in vals):
            continue
        coeffs = [Fraction(int(v.p), int(v.q)) for v in vals]
        if all(is_local(c, p) for c in coeffs):
            out.append(BurnsideElement(S, S, p, dict(zip(basis, coeffs)), canonical=True))
    return IdempotentSolutions(out, family, len(free))


# ---------------------------------------------------------------------------
# Frobenius reciprocity

def verify_classical_frobenius(S: Group, H: Group, p: int) -> bool:
    """(1 x tr_P) o Delta_S = (B i_P x 1) o Delta_P o tr_P in A(S, S x P)."""
    tr = transfer(S, H, p)
    lhs = compose(external_product(identity(S, p), tr), diagonal(S, p))
    inc = b_map(inclusion(H, S), p)
    rhs = compose(external_product(inc, identity(H, p)), compose(diagonal(H, p), tr))
    return lhs == rhs


def verify_diag_commute(phi: GroupHom, p: int) -> bool:
    """Delta_S o B(phi) = (B(phi) x B(phi)) o Delta_P in A(P, S x S)."""
    b = b_map(phi, p)
    lhs = compose(diagonal(phi.codomain, p), b)
    rhs = compose(external_product(b, b), diagonal(phi.domain, p))
    return lhs == rhs


@dataclass
class FrobeniusReport:
    relation: bool
    retractive: bool

    def __bool__(self) -> bool:
        return self.relation and self.retractive


def verify_frobenius_reciprocity(w: BurnsideElement, F: FusionSystem) -> FrobeniusReport:
    """(w x w) o Delta = (w x 1) o Delta o w, and both sides absorb w on the right."""
    S, p = F.S, F.p
    d = diagonal(S, p)
    lhs = compose(external_product(w, w), d)
    rhs = compose(external_product(w, identity(S, p)), compose(d, w))
    retractive = compose(lhs, w) == lhs and compose(rhs, w) == rhs
    return FrobeniusReport(lhs == rhs, retractive)
