"""H*(BV; F_p) for V elementary abelian of rank n, with Steenrod operations and GL(V)-action.

At odd p the algebra is Lambda(y_1..y_n) (x) F_p[x_1..x_n] with |y| = 1, |x| = 2 and
beta(y_i) = x_i.  At p = 2 it is F_2[x_1..x_n] with |x| = 1.  A monomial is a pair
(exterior bitmask, exponent tuple).
"""
from __future__ import annotations

import functools
import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from math import comb

from .groups import is_prime

Monomial = tuple[int, tuple[int, ...]]
Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Algebra:
    p: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.n < 0:
            raise ValueError("rank must be non-negative")

    @property
    def odd(self) -> bool:
        return self.p != 2

    def degree(self, mono: Monomial) -> int:
        mask, exps = mono
        if self.odd:
            return bin(mask).count("1") + 2 * sum(exps)
        return sum(exps)

    def monomials(self, d: int) -> list[Monomial]:
        """Sorted monomial basis of degree d."""
        return list(_monomials(self.p, self.n, d))

    def one(self) -> "GradedElement":
        return GradedElement(self, {(0, (0,) * self.n): 1}, 0)

    def zero(self, d: int) -> "GradedElement":
        return GradedElement(self, {}, d)

    def x(self, i: int) -> "GradedElement":
        e = [0] * self.n
        e[i] = 1
        return GradedElement(self, {(0, tuple(e)): 1}, 2 if self.odd else 1)

    def y(self, i: int) -> "GradedElement":
        if not self.odd:
            raise ValueError("no exterior generators at p = 2")
        return GradedElement(self, {(1 << i, (0,) * self.n): 1}, 1)

    def monomial(self, mono: Monomial, c: int = 1) -> "GradedElement":
        return GradedElement(self, {mono: c}, self.degree(mono))


@functools.lru_cache(maxsize=None)
def _monomials(p: int, n: int, d: int) -> tuple[Monomial, ...]:
    out = []
    masks = range(1 << n) if p != 2 else [0]
    for mask in masks:
        k = bin(mask).count("1")
        rest = d - k
        if p != 2:
            if rest < 0 or rest % 2:
                continue
            rest //= 2
        elif rest < 0:
            continue
        for exps in _compositions(rest, n):
            out.append((mask, exps))
    return tuple(sorted(out))


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _exterior_sign(a: int, b: int) -> int:
    """Sign of y_A y_B = sign * y_(A u B) for disjoint sorted index sets."""
    swaps = 0
    for j in range(b.bit_length()):
        if b >> j & 1:
            swaps += bin(a >> (j + 1)).count("1")
    return -1 if swaps % 2 else 1


class GradedElement:
    """A homogeneous element: a map from monomials to nonzero scalars mod p."""

    __slots__ = ("algebra", "terms", "degree")

    def __init__(self, algebra: Algebra, terms: dict[Monomial, int], degree: int):
        p = algebra.p
        self.algebra = algebra
        self.degree = degree
        clean = {}
        for m, c in terms.items():
            c %= p
            if c:
                if algebra.degree(m) != degree:
                    raise ValueError("inhomogeneous element")
                clean[m] = c
        self.terms = dict(sorted(clean.items()))

    def _same(self, other: "GradedElement") -> None:
        if self.algebra != other.algebra:
            raise ValueError("elements of different algebras")

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._same(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        if self.degree != other.degree:
            raise ValueError("adding elements of different degrees")
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return GradedElement(self.algebra, t, self.degree)

    def __neg__(self) -> "GradedElement":
        return self.scale(-1)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def scale(self, c: int) -> "GradedElement":
        return GradedElement(self.algebra, {m: v * c for m, v in self.terms.items()}, self.degree)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._same(other)
        out: dict[Monomial, int] = {}
        for (ma, ea), ca in self.terms.items():
            for (mb, eb), cb in other.terms.items():
                if ma & mb:
                    continue
                sign = _exterior_sign(ma, mb) if ma and mb else 1
                key = (ma | mb, tuple(i + j for i, j in zip(ea, eb)))
                out[key] = out.get(key, 0) + sign * ca * cb
        return GradedElement(self.algebra, out, self.degree + other.degree)

    def __rmul__(self, c: int) -> "GradedElement":
        return self.scale(c)

    def __pow__(self, k: int) -> "GradedElement":
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        if self.algebra != other.algebra:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, tuple(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (mask, exps), c in self.terms.items():
            fs = [f"y{i + 1}" for i in range(self.algebra.n) if mask >> i & 1]
            fs += [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
            s = "*".join(fs) or "1"
            parts.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(parts)

    def vector(self) -> list[int]:
        """Coordinates on ``algebra.monomials(degree)``."""
        return [self.terms.get(m, 0) for m in self.algebra.monomials(self.degree)]

    def to_json(self) -> list[dict]:
        return [{"exterior_mask": mask, "exponents": list(exps), "coeff": c}
                for (mask, exps), c in self.terms.items()]


def from_vector(A: Algebra, d: int, vec: Sequence[int]) -> GradedElement:
    return GradedElement(A, {m: int(c) for m, c in zip(A.monomials(d), vec)}, d)


# ---------------------------------------------------------------------------
# GL(n, p) action

def _as_matrix(w: Iterable[Iterable[int]], p: int) -> Matrix:
    return tuple(tuple(int(a) % p for a in row) for row in w)


def det_mod(w: Matrix, p: int) -> int:
    n = len(w)
    M = [list(r) for r in w]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for r in range(c + 1, n):
            f = M[r][c] * inv % p
            if f:
                M[r] = [(a - f * b) % p for a, b in zip(M[r], M[c])]
    return det % p


def gl_action(w, e: GradedElement) -> GradedElement:
    """Substitute generator_i -> sum_j w[i][j] generator_j (on both y's and x's)."""
    A = e.algebra
    wm = _as_matrix(w, A.p)
    if len(wm) != A.n or any(len(r) != A.n for r in wm):
        raise ValueError("matrix has the wrong size")
    if det_mod(wm, A.p) == 0:
        raise ValueError("singular matrix")
    out = A.zero(e.degree)
    for m, c in e.terms.items():
        out = out + _act_monomial(A, wm, m).scale(c)
    return out


@functools.lru_cache(maxsize=None)
def _act_monomial(A: Algebra, w: Matrix, mono: Monomial) -> GradedElement:
    mask, exps = mono
    out = A.one()
    for i in range(A.n):
        if mask >> i & 1:
            out = out * _image(A, w, i, exterior=True)
    for i, k in enumerate(exps):
        if k:
            out = out * _image(A, w, i, exterior=False) ** k
    return out


def _image(A: Algebra, w: Matrix, i: int, exterior: bool) -> GradedElement:
    gen = A.y if exterior else A.x
    out = A.zero(1 if exterior else (2 if A.odd else 1))
    for j, c in enumerate(w[i]):
        if c:
            out = out + gen(j).scale(c)
    return out


# ---------------------------------------------------------------------------
# Steenrod operations

def steenrod(op: str, e: GradedElement, i: int = 0) -> GradedElement:
    """Apply ``"beta"``, ``"P"`` (P^i, odd p) or ``"Sq"`` (Sq^i, p = 2) to e."""
    A = e.algebra
    if i < 0:
        raise ValueError("operation index must be non-negative")
    if op == "beta":
        if not A.odd:
            return steenrod("Sq", e, 1)
        out = A.zero(e.degree + 1)
        for m, c in e.terms.items():
            out = out + _beta_monomial(A, m).scale(c)
        return out
    if op == "P":
        if not A.odd:
            raise ValueError("P^i is for odd primes; use Sq at p = 2")
        shift = 2 * i * (A.p - 1)
        step = A.p - 1
    elif op == "Sq":
        if A.odd:
            raise ValueError("Sq^i is for p = 2")
        shift = i
        step = 1
    else:
        raise ValueError(f"unknown operation {op!r}")
    out = A.zero(e.degree + shift)
    for (mask, exps), c in e.terms.items():
        # total power: each x^e becomes (x + x^p)^e; keep the part with i factors x^p
        for ks in _compositions(i, A.n):
            coef = 1
            for k, ex in zip(ks, exps):
                coef *= comb(ex, k)
            if coef % A.p:
                new = tuple(ex + step * k for ex, k in zip(exps, ks))
                out = out + GradedElement(A, {(mask, new): coef * c}, e.degree + shift)
    return out


def _beta_monomial(A: Algebra, mono: Monomial) -> GradedElement:
    mask, exps = mono
    out = A.zero(A.degree(mono) + 1)
    pos = 0
    for i in range(A.n):
        if mask >> i & 1:
            new = list(exps)
            new[i] += 1
            sign = -1 if pos % 2 else 1
            out = out + GradedElement(A, {(mask & ~(1 << i), tuple(new)): sign}, out.degree)
            pos += 1
    return out


def operations_up_to(A: Algebra, d: int, D: int) -> list[tuple[str, int]]:
    """Nonzero-degree operations taking degree d into degrees <= D."""
    ops = []
    if A.odd:
        if d + 1 <= D:
            ops.append(("beta", 0))
        i = 1
        while d + 2 * i * (A.p - 1) <= D:
            ops.append(("P", i))
            i += 1
    else:
        i = 1
        while d + i <= D:
            ops.append(("Sq", i))
            i += 1
    return ops


def power_p(e: GradedElement) -> GradedElement:
    out = e.algebra.one()
    for _ in range(e.algebra.p):
        out = out * e
    return out


def all_matrices(n: int, p: int) -> Iterable[Matrix]:
    for entries in itertools.product(range(p), repeat=n * n):
        yield tuple(tuple(entries[r * n:(r + 1) * n]) for r in range(n))
