"""Invariants of W <= GL(n, p) on H*(BV; F_p), the Reynolds splitting, and theta-tilde.

Linear algebra over F_p and F_(p^r) is done with the ``galois`` package.
"""
from __future__ import annotations

import cmath
import functools
import warnings
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .steenrod import (Algebra, GradedElement, Matrix, _as_matrix, det_mod, from_vector,
                       gl_action, operations_up_to, steenrod)

DEFAULT_MAX_DEGREE = 12

# numba (pulled in by galois) warns about an old TBB on first parallel use
warnings.filterwarnings("ignore", message=".*TBB threading layer.*")


def _gf(q: int):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        import galois
    return galois.GF(q)


# ---------------------------------------------------------------------------
# matrix groups

def mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n))
                 for i in range(n))


@dataclass(frozen=True)
class MatrixGroup:
    """A finite subgroup W of GL(n, p), stored with all of its elements."""
    p: int
    n: int
    elements: tuple[Matrix, ...]
    generators: tuple[Matrix, ...] = field(default=())

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def gens(self) -> tuple[Matrix, ...]:
        return self.generators or self.elements


def matrix_group(gens: Iterable, p: int, n: int | None = None) -> MatrixGroup:
    """Close a list of invertible n x n matrices over F_p under multiplication."""
    gens = [_as_matrix(g, p) for g in gens]
    if n is None:
        if not gens:
            raise ValueError("rank needed for the trivial group")
        n = len(gens[0])
    for g in gens:
        if len(g) != n or any(len(r) != n for r in g):
            raise ValueError("matrix has the wrong size")
        if det_mod(g, p) == 0:
            raise ValueError("singular matrix")
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_mul(x, g, p)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return MatrixGroup(p, n, tuple(sorted(seen)), tuple(gens))


def _check_coprime(W: MatrixGroup) -> None:
    if W.order % W.p == 0:
        raise ValueError(f"p = {W.p} divides |W| = {W.order}")


# ---------------------------------------------------------------------------
# linear algebra over F_p

def _matrix(rows: Sequence[Sequence[int]], p: int, ncols: int):
    GF = _gf(p)
    if not rows:
        return GF.Zeros((0, ncols))
    return GF(np.array(rows, dtype=np.int64) % p)


def rank_mod(rows: Sequence[Sequence[int]], p: int, ncols: int) -> int:
    if not rows:
        return 0
    return int(np.linalg.matrix_rank(_matrix(rows, p, ncols)))


def row_basis(rows: Sequence[Sequence[int]], p: int, ncols: int) -> list[list[int]]:
    if not rows:
        return []
    R = _matrix(rows, p, ncols).row_space()
    return [[int(v) for v in r] for r in R]


def in_span(vec: Sequence[int], rows: Sequence[Sequence[int]], p: int) -> bool:
    n = len(vec)
    return rank_mod(list(rows) + [vec], p, n) == rank_mod(rows, p, n)


def _same_span(a, b, p: int, ncols: int) -> bool:
    r = rank_mod(a, p, ncols)
    return r == rank_mod(b, p, ncols) == rank_mod(list(a) + list(b), p, ncols)


# ---------------------------------------------------------------------------
# Reynolds operator and invariants

Transfer = Callable[[GradedElement], GradedElement]


def reynolds(W: MatrixGroup, e: GradedElement) -> GradedElement:
    """(1/|W|) sum over w of w.e."""
    _check_coprime(W)
    A = e.algebra
    out = A.zero(e.degree)
    for w in W.elements:
        out = out + gl_action(w, e)
    return out.scale(pow(W.order, -1, A.p))


def partial_reynolds(W: MatrixGroup, drop: int = 0) -> Transfer:
    """A deliberately wrong splitting that skips one group element (a test control)."""
    _check_coprime(W)
    keep = [w for i, w in enumerate(W.elements) if i != drop]

    def t(e: GradedElement) -> GradedElement:
        out = e.algebra.zero(e.degree)
        for w in keep:
            out = out + gl_action(w, e)
        return out.scale(pow(W.order, -1, e.algebra.p))
    return t


def corrupted_reynolds(W: MatrixGroup, target, drop: int = 0) -> Transfer:
    """Reynolds extended linearly from monomials, except that on the single monomial
    ``target`` one term of its orbit sum is dropped (a test control)."""
    _check_coprime(W)
    bad = partial_reynolds(W, drop)

    def t(e: GradedElement) -> GradedElement:
        out = e.algebra.zero(e.degree)
        for m, c in e.terms.items():
            f = bad if m == target else functools.partial(reynolds, W)
            out = out + f(e.algebra.monomial(m)).scale(c)
        return out
    return t


def _fixed_rows(W: MatrixGroup, A: Algebra, d: int) -> list[list[int]]:
    """Basis of the degree-d fixed space as coordinate rows, via (w - 1)v = 0 for generators."""
    monos = A.monomials(d)
    N = len(monos)
    if N == 0:
        return []
    blocks = []
    for w in W.gens:
        cols = [gl_action(w, A.monomial(m)).vector() for m in monos]
        M = np.array(cols, dtype=np.int64).T
        blocks.append((M - np.eye(N, dtype=np.int64)) % A.p)
    if not blocks:
        return [[int(i == j) for j in range(N)] for i in range(N)]
    K = _matrix(np.vstack(blocks).tolist(), A.p, N).null_space()
    return [[int(v) for v in r] for r in K]


def invariant_basis(W: MatrixGroup, d: int, A: Algebra | None = None) -> list[GradedElement]:
    """Basis of H^d(BV)^W by solving (w - 1)e = 0 for the generators of W."""
    _check_coprime(W)
    A = A or Algebra(W.p, W.n)
    return [from_vector(A, d, r) for r in _fixed_rows(W, A, d)]


def reynolds_image(W: MatrixGroup, d: int, A: Algebra | None = None) -> list[GradedElement]:
    """Basis of the image of the Reynolds operator in degree d (the independent check)."""
    A = A or Algebra(W.p, W.n)
    N = len(A.monomials(d))
    rows = [reynolds(W, A.monomial(m)).vector() for m in A.monomials(d)]
    return [from_vector(A, d, r) for r in row_basis(rows, A.p, N)]


def invariant_dimensions(W: MatrixGroup, D: int) -> list[int]:
    A = Algebra(W.p, W.n)
    return [len(_fixed_rows(W, A, d)) for d in range(D + 1)]


@dataclass
class InvariantRing:
    W: MatrixGroup
    degree_bound: int
    basis_per_degree: list[list[GradedElement]]

    @classmethod
    def compute(cls, W: MatrixGroup, D: int = DEFAULT_MAX_DEGREE) -> "InvariantRing":
        return cls(W, D, [invariant_basis(W, d) for d in range(D + 1)])

    def dimensions(self) -> list[int]:
        return [len(b) for b in self.basis_per_degree]


# ---------------------------------------------------------------------------
# Molien series through Brauer lifts of eigenvalues

def brauer_eigenvalues(w: Matrix, p: int, order: int) -> list[complex]:
    """Eigenvalues of w (order prime to p) in F_(p^r), lifted to complex roots of unity."""
    r = 1
    while (p ** r - 1) % order:
        r += 1
    q = p ** r
    GF = _gf(q)
    alpha = GF.primitive_element
    n = len(w)
    M = GF(np.array(w, dtype=np.int64) % p)
    I = GF.Identity(n)
    out: list[complex] = []
    power = GF(1)
    for k in range(q - 1):
        mult = n - int(np.linalg.matrix_rank(M - power * I))
        out += [cmath.exp(2j * cmath.pi * k / (q - 1))] * mult
        power = power * alpha
    if len(out) != n:
        raise ArithmeticError("matrix is not diagonalizable over the splitting field")
    return out


def _order(w: Matrix, p: int) -> int:
    n = len(w)
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    k, x = 1, w
    while x != ident:
        x = mat_mul(x, w, p)
        k += 1
    return k


def _series_mul(a: np.ndarray, b: np.ndarray, D: int) -> np.ndarray:
    return np.convolve(a, b)[:D + 1]


def molien_series(W: MatrixGroup, D: int) -> list[int]:
    """Dimensions of H^d(BV)^W for d <= D from the Molien formula.

    At odd p each element contributes prod (1 + t l) / (1 - t^2 l) over its lifted
    eigenvalues l; at p = 2, prod 1 / (1 - t l).
    """
    _check_coprime(W)
    p = W.p
    total = np.zeros(D + 1, dtype=complex)
    for w in W.elements:
        s = np.zeros(D + 1, dtype=complex)
        s[0] = 1
        for lam in brauer_eigenvalues(w, p, _order(w, p)):
            if p == 2:
                geo = np.array([lam ** k for k in range(D + 1)])
            else:
                geo = np.zeros(D + 1, dtype=complex)
                geo[0::2] = [lam ** k for k in range(len(geo[0::2]))]
                ext = np.zeros(D + 1, dtype=complex)
                ext[0] = 1
                if D >= 1:
                    ext[1] = lam
                geo = _series_mul(geo, ext, D)
            s = _series_mul(s, geo, D)
        total += s
    total /= W.order
    out = []
    for c in total:
        k = round(c.real)
        if abs(c - k) > 1e-6:
            raise ArithmeticError(f"Molien coefficient {c} is not an integer")
        out.append(int(k))
    return out


# ---------------------------------------------------------------------------
# theta-tilde on subalgebras of H*(BV)

def _poly_mask(A: Algebra, d: int) -> list[int]:
    return [int(m[0] == 0) for m in A.monomials(d)]


def check_subalgebra(A: Algebra, bases: Sequence[Sequence[GradedElement]]) -> bool:
    D = len(bases) - 1
    rows = [[e.vector() for e in b] for b in bases]
    for i in range(D + 1):
        for j in range(D + 1 - i):
            for a in bases[i]:
                for b in bases[j]:
                    if not in_span((a * b).vector(), rows[i + j], A.p):
                        return False
    return True


def theta_tilde(A: Algebra, bases: Sequence[Sequence[GradedElement]],
                check: bool = True) -> list[list[GradedElement]]:
    """Degreewise intersection of R with the polynomial part F_p[x_1..x_n] (odd p).

    At p = 2 the input is returned unchanged.
    """
    if check and not check_subalgebra(A, bases):
        raise ValueError("R is not a subalgebra")
    if not A.odd:
        return [list(b) for b in bases]
    out = []
    for d, basis in enumerate(bases):
        monos = A.monomials(d)
        N = len(monos)
        if not basis:
            out.append([])
            continue
        # solve sum a_k r_k with zero exterior coordinates
        ext_cols = [i for i, m in enumerate(monos) if m[0] != 0]
        R = np.array([b.vector() for b in basis], dtype=np.int64)
        if ext_cols:
            K = _matrix(R[:, ext_cols].T.tolist(), A.p, len(basis)).null_space()
            combos = [[int(v) for v in r] for r in K]
        else:
            combos = [[int(i == j) for j in range(len(basis))] for i in range(len(basis))]
        vecs = [(np.array(c, dtype=np.int64) @ R % A.p).tolist() for c in combos]
        out.append([from_vector(A, d, v) for v in row_basis(vecs, A.p, N)])
    return out


def full_bases(A: Algebra, D: int) -> list[list[GradedElement]]:
    return [[A.monomial(m) for m in A.monomials(d)] for d in range(D + 1)]


def hilbert(bases: Sequence[Sequence[GradedElement]]) -> list[int]:
    return [len(b) for b in bases]


# ---------------------------------------------------------------------------
# finite generation

@dataclass
class GenerationWitness:
    generators: list[GradedElement]
    spanned: list[bool]
    degree_bound: int
    stabilization_bound: int

    @property
    def stabilized(self) -> bool:
        return self.degree_bound >= self.stabilization_bound

    @property
    def generator_degrees(self) -> list[int]:
        return [g.degree for g in self.generators]


def finite_generation_witness(W: MatrixGroup, D: int = DEFAULT_MAX_DEGREE) -> GenerationWitness:
    """Module generators of theta(H*(BV)) over theta(H*(BV)^W) through degree D.

    Greedy: in each degree, products of earlier generators with the ring are
    spanned first and a complement is added from the monomial basis.  Every
    polynomial generator satisfies a monic equation of degree |W| over the
    invariants, so generators are never needed past polynomial degree n(|W| - 1).
    """
    _check_coprime(W)
    A = Algebra(W.p, W.n)
    H = theta_tilde(A, full_bases(A, D), check=False)
    R = theta_tilde(A, [invariant_basis(W, d, A) for d in range(D + 1)], check=False)
    gens: list[GradedElement] = []
    spanned = []
    for d in range(D + 1):
        N = len(A.monomials(d))
        target = [h.vector() for h in H[d]]
        rows = []
        for g in gens:
            if g.degree <= d:
                rows += [(g * r).vector() for r in R[d - g.degree]]
        basis = row_basis(rows, A.p, N) if rows else []
        for h, v in zip(H[d], target):
            if not in_span(v, basis, A.p):
                gens.append(h)
                basis = row_basis(basis + [v], A.p, N)
        spanned.append(_same_span(basis, target, A.p, N) if target else not basis)
    unit = 2 if A.odd else 1
    return GenerationWitness(gens, spanned, D, unit * W.n * (W.order - 1))


# ---------------------------------------------------------------------------
# CohI - CohIV for the Reynolds splitting

@dataclass
class CohReport:
    degree_bound: int
    violations: dict[str, list] = field(default_factory=lambda: {k: [] for k in
                                                                  ("I", "II", "III", "IV")})

    def passed(self, prop: str) -> bool:
        return not self.violations[prop]

    @property
    def ok(self) -> bool:
        return all(not v for v in self.violations.values())


def verify_coh_properties(W: MatrixGroup, D: int = DEFAULT_MAX_DEGREE,
                          transfer: Transfer | None = None) -> CohReport:
    """With f* the inclusion of invariants and t* the splitting (Reynolds by default):

    I    t* f* = id on invariants
    II   t*(f*(a) b) = a t*(b)
    III  t* commutes with Steenrod operations
    IV   f* is a map of unstable algebras (products and operations stay invariant)
    """
    _check_coprime(W)
    A = Algebra(W.p, W.n)
    t = transfer or functools.partial(reynolds, W)
    inv = [invariant_basis(W, d, A) for d in range(D + 1)]
    inv_rows = [[e.vector() for e in b] for b in inv]
    rep = CohReport(D)
    for d in range(D + 1):
        for a in inv[d]:
            if t(a) != a:
                rep.violations["I"].append((d, a))
    for i in range(D + 1):
        for a in inv[i]:
            for j in range(D + 1 - i):
                for m in A.monomials(j):
                    b = A.monomial(m)
                    if t(a * b) != a * t(b):
                        rep.violations["II"].append((a, b))
    for d in range(D + 1):
        for m in A.monomials(d):
            b = A.monomial(m)
            tb = t(b)
            for op, i in operations_up_to(A, d, D):
                if t(steenrod(op, b, i)) != steenrod(op, tb, i):
                    rep.violations["III"].append((op, i, b))
    for i in range(D + 1):
        for a in inv[i]:
            for j in range(i, D + 1 - i):
                for c in inv[j]:
                    prod = a * c
                    if not in_span(prod.vector(), inv_rows[i + j], A.p):
                        rep.violations["IV"].append(("product", a, c))
            for op, k in operations_up_to(A, i, D):
                img = steenrod(op, a, k)
                if img and not in_span(img.vector(), inv_rows[img.degree], A.p):
                    rep.violations["IV"].append((op, k, a))
    return rep
