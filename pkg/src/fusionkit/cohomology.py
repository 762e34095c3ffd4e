"""Low-degree group cohomology H^k(W; M) from explicit bar cochains.

M is a finite abelian group written as a sum of cyclic groups of prime-power
order.  The computation runs one primary component at a time over Z/p^K,
where p^K is the exponent of that component, using a Smith normal form over
the local ring Z/p^K.
"""
from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from . import perm as P
from .groups import Group, OrderBoundExceeded, abelian_basis, coordinates, is_p_power, is_prime
from .perm import Perm

MAX_DEGREE = 3
COCHAIN_ENTRY_BOUND = 50_000_000


def snf_local(A: np.ndarray, p: int, K: int, track: bool = False):
    """Smith form of an integer matrix over Z/p^K.

    Returns the diagonal valuations (length min(m, n); K stands for zero) and,
    if ``track``, column transforms (V, Vinv) with A V ~ diag up to row operations.
    """
    q = p ** K
    A = np.array(A, dtype=np.int64) % q
    m, n = A.shape
    V = np.eye(n, dtype=np.int64) if track else None
    Vinv = np.eye(n, dtype=np.int64) if track else None
    vals = []
    for t in range(min(m, n)):
        sub = A[t:, t:]
        nz = np.argwhere(sub != 0)
        if nz.size == 0:
            vals += [K] * (min(m, n) - t)
            break
        best, bi, bj = K + 1, 0, 0
        for level in range(K):
            hits = np.argwhere((sub % (p ** (level + 1)) != 0))
            if hits.size:
                best = level
                bi, bj = hits[0]
                break
        bi += t
        bj += t
        if bi != t:
            A[[t, bi]] = A[[bi, t]]
        if bj != t:
            A[:, [t, bj]] = A[:, [bj, t]]
            if track:
                V[:, [t, bj]] = V[:, [bj, t]]
                Vinv[[t, bj]] = Vinv[[bj, t]]
        piv = int(A[t, t])
        pv = p ** best
        unit = piv // pv
        uinv = pow(unit, -1, q)
        A[:, t] = (A[:, t] * uinv) % q
        if track:
            V[:, t] = (V[:, t] * uinv) % q
            Vinv[t] = (Vinv[t] * unit) % q
        # A[t, t] == p^best now; every remaining entry is divisible by it
        col = A[t + 1:, t] // pv
        if col.any():
            A[t + 1:] = (A[t + 1:] - np.outer(col, A[t])) % q
        row = A[t, t + 1:] // pv
        if row.any():
            A[:, t + 1:] = (A[:, t + 1:] - np.outer(A[:, t], row)) % q
            if track:
                V[:, t + 1:] = (V[:, t + 1:] - np.outer(V[:, t], row)) % q
                Vinv[t] = (Vinv[t] + row @ Vinv[t + 1:]) % q
        vals.append(best)
    return (vals, V, Vinv) if track else vals


@dataclass
class GModule:
    """A finite abelian group with a W-action.

    ``carrier`` lists the cyclic orders (prime powers) of a basis; ``action``
    maps each element of W to an integer matrix M with M[i][j] the i-th
    coordinate of the image of basis vector j.
    """
    group: Group
    carrier: list[int]
    action: dict[Perm, np.ndarray] = field(repr=False)

    def __post_init__(self):
        for o in self.carrier:
            if not any(is_p_power(o, q) for q in range(2, o + 1)) or o < 2:
                raise ValueError(f"carrier orders must be prime powers, got {o}")
        r = len(self.carrier)
        mats = {g: np.array(m, dtype=np.int64).reshape(r, r) for g, m in self.action.items()}
        W = self.group
        if set(mats) != W.element_set:
            mats = self._extend(mats)
        self.action = mats
        self._check()

    def _extend(self, gen_mats):
        W = self.group
        r = len(self.carrier)
        full = {W.identity: np.eye(r, dtype=np.int64)}
        frontier = [W.identity]
        gens = list(gen_mats)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = P.mul(x, g)
                    if y not in full:
                        full[y] = self._reduce(full[x] @ gen_mats[g])
                        nxt.append(y)
            frontier = nxt
        if len(full) != W.order:
            raise ValueError("action given on a non-generating set")
        return full

    def _reduce(self, M):
        orders = np.array(self.carrier, dtype=np.int64)
        return M % orders[:, None]

    def _check(self):
        W = self.group
        red = self._reduce
        for g in W.gens:
            for h in W.elements:
                if not np.array_equal(red(self.action[g] @ self.action[h]),
                                      red(self.action[P.mul(g, h)])):
                    raise ValueError("action does not respect the group relations")
        # well-defined on Z/n_j: n_j * column j vanishes in every coordinate
        for g, M in self.action.items():
            for j, o in enumerate(self.carrier):
                if red(M[:, j:j + 1] * o).any():
                    raise ValueError("action matrix not well defined on the carrier")
        for g in W.gens:
            if not self._is_bijective(self.action[g]):
                raise ValueError("action matrix is not invertible on the carrier")

    def _is_bijective(self, M) -> bool:
        vecs = np.array(list(itertools.product(*[range(o) for o in self.carrier])),
                        dtype=np.int64).reshape(-1, len(self.carrier))
        images = self._reduce(M @ vecs.T).T
        return len({tuple(v) for v in images}) == len(vecs)

    @classmethod
    def from_automorphisms(cls, W: Group, S: Group) -> "GModule":
        """S abelian, W acting on the element indices of S (see automorphism_group)."""
        basis = abelian_basis(S)
        coords = coordinates(S, basis)
        action = {}
        for w in W.gens:
            cols = [coords[S.elements[w[S.index[b]]]] for b, _ in basis]
            action[w] = np.array(cols, dtype=np.int64).T.reshape(len(basis), len(basis))
        return cls(W, [o for _, o in basis], action)

    @property
    def order(self) -> int:
        return int(np.prod(self.carrier)) if self.carrier else 1


def _primary_parts(M: GModule):
    primes = sorted({q for o in M.carrier for q in range(2, o + 1) if o % q == 0 and is_prime(q)})
    for q in primes:
        yield q, [i for i, o in enumerate(M.carrier) if o % q == 0]


def _coboundary(M: GModule, idx: list[int], k: int, q: int) -> np.ndarray:
    """Matrix of d: C^k -> C^{k+1} on the free cover, entries mod q."""
    W = M.group
    els = W.elements
    widx = W.index
    r = len(idx)
    nW = len(els)
    rows = r * nW ** (k + 1)
    cols = r * nW ** k
    if rows * cols > COCHAIN_ENTRY_BOUND:
        raise OrderBoundExceeded(f"cochain matrix {rows}x{cols} too large")
    D = np.zeros((rows, cols), dtype=np.int64)
    mats = {g: M.action[g][np.ix_(idx, idx)] for g in els}

    def cidx(tup):
        n = 0
        for t in tup:
            n = n * nW + t
        return n

    for tup in itertools.product(range(nW), repeat=k + 1):
        row0 = cidx(tup) * r
        g1 = els[tup[0]]
        # g1 . f(g2..g_{k+1})
        c = cidx(tup[1:]) * r
        D[row0:row0 + r, c:c + r] += mats[g1]
        for i in range(k):
            merged = tup[:i] + (widx[P.mul(els[tup[i]], els[tup[i + 1]])],) + tup[i + 2:]
            c = cidx(merged) * r
            D[row0:row0 + r, c:c + r] += ((-1) ** (i + 1)) * np.eye(r, dtype=np.int64)
        c = cidx(tup[:k]) * r
        D[row0:row0 + r, c:c + r] += ((-1) ** (k + 1)) * np.eye(r, dtype=np.int64)
    return D % q


def _primary_cohomology(M: GModule, idx: list[int], p: int, k: int) -> list[int]:
    exps = []
    for i in idx:
        o, e = M.carrier[i], 0
        while o > 1:
            o //= p
            e += 1
        exps.append(e)
    K = max(exps)
    q = p ** K
    r = len(idx)
    nW = M.group.order
    n = r * nW ** k
    comp_exp = np.array(exps * (nW ** k), dtype=np.int64)

    D = _coboundary(M, idx, k, q)
    next_exp = np.array(exps * (nW ** (k + 1)), dtype=np.int64)
    scale = np.array([p ** (K - e) for e in next_exp], dtype=np.int64)
    Dp = (D * scale[:, None]) % q
    vals, V, Vinv = snf_local(Dp, p, K, track=True)
    c = np.zeros(n, dtype=np.int64)
    for i, v in enumerate(vals):
        c[i] = max(K - v, 0)

    gens = []
    if k > 0:
        gens.append(_coboundary(M, idx, k - 1, q))
    gens.append(np.diag([p ** int(e) for e in comp_exp]).astype(np.int64) % q)
    B = np.concatenate(gens, axis=1) % q
    By = (Vinv @ B) % q
    div = np.array([p ** int(ci) for ci in c], dtype=np.int64)
    if ((By % div[:, None]) != 0).any():
        raise ArithmeticError("boundaries not contained in cycles")
    Bz = (By // div[:, None]) % q
    rel = np.concatenate([Bz, np.diag([p ** int(K - ci) for ci in c]).astype(np.int64) % q], axis=1)
    vals = snf_local(rel, p, K)
    return sorted(p ** v for v in vals if v > 0)


def invariant_factors(primary: list[int]) -> list[int]:
    """Combine prime-power cyclic orders into invariant factors d1 | d2 | ..."""
    by_prime: dict[int, list[int]] = {}
    for o in primary:
        q = next(d for d in range(2, o + 1) if o % d == 0)
        by_prime.setdefault(q, []).append(o)
    length = max((len(v) for v in by_prime.values()), default=0)
    out = [1] * length
    for v in by_prime.values():
        v.sort(reverse=True)
        for i, o in enumerate(v):
            out[length - 1 - i] *= o
    return out


def group_cohomology(M: GModule, k: int) -> list[int]:
    """H^k(W; M) as its invariant factors; [] is the zero group."""
    if not 0 <= k <= MAX_DEGREE:
        raise ValueError(f"degree must lie in 0..{MAX_DEGREE}")
    primary: list[int] = []
    for p, idx in _primary_parts(M):
        primary += _primary_cohomology(M, idx, p, k)
    return invariant_factors(primary)


def cohomology_order(factors: Sequence[int]) -> int:
    out = 1
    for f in factors:
        out *= f
    return out
