"""Concrete permutation groups with exhaustive subgroup machinery.

Everything here enumerates elements outright; groups are expected to be
small (the default order bound is 2000).  Subgroups are identified by their
sorted element tuple, so two subgroups are equal iff they have the same
elements.
"""
from __future__ import annotations

import functools
import itertools
import math
from collections.abc import Iterable, Sequence
from functools import cached_property

from . import perm as P
from .perm import Perm

DEFAULT_ORDER_BOUND = 2000


class OrderBoundExceeded(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


class NotCentric(ValueError):
    pass


def _closure(gens: Iterable[Perm], degree: int, bound: int) -> tuple[Perm, ...]:
    gens = [g for g in gens]
    ident = P.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = P.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > bound:
                        raise OrderBoundExceeded(f"group order exceeds bound {bound}")
        frontier = nxt
    return tuple(sorted(seen))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


class Group:
    """A permutation group of the given degree.

    ``elements`` is the full sorted element list, computed on demand from the
    generators by orbit enumeration.
    """

    def __init__(self, degree: int, generators: Sequence[Perm] = (), *,
                 elements: Sequence[Perm] | None = None, name: str | None = None,
                 order_bound: int = DEFAULT_ORDER_BOUND):
        self.degree = degree
        self.generators = tuple(tuple(g) for g in generators)
        for g in self.generators:
            if len(g) != degree:
                raise ValueError(f"generator of length {len(g)} in group of degree {degree}")
        self.name = name
        self.order_bound = order_bound
        if elements is not None:
            self.__dict__["elements"] = tuple(sorted(tuple(e) for e in elements))

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        return _closure(self.generators, self.degree, self.order_bound)

    @cached_property
    def _hash(self) -> int:
        return hash((self.degree, self.elements))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return self is other or (self.degree == other.degree and self.elements == other.elements)

    def __lt__(self, other: "Group") -> bool:
        return self.sort_key < other.sort_key

    @property
    def sort_key(self):
        return (len(self.elements), self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return tuple(x) in self.element_set

    def __repr__(self) -> str:
        label = self.name or "Group"
        return f"<{label} degree={self.degree} order={self.order}>"

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset[Perm]:
        return frozenset(self.elements)

    @cached_property
    def index(self) -> dict[Perm, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @property
    def identity(self) -> Perm:
        return P.identity(self.degree)

    @cached_property
    def gens(self) -> tuple[Perm, ...]:
        """A small generating set chosen greedily from the sorted element list."""
        chosen: list[Perm] = []
        span = {self.identity}
        for x in self.elements:
            if x not in span:
                chosen.append(x)
                span = set(_closure(chosen, self.degree, self.order_bound))
                if len(span) == self.order:
                    break
        return tuple(chosen)

    @cached_property
    def is_abelian(self) -> bool:
        gs = self.gens
        return all(P.mul(a, b) == P.mul(b, a) for a in gs for b in gs)

    def is_p_group(self, p: int) -> bool:
        return is_p_power(self.order, p)

    def subgroup(self, elements: Iterable[Perm] = (), *, gens: Iterable[Perm] | None = None,
                 name: str | None = None) -> "Subgroup":
        if gens is not None:
            gens = [tuple(g) for g in gens]
            for g in gens:
                if g not in self:
                    raise NotASubgroup(f"{P.to_cycles(g)} is not in the group")
            elems = _closure(gens, self.degree, self.order_bound)
            return Subgroup(self, elems, name=name)
        elems = tuple(sorted(set(tuple(e) for e in elements)))
        return Subgroup(self, elems, name=name, check=True)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, self.elements)

    def subgroups(self) -> list["Subgroup"]:
        return subgroups(self)


class Subgroup(Group):
    """A subgroup of ``parent``, itself usable as a group."""

    def __init__(self, parent: Group, elements: Sequence[Perm], *, name: str | None = None,
                 check: bool = False):
        super().__init__(parent.degree, (), elements=elements, name=name,
                         order_bound=parent.order_bound)
        self.parent = parent
        if check:
            es = self.element_set
            if not es <= parent.element_set:
                raise NotASubgroup("elements are not contained in the parent group")
            if self.identity not in es:
                raise NotASubgroup("identity missing")
            for a in self.gens:
                for b in self.elements:
                    if P.mul(a, b) not in es:
                        raise NotASubgroup("element set is not closed under composition")


def canonical(H: Group, parent: Group | None = None) -> Subgroup:
    """Subgroup with H's elements inside ``parent`` (default: H's own parent)."""
    parent = parent or getattr(H, "parent", H)
    return Subgroup(parent, H.elements)


def subgroups(G: Group, bound: int | None = None) -> list[Subgroup]:
    """All subgroups, sorted by (order, element tuple).  Built by cyclic extension."""
    bound = G.order_bound if bound is None else bound
    if G.order > bound:
        raise OrderBoundExceeded(f"|G| = {G.order} exceeds bound {bound}")
    cache = G.__dict__.setdefault("_subgroup_cache", {})
    if "all" in cache:
        return cache["all"]
    cyclic = {}
    for x in G.elements:
        c = _closure([x], G.degree, G.order_bound)
        cyclic.setdefault(c, x)
    found: dict[tuple, None] = {(G.identity,): None}
    frontier = [(G.identity,)]
    while frontier:
        nxt = []
        for H in frontier:
            hs = set(H)
            hgens = list(Group(G.degree, elements=H).gens)
            for c, x in cyclic.items():
                if x in hs:
                    continue
                J = _closure(hgens + [x], G.degree, G.order_bound)
                if J not in found:
                    found[J] = None
                    nxt.append(J)
        frontier = nxt
    result = [Subgroup(G, els) for els in sorted(found, key=lambda e: (len(e), e))]
    cache["all"] = result
    return result


def _check_sub(G: Group, H: Group, what: str = "P") -> None:
    if H.degree != G.degree or not H.element_set <= G.element_set:
        raise NotASubgroup(f"{what} is not contained in the group")


def centralizer(G: Group, H: Group) -> Subgroup:
    _check_sub(G, H)
    gens = H.gens
    return Subgroup(G, [g for g in G.elements if all(P.mul(g, h) == P.mul(h, g) for h in gens)])


def normalizer(G: Group, H: Group) -> Subgroup:
    _check_sub(G, H)
    hs = H.element_set
    gens = H.gens
    return Subgroup(G, [g for g in G.elements if all(P.conj(g, h) in hs for h in gens)])


def center(H: Group) -> Subgroup:
    gens = H.gens
    return Subgroup(getattr(H, "parent", H),
                    [g for g in H.elements if all(P.mul(g, h) == P.mul(h, g) for h in gens)])


def conjugate(H: Group, g: Perm, parent: Group | None = None) -> Subgroup:
    """g H g^-1"""
    parent = parent or getattr(H, "parent", H)
    return Subgroup(parent, [P.conj(g, h) for h in H.elements])


def transporter(G: Group, A: Group, B: Group) -> list[Perm]:
    """N_G(A, B) = {g in G : g A g^-1 <= B}."""
    _check_sub(G, A, "P")
    _check_sub(G, B, "Q")
    bs = B.element_set
    gens = A.gens
    return [g for g in G.elements if all(P.conj(g, a) in bs for a in gens)]


def conjugacy_class(G: Group, H: Group) -> list[Subgroup]:
    seen = {}
    for g in G.elements:
        K = conjugate(H, g, G)
        seen.setdefault(K.elements, K)
    return sorted(seen.values(), key=lambda K: K.sort_key)


def sylow(G: Group, p: int) -> Subgroup:
    """The Sylow p-subgroup of G with the least sorted element tuple."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = p_part(G.order, p)
    S: Group = G.trivial
    while S.order < target:
        N = normalizer(G, S)
        grown = None
        for g in N.elements:
            if g in S:
                continue
            k = P.order(g)
            g = P.power(g, k // p_part(k, p))
            if g in S:
                continue
            grown = Subgroup(G, _closure(list(S.gens) + [g], G.degree, G.order_bound))
            break
        assert grown is not None and grown.is_p_group(p)
        S = grown
    return min(conjugacy_class(G, S), key=lambda K: K.elements)


def p_prime_centralizer(G: Group, H: Group, p: int) -> Subgroup:
    """C'_G(H): the p'-part of C_G(H) = Z(H) x C'_G(H), for p-centric H."""
    C = centralizer(G, H)
    Z = center(H)
    if Z.order != p_part(C.order, p):
        raise NotCentric(f"Z(P) (order {Z.order}) is not Sylow in C_G(P) (order {C.order})")
    comp = [c for c in C.elements if P.order(c) % p != 0]
    K = Subgroup(G, comp)
    cs = K.element_set
    if any(P.mul(a, b) not in cs for a in comp for b in comp):
        raise NotCentric("p'-elements of C_G(P) do not form a subgroup")
    if Z.order * K.order != C.order or (Z.element_set & cs) != {G.identity}:
        raise NotCentric("C_G(P) does not split as Z(P) x C'_G(P)")
    return K


class GroupHom:
    """A homomorphism given by images of generators, validated on all pairs.

    ``table`` lists the image of each element of ``domain.elements`` in order.
    """

    def __init__(self, domain: Group, codomain: Group, images: dict[Perm, Perm] | Sequence[Perm],
                 *, validate: bool = True):
        self.domain = domain
        self.codomain = codomain
        if isinstance(images, dict):
            table = self._extend(images)
        else:
            table = tuple(tuple(x) for x in images)
            if len(table) != domain.order:
                raise ValueError("image table has the wrong length")
        self.table: tuple[Perm, ...] = table
        if validate:
            self._validate()

    def _extend(self, images: dict[Perm, Perm]) -> tuple[Perm, ...]:
        D = self.domain
        gens = list(images)
        if set(_closure(gens, D.degree, D.order_bound)) != D.element_set:
            raise ValueError("images must be given on a generating set of the domain")
        f = {D.identity: self.codomain.identity}
        frontier = [D.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = P.mul(x, g)
                    v = P.mul(f[x], tuple(images[g]))
                    if y not in f:
                        f[y] = v
                        nxt.append(y)
                    elif f[y] != v:
                        raise ValueError("generator images do not define a homomorphism")
            frontier = nxt
        return tuple(f[x] for x in D.elements)

    def _validate(self) -> None:
        D = self.domain
        cod = self.codomain.element_set
        f = self.mapping
        for v in self.table:
            if v not in cod:
                raise ValueError("image outside the codomain")
        for x in D.elements:
            fx = f[x]
            for y in D.elements:
                if f[P.mul(x, y)] != P.mul(fx, f[y]):
                    raise ValueError("map is not a homomorphism")

    @cached_property
    def mapping(self) -> dict[Perm, Perm]:
        return dict(zip(self.domain.elements, self.table))

    @property
    def images(self) -> dict[Perm, Perm]:
        return {g: self.mapping[g] for g in self.domain.gens}

    def __call__(self, x: Perm) -> Perm:
        return self.mapping[tuple(x)]

    @cached_property
    def injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def image(self, parent: Group | None = None) -> Subgroup:
        return Subgroup(parent or self.codomain, set(self.table))

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self o inner"""
        f = self.mapping
        return GroupHom(inner.domain, self.codomain, [f[v] for v in inner.table], validate=False)

    def restrict(self, H: Group) -> "GroupHom":
        f = self.mapping
        return GroupHom(H, self.codomain, [f[x] for x in H.elements], validate=False)

    def inverse(self) -> "GroupHom":
        if not self.injective:
            raise ValueError("not injective")
        img = self.image()
        inv = {v: k for k, v in self.mapping.items()}
        return GroupHom(img, self.domain, [inv[x] for x in img.elements], validate=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupHom) and self.domain == other.domain
                and self.codomain == other.codomain and self.table == other.table)

    def __hash__(self) -> int:
        return hash((self.domain, self.table))

    def __lt__(self, other: "GroupHom") -> bool:
        return self.table < other.table

    def __repr__(self) -> str:
        imgs = ", ".join(f"{P.to_cycles(g)}->{P.to_cycles(v)}" for g, v in self.images.items())
        return f"GroupHom({imgs})"


def automorphisms(S: Group, bound: int | None = None) -> list[GroupHom]:
    """All automorphisms of S, sorted by image table."""
    bound = S.order_bound if bound is None else bound
    if S.order > bound:
        raise OrderBoundExceeded(f"|S| = {S.order} exceeds bound {bound}")
    gens = S.gens
    by_order: dict[int, list[Perm]] = {}
    for x in S.elements:
        by_order.setdefault(P.order(x), []).append(x)
    choices = [by_order[P.order(g)] for g in gens]
    out = []
    for imgs in itertools.product(*choices):
        try:
            phi = GroupHom(S, S, dict(zip(gens, imgs)), validate=False)
        except ValueError:
            continue
        if phi.injective:
            phi._validate()
            out.append(phi)
    return sorted(out, key=lambda f: f.table)


def automorphism_group(S: Group) -> Group:
    """Aut(S) acting on the indices of ``S.elements`` (degree |S|)."""
    idx = S.index
    perms = [tuple(idx[v] for v in f.table) for f in automorphisms(S)]
    G = Group(S.order, elements=perms, name="Aut")
    G.__dict__["base"] = S
    return G


def aut_to_hom(S: Group, w: Perm) -> GroupHom:
    """Interpret an index permutation from ``automorphism_group(S)`` as a GroupHom."""
    return GroupHom(S, S, [S.elements[w[i]] for i in range(S.order)], validate=False)


def hom_to_aut(f: GroupHom) -> Perm:
    idx = f.domain.index
    return tuple(idx[v] for v in f.table)


def semidirect_product(W: Group | Sequence[Perm], S: Group) -> Group:
    """W x| S acting on the points of S: S by left translation, W as automorphisms.

    The result carries ``.base`` (the translation copy of S) and ``.embedding``
    (the isomorphism S -> base).
    """
    if not isinstance(W, Group):
        W = list(W)
        ws = set(W)
        if any(P.mul(a, b) not in ws for a in W for b in W):
            raise ValueError("W is not closed under composition")
        W = Group(S.order, elements=W)
    if W.degree != S.order:
        raise ValueError("W must act on the element indices of S")
    for w in W.gens:
        aut_to_hom(S, w)._validate()
    idx = S.index
    translations = {s: tuple(idx[P.mul(s, x)] for x in S.elements) for s in S.elements}
    G = Group(S.order, list(W.gens) + [translations[s] for s in S.gens], name="semidirect")
    if G.order != W.order * S.order:
        raise ValueError("W does not act faithfully by automorphisms")
    emb = GroupHom(S, G, [translations[s] for s in S.elements])
    G.base = emb.image(G)
    G.embedding = emb
    return G


class DirectProduct(Group):
    """G x H acting on the disjoint union of their points."""

    def __init__(self, G: Group, H: Group):
        self.left, self.right = G, H
        shift = G.degree
        elements = [a + tuple(shift + i for i in b) for a in G.elements for b in H.elements]
        super().__init__(G.degree + H.degree, (), elements=elements,
                         name=f"({G.name or 'G'} x {H.name or 'H'})",
                         order_bound=max(G.order_bound, G.order * H.order))

    def pair(self, a: Perm, b: Perm) -> Perm:
        shift = self.left.degree
        return tuple(a) + tuple(shift + i for i in b)

    def split(self, x: Perm) -> tuple[Perm, Perm]:
        n = self.left.degree
        return x[:n], tuple(i - n for i in x[n:])


@functools.lru_cache(maxsize=None)
def direct_product(G: Group, H: Group) -> DirectProduct:
    return DirectProduct(G, H)


def abelian_basis(A: Group) -> list[tuple[Perm, int]]:
    """Basis of a finite abelian group as (generator, prime-power order) pairs."""
    if not A.is_abelian:
        raise ValueError("group is not abelian")
    n = A.order
    primes = [q for q in range(2, n + 1) if n % q == 0 and is_prime(q)]
    basis: list[tuple[Perm, int]] = []
    for q in primes:
        part = [x for x in A.elements if is_p_power(P.order(x), q)]
        # type of the q-primary part from counts of elements killed by q^k
        counts = []
        k = 0
        while True:
            c = sum(1 for x in part if (q ** k) % P.order(x) == 0)
            counts.append(c)
            if c == len(part):
                break
            k += 1
        # number of cyclic factors of order >= q^k is log_q(counts[k]/counts[k-1])
        ge = [round(math.log(counts[i] // counts[i - 1], q)) for i in range(1, len(counts))]
        orders = []
        for i in range(len(ge)):
            mult = ge[i] - (ge[i + 1] if i + 1 < len(ge) else 0)
            orders += [q ** (i + 1)] * mult
        orders.sort(reverse=True)
        basis += _find_basis(part, orders, A)
    return basis


def _find_basis(part, orders, A):
    def rec(chosen, span):
        if len(chosen) == len(orders):
            return chosen
        o = orders[len(chosen)]
        for x in part:
            if P.order(x) != o:
                continue
            new = _closure([g for g, _ in chosen] + [x], A.degree, A.order_bound)
            if len(new) == len(span) * o:
                got = rec(chosen + [(x, o)], new)
                if got is not None:
                    return got
        return None

    out = rec([], (A.identity,))
    assert out is not None
    return out


def coordinates(A: Group, basis: list[tuple[Perm, int]]) -> dict[Perm, tuple[int, ...]]:
    """Map each element of abelian A to its coordinate vector in ``basis``."""
    out = {}
    for coeffs in itertools.product(*[range(o) for _, o in basis]):
        x = A.identity
        for (g, _), c in zip(basis, coeffs):
            x = P.mul(x, P.power(g, c))
        out[x] = coeffs
    assert len(out) == A.order
    return out
