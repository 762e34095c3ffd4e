"""Small permutation groups used as a test corpus and by the CLI."""
from __future__ import annotations

from . import perm as P
from .groups import Group


def cyclic(n: int) -> Group:
    return Group(max(n, 1), [tuple((i + 1) % n for i in range(n))] if n > 1 else [],
                 name=f"C{n}")


def dihedral(order: int) -> Group:
    """Dihedral group of the given order (>= 4) acting on order/2 points."""
    if order < 4 or order % 2:
        raise ValueError("dihedral order must be even and at least 4")
    n = order // 2
    if n == 2:
        return Group(4, [P.parse_cycles("(1 2)", 4), P.parse_cycles("(3 4)", 4)], name="D4")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return Group(n, [rot, ref], name=f"D{order}")


def symmetric(n: int) -> Group:
    if n < 2:
        return Group(max(n, 1), [], name=f"Sym{n}")
    gens = [tuple((i + 1) % n for i in range(n)), P.parse_cycles("(1 2)", n)]
    return Group(n, gens, name=f"Sym{n}")


def alternating(n: int) -> Group:
    if n < 3:
        return Group(max(n, 1), [], name=f"Alt{n}")
    gens = [P.parse_cycles(f"(1 2 {k})", n) for k in range(3, n + 1)]
    return Group(n, gens, name=f"Alt{n}")


def quaternion() -> Group:
    """Q8 in its regular representation on 8 points."""
    i = P.parse_cycles("(1 2 3 4)(5 6 7 8)", 8)
    j = P.parse_cycles("(1 5 3 7)(2 8 4 6)", 8)
    return Group(8, [i, j], name="Q8")


def elementary_abelian(p: int, n: int) -> Group:
    deg = p * n
    gens = []
    for k in range(n):
        img = list(range(deg))
        for a in range(p):
            img[k * p + a] = k * p + (a + 1) % p
        gens.append(tuple(img))
    return Group(deg, gens, name=f"E{p}^{n}")


def z2_times_s3() -> Group:
    return Group(5, P.parse_generators("(1 2 3); (1 2); (4 5)", 5), name="C2xSym3")


def corpus() -> list[Group]:
    """The groups of the saturation sweep: all of order at most 100."""
    groups = [cyclic(n) for n in range(2, 13)] + [cyclic(16), cyclic(27)]
    groups += [dihedral(m) for m in (4, 6, 8, 10, 12, 16, 18, 20, 24)]
    groups += [symmetric(3), symmetric(4), alternating(4), quaternion(), z2_times_s3()]
    return groups


NAMED = {
    "s3": lambda: symmetric(3),
    "s4": lambda: symmetric(4),
    "a4": lambda: alternating(4),
    "q8": quaternion,
    "v4": lambda: elementary_abelian(2, 2),
    "d8": lambda: dihedral(8),
    "z2xs3": z2_times_s3,
}
