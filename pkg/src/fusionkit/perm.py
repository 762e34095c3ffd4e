"""Permutations as tuples of images on the points 0..n-1.

Products compose right to left: ``mul(a, b)`` is the permutation ``x -> a[b[x]]``.
Cycle notation on input and output is 1-based.
"""
from __future__ import annotations

import re

Perm = tuple[int, ...]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class ParseError(ValueError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(a: Perm, b: Perm) -> Perm:
    return tuple(a[i] for i in b)


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def conj(g: Perm, x: Perm) -> Perm:
    """g x g^-1"""
    # (g x g^-1)(g(i)) = g(x(i))
    out = [0] * len(g)
    for i in range(len(g)):
        out[g[i]] = g[x[i]]
    return tuple(out)


def power(a: Perm, k: int) -> Perm:
    result = identity(len(a))
    base = a if k >= 0 else inverse(a)
    k = abs(k)
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def order(a: Perm) -> int:
    n, x = 1, a
    ident = identity(len(a))
    while x != ident:
        x = mul(x, a)
        n += 1
    return n


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse one permutation like ``(1 2 3)(4 5)``; the empty string is the identity."""
    text = text.strip()
    img = list(range(degree))
    if not text or text == "()":
        return tuple(img)
    if _CYCLE_RE.sub("", text).strip():
        raise ParseError(f"malformed cycle syntax: {text!r}")
    seen: set[int] = set()
    for body in _CYCLE_RE.findall(text):
        tokens = body.replace(",", " ").split()
        if not tokens:
            continue
        try:
            pts = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-integer point in cycle ({body})") from None
        for pt in pts:
            if not 1 <= pt <= degree:
                raise ParseError(f"point {pt} out of range 1..{degree}")
            if pt in seen:
                raise ParseError(f"point {pt} repeated in {text!r}")
            seen.add(pt)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def parse_generators(text: str, degree: int) -> list[Perm]:
    """Generators separated by ``;`` or newlines."""
    parts = [s for s in re.split(r"[;\n]", text) if s.strip()]
    return [parse_cycles(s, degree) for s in parts]


def to_cycles(a: Perm) -> str:
    seen = set()
    out = []
    for start in range(len(a)):
        if start in seen or a[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = a[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = a[j]
        out.append("(" + " ".join(str(i + 1) for i in cyc) + ")")
    return "".join(out) or "()"
