"""Coefficients in Z_(p): exact fractions with denominator prime to p, or residues mod p^m."""
from __future__ import annotations

import math
from fractions import Fraction


class NotLocal(ValueError):
    """A denominator divisible by p."""


def as_local(x, p: int) -> Fraction:
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NotLocal(f"{x} is not in Z_({p})")
    return x


def is_local(x, p: int) -> bool:
    return Fraction(x).denominator % p != 0


class Residue:
    """An element of Z/p^m, read as a truncated element of Z_(p)."""

    __slots__ = ("value", "p", "m")

    def __init__(self, value, p: int, m: int):
        if m < 1:
            raise ValueError("precision must be at least 1")
        q = p ** m
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise NotLocal(f"{value} is not in Z_({p})")
            value = value.numerator * pow(value.denominator, -1, q)
        self.value = int(value) % q
        self.p = p
        self.m = m

    @property
    def modulus(self) -> int:
        return self.p ** self.m

    def _lift(self, other) -> "Residue":
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ValueError("prime mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Residue(Fraction(other), self.p, self.m)
        return NotImplemented

    def _pair(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return None
        m = min(self.m, o.m)
        return m, self.value, o.value

    def __add__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        m, a, b = t
        return Residue(a + b, self.p, m)

    __radd__ = __add__

    def __neg__(self):
        return Residue(-self.value, self.p, self.m)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        m, a, b = t
        return Residue(a * b, self.p, m)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.value % self.p == 0:
            raise ZeroDivisionError("division by a non-unit")
        m = min(self.m, o.m)
        return Residue(self.value * pow(o.value, -1, self.p ** m), self.p, m)

    def __eq__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        m, a, b = t
        return (a - b) % self.p ** m == 0

    def __hash__(self):
        return hash((self.value, self.p, self.m))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Residue({self.value} mod {self.p}^{self.m})"

    def reconstruct(self) -> Fraction | None:
        r = rational_reconstruction(self.value, self.modulus)
        if r is None or r.denominator % self.p == 0:
            return None
        return r


def rational_reconstruction(a: int, modulus: int) -> Fraction | None:
    """The fraction n/d = a mod ``modulus`` with |n|, d <= sqrt(modulus/2), if one exists."""
    bound = math.isqrt(modulus // 2)
    r0, r1 = modulus, a % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(abs(s1), modulus) != 1:
        return None
    return Fraction(r1, s1)


def to_residue(x, p: int, m: int) -> Residue:
    if isinstance(x, Residue):
        return Residue(x.value, p, min(m, x.m))
    return Residue(Fraction(x), p, m)
