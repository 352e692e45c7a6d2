"""Minimal ring protocol.

Every ring object works on plain hashable values (ints, tuples, Fractions)
and exposes its operations as methods.  Values never carry a reference to
their ring, which keeps hot loops (enumeration, series products) cheap; the
user-facing wrappers in :mod:`abmod.algebra.series` add context checks on top.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator


class Ring:
    zero = 0
    one = 1
    size: int | None = None
    is_field = False
    characteristic = 0

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, n: int):
        """Image of ``n`` under the characteristic map Z -> ring."""
        if n < 0:
            return self.neg(self.from_int(-n))
        acc, base = self.zero, self.one
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def pow(self, a, n: int):
        if n < 0:
            raise ValueError("negative exponent in a ring")
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def sum(self, items: Iterable):
        acc = self.zero
        for x in items:
            acc = self.add(acc, x)
        return acc

    def elements(self) -> Iterator:
        raise TypeError(f"{self!r} is not enumerable")

    def fmt(self, a) -> str:
        return str(a)


class IntegerRing(Ring):
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return n

    def pow(self, a, n):
        return a**n

    def __repr__(self):
        return "ZZ"


class RationalField(Ring):
    is_field = True
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def from_int(self, n):
        return Fraction(n)

    def pow(self, a, n):
        return Fraction(a) ** n

    def __repr__(self):
        return "QQ"


ZZ = IntegerRing()
QQ = RationalField()
