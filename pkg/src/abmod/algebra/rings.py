"""Finite composite rings: quotients F[x]/(h), products S^r, truncations R[x]/(x^m).

All of them enumerate their elements in lexicographic order of the
underlying coefficient vectors (first coordinate slowest), which is what the
oracle relies on for reproducible witnesses.
"""
from __future__ import annotations

import itertools
from typing import Sequence

from ..errors import InputError
from . import upoly
from .base import Ring


class QuotientRing(Ring):
    """F[x]/(h) for a field F and a monic h of positive degree."""

    def __init__(self, field, modulus: Sequence, name: str = "x"):
        h = upoly.monic(field, upoly.trim(field, modulus))
        if upoly.deg(h) < 1:
            raise InputError("quotient modulus must have positive degree")
        self.field, self.modulus, self.name = field, h, name
        self.degree = upoly.deg(h)
        self.size = field.size**self.degree if field.size else None
        self.characteristic = field.characteristic
        self.zero = ()
        self.one = upoly.const(field, field.one)
        self.is_field = upoly.is_irreducible(field, h) if hasattr(field, "q") else False

    def reduce(self, f):
        return upoly.rem(self.field, upoly.trim(self.field, f), self.modulus)

    def add(self, a, b):
        return upoly.add(self.field, a, b)

    def neg(self, a):
        return upoly.neg(self.field, a)

    def sub(self, a, b):
        return upoly.sub(self.field, a, b)

    def mul(self, a, b):
        return upoly.mulmod(self.field, a, b, self.modulus)

    def from_int(self, n):
        return upoly.const(self.field, self.field.from_int(n))

    def is_zero(self, a):
        return not a

    def elements(self):
        F = self.field
        for vec in itertools.product(list(F.elements()), repeat=self.degree):
            yield upoly.trim(F, vec)

    def gen(self):
        return self.reduce(upoly.x_poly(self.field))

    def fmt(self, a) -> str:
        return fmt_poly(self.field, a, self.name)

    def __repr__(self):
        return f"{self.field!r}[{self.name}]/({fmt_poly(self.field, self.modulus, self.name)})"


class ProductRing(Ring):
    """The r-fold direct product S^r with componentwise operations."""

    def __init__(self, base: Ring, r: int):
        if r < 1:
            raise InputError("product arity must be positive")
        self.base, self.r = base, r
        self.size = base.size**r if base.size else None
        self.characteristic = base.characteristic
        self.zero = (base.zero,) * r
        self.one = (base.one,) * r

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        B = self.base
        return tuple(B.mul(x, y) for x, y in zip(a, b))

    def from_int(self, n):
        return (self.base.from_int(n),) * self.r

    def is_zero(self, a):
        B = self.base
        return all(B.is_zero(x) for x in a)

    def elements(self):
        return itertools.product(list(self.base.elements()), repeat=self.r)

    def fmt(self, a):
        return "(" + ", ".join(self.base.fmt(x) for x in a) + ")"

    def __repr__(self):
        return f"({self.base!r})^{self.r}"


class TableRing(Ring):
    """A small finite ring re-encoded as 0..N-1 with precomputed operation tables.

    Same ring, same element order as ``base``; only arithmetic is memoized.
    Used by the oracle where one ring is enumerated many thousands of times.
    """

    def __init__(self, base: Ring):
        elems = list(base.elements())
        if not elems:
            raise InputError("cannot tabulate an empty ring")
        index = {a: i for i, a in enumerate(elems)}
        self.base, self.elems = base, elems
        self.size = len(elems)
        self.characteristic = base.characteristic
        self.is_field = base.is_field
        self.zero, self.one = index[base.zero], index[base.one]
        self._add = [[index[base.add(a, b)] for b in elems] for a in elems]
        self._mul = [[index[base.mul(a, b)] for b in elems] for a in elems]
        self._neg = [index[base.neg(a)] for a in elems]
        self._index = index

    def add(self, a, b):
        return self._add[a][b]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def from_int(self, n):
        return self._index[self.base.from_int(n)]

    def elements(self):
        return iter(range(self.size))

    def lift(self, a):
        return self.elems[a]

    def fmt(self, a):
        return self.base.fmt(self.elems[a])

    def __repr__(self):
        return repr(self.base)


class TruncPolyRing(Ring):
    """R[x]/(x^m) over an arbitrary commutative ring R.

    Elements are coefficient tuples with trailing zeros stripped, so sparse
    elements (the common case in searches) stay short.
    """

    var = "x"

    def __init__(self, base: Ring, m: int):
        if m < 1:
            raise InputError("truncation order must be positive")
        self.base, self.m = base, m
        self.size = base.size**m if base.size else None
        self.characteristic = base.characteristic
        self.zero = ()
        self.one = self._trim((base.one,))
        self._fast_p = base.p if getattr(base, "k", None) == 1 else None

    def _trim(self, coeffs):
        B = self.base
        n = len(coeffs)
        while n and B.is_zero(coeffs[n - 1]):
            n -= 1
        return tuple(coeffs[:n])

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return a
        B = self.base
        out = list(a)
        for i, c in enumerate(b):
            out[i] = B.add(out[i], c)
        return self._trim(out)

    def neg(self, a):
        B = self.base
        return tuple(B.neg(c) for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        m = self.m
        n = min(len(a) + len(b) - 1, m)
        p = self._fast_p
        if p is not None:
            out = [0] * n
            nb = [(j, c) for j, c in enumerate(b) if c]
            for i, x in enumerate(a):
                if x and i < n:
                    for j, y in nb:
                        if i + j >= n:
                            break
                        out[i + j] += x * y
            return self._trim([c % p for c in out])
        B = self.base
        out = [B.zero] * n
        nb = [(j, c) for j, c in enumerate(b) if not B.is_zero(c)]
        for i, x in enumerate(a):
            if i >= n or B.is_zero(x):
                continue
            for j, y in nb:
                if i + j >= n:
                    break
                out[i + j] = B.add(out[i + j], B.mul(x, y))
        return self._trim(out)

    def from_int(self, n):
        return self._trim((self.base.from_int(n),))

    def scalar(self, c):
        return self._trim((c,))

    def is_zero(self, a):
        return not a

    def monomial(self, c, i: int):
        """c * x^i (zero when i >= m)."""
        if i >= self.m or self.base.is_zero(c):
            return ()
        return (self.base.zero,) * i + (c,)

    def order(self, a) -> int:
        """Index of the lowest nonzero coefficient; m for the zero element."""
        B = self.base
        for i, c in enumerate(a):
            if not B.is_zero(c):
                return i
        return self.m

    def elements(self):
        for vec in itertools.product(list(self.base.elements()), repeat=self.m):
            yield self._trim(vec)

    def fmt(self, a):
        return fmt_poly(self.base, a, self.var)

    def __repr__(self):
        return f"{self.base!r}[{self.var}]/({self.var}^{self.m})"


def fmt_poly(F, f, name="x") -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if F.is_zero(c):
            continue
        cs = F.fmt(c)
        if i == 0:
            terms.append(cs)
            continue
        mono = name if i == 1 else f"{name}^{i}"
        if cs == "1":
            terms.append(mono)
        elif " " in cs or cs.startswith("("):
            terms.append(f"({cs})*{mono}")
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms) if terms else "0"


class CRT:
    """Chinese remainder decomposition F[x]/(m_1 ... m_s) = prod F[x]/(m_i).

    ``moduli`` must be pairwise coprime; each component ring is a
    :class:`QuotientRing`.
    """

    def __init__(self, field, moduli: Sequence[Sequence], name: str = "x"):
        F = field
        self.field = F
        self.moduli = [upoly.monic(F, upoly.trim(F, m)) for m in moduli]
        for a, b in itertools.combinations(self.moduli, 2):
            if upoly.deg(upoly.gcd(F, a, b)) > 0:
                raise InputError("CRT moduli are not pairwise coprime")
        total = upoly.const(F, F.one)
        for m in self.moduli:
            total = upoly.mul(F, total, m)
        self.ring = QuotientRing(F, total, name)
        self.components = [QuotientRing(F, m, name) for m in self.moduli]
        self._idempotents = []
        for m in self.moduli:
            cofactor = upoly.quo(F, total, m)
            e = upoly.mul(F, cofactor, upoly.invmod(F, upoly.rem(F, cofactor, m), m))
            self._idempotents.append(upoly.rem(F, e, total))

    def split(self, a) -> tuple:
        return tuple(upoly.rem(self.field, a, m) for m in self.moduli)

    def join(self, parts) -> tuple:
        F, R = self.field, self.ring
        acc = ()
        for e, c in zip(self._idempotents, parts):
            acc = upoly.add(F, acc, upoly.mul(F, e, c))
        return R.reduce(acc)


def crt_split(field, moduli, a):
    return CRT(field, moduli).split(a)


def crt_join(field, moduli, parts):
    return CRT(field, moduli).join(parts)


def power_quotient_iso(R: Ring, m: int, kappa: int):
    """The mutually inverse isomorphisms R^kappa[x]/(x^m) <-> (R[x]/(x^m))^kappa.

    Returns ``(f, g, source, target)`` where ``source`` and ``target`` are
    the two ring objects and f: source -> target, g: target -> source.
    """
    source = TruncPolyRing(ProductRing(R, kappa), m)
    target = ProductRing(TruncPolyRing(R, m), kappa)
    inner = target.base

    def f(a):
        padded = list(a) + [source.base.zero] * (m - len(a))
        return tuple(inner._trim([padded[j][i] for j in range(m)]) for i in range(kappa))

    def g(b):
        cols = [list(bi) + [R.zero] * (m - len(bi)) for bi in b]
        return source._trim([tuple(cols[i][j] for i in range(kappa)) for j in range(m)])

    return f, g, source, target
