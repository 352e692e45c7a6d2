"""Sparse multivariate polynomials with exact coefficients.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable
name, so polynomials need no shared registry to be compared or combined.
Coefficients live in a pluggable ring (ZZ by default); zero coefficients are
never stored.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .base import ZZ, Ring

Monomial = tuple


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Poly:
    __slots__ = ("terms", "ring", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, ring: Ring = ZZ):
        self.ring = ring
        clean = {}
        for m, c in (terms or {}).items():
            if not ring.is_zero(c):
                clean[tuple(sorted((v, e) for v, e in m if e))] = c
        self.terms = clean
        self._hash = None

    # -- constructors --------------------------------------------------------
    @classmethod
    def const(cls, c, ring: Ring = ZZ) -> "Poly":
        return cls({(): c}, ring)

    @classmethod
    def var(cls, name: str, ring: Ring = ZZ) -> "Poly":
        return cls({((name, 1),): ring.one}, ring)

    @classmethod
    def from_dense(cls, coeffs: Sequence, var: str = "x", ring: Ring = ZZ) -> "Poly":
        return cls({((var, i),) if i else (): c for i, c in enumerate(coeffs)}, ring)

    # -- structure -------------------------------------------------------------
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted({v for m in self.terms for v, _ in m}))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_term(self):
        return self.terms.get((), self.ring.zero)

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        if not self.terms:
            return -1
        return max(dict(m).get(var, 0) for m in self.terms)

    def sorted_terms(self, order: Sequence[str] | None = None):
        """Terms in graded lexicographic order (largest first)."""
        order = list(order) if order is not None else list(self.variables())
        for v in self.variables():
            if v not in order:
                order.append(v)

        def key(m):
            d = dict(m)
            vec = tuple(d.get(v, 0) for v in order)
            return (sum(vec), vec)

        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- arithmetic ------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly.const(self.ring.from_int(other), self.ring)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        R = self.ring
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = R.add(out[m], c) if m in out else c
        return Poly(out, R)

    __radd__ = __add__

    def __neg__(self):
        R = self.ring
        return Poly({m: R.neg(c) for m, c in self.terms.items()}, R)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        R = self.ring
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = R.mul(c1, c2)
                out[m] = R.add(out[m], c) if m in out else c
        return Poly(out, R)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(self.ring.one, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(other) if self.ring is ZZ else self._coerce(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- substitution / evaluation -------------------------------------------------
    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            out[tuple(sorted((mapping.get(v, v), e) for v, e in m))] = c
        return Poly(out, self.ring)

    def reduce(self, target: Ring) -> "Poly":
        """Coefficientwise image in ``target`` (characteristic map from ZZ)."""
        return Poly({m: target.from_int(c) for m, c in self.terms.items()}, target)

    def evaluate(self, ring: Ring, values: Mapping[str, object]):
        """Value in ``ring`` at the assignment ``values`` (ZZ coefficients are mapped in)."""
        coerce = ring.from_int if self.ring is ZZ else (lambda c: c)
        cache: dict = {}
        acc = ring.zero
        for m, c in self.terms.items():
            term = coerce(c)
            for v, e in m:
                key = (v, e)
                if key not in cache:
                    cache[key] = ring.pow(values[v], e)
                term = ring.mul(term, cache[key])
            acc = ring.add(acc, term)
        return acc

    def compile(self, ring: Ring, order: Sequence[str]):
        """Fast evaluator ``f(values_tuple) -> element`` for repeated evaluation."""
        index = {v: i for i, v in enumerate(order)}
        coerce = ring.from_int if self.ring is ZZ else (lambda c: c)
        terms = [(coerce(c), tuple((index[v], e) for v, e in m)) for m, c in self.terms.items()]
        terms = [(c, m) for c, m in terms if not ring.is_zero(c)]
        add, mul, zero = ring.add, ring.mul, ring.zero
        maxexp: dict[int, int] = {}
        for _, m in terms:
            for i, e in m:
                maxexp[i] = max(maxexp.get(i, 0), e)
        plan = sorted(maxexp.items())

        def f(values):
            powers = {}
            for i, top in plan:
                x = values[i]
                row = [None, x]
                for _ in range(top - 1):
                    row.append(mul(row[-1], x))
                powers[i] = row
            acc = zero
            for c, m in terms:
                t = c
                for i, e in m:
                    t = mul(t, powers[i][e])
                acc = add(acc, t)
            return acc

        return f

    def to_dense(self, var: str, field: Ring | None = None) -> tuple:
        """Dense coefficient tuple in ``var`` (other variables must be absent)."""
        field = field or self.ring
        coerce = field.from_int if self.ring is ZZ and field is not ZZ else (lambda c: c)
        n = self.degree_in(var)
        out = [field.zero] * (n + 1)
        for m, c in self.terms.items():
            d = dict(m)
            if set(d) - {var}:
                raise ValueError(f"polynomial is not univariate in {var}")
            out[d.get(var, 0)] = field.add(out[d.get(var, 0)], coerce(c))
        while out and field.is_zero(out[-1]):
            out.pop()
        return tuple(out)

    def hasse_derivatives(self) -> list[tuple[tuple, "Poly"]]:
        """All nonzero Hasse derivatives H_beta (beta != 0) over ZZ, keyed by sorted (var, order) tuples.

        f(x + h) = sum_beta H_beta f(x) h^beta holds identically in every commutative ring.
        """
        out: dict[tuple, dict] = {}
        for m, c in self.terms.items():
            exps = list(m)
            ranges = [range(e + 1) for _, e in exps]
            for betas in _product(ranges):
                if not any(betas):
                    continue
                coeff = c
                rest = []
                for (v, e), b in zip(exps, betas):
                    coeff *= comb(e, b)
                    if e - b:
                        rest.append((v, e - b))
                key = tuple((v, b) for (v, _), b in zip(exps, betas) if b)
                bucket = out.setdefault(key, {})
                rm = tuple(rest)
                bucket[rm] = bucket.get(rm, 0) + coeff
        return [(k, Poly(v)) for k, v in sorted(out.items())]

    # -- printing --------------------------------------------------------------------
    def to_str(self, order: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in _ordered(m, order))
            neg = isinstance(c, (int, Fraction)) and c < 0
            mag = str(-c) if neg else (str(c) if isinstance(c, (int, Fraction)) else self.ring.fmt(c))
            if " " in mag and mono:
                mag = f"({mag})"
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r})"


def _ordered(m: Monomial, order):
    if order is None:
        return m
    pos = {v: i for i, v in enumerate(order)}
    return sorted(m, key=lambda t: (pos.get(t[0], len(pos)), t[0]))


def _product(ranges):
    if not ranges:
        yield ()
        return
    for head in ranges[0]:
        for tail in _product(ranges[1:]):
            yield (head,) + tail


def content(p: Poly) -> int:
    from math import gcd

    g = 0
    for c in p.terms.values():
        g = gcd(g, c)
    return g


def leading_coefficient(p: Poly, order: Iterable[str] | None = None):
    terms = p.sorted_terms(order)
    return terms[0][1] if terms else 0
