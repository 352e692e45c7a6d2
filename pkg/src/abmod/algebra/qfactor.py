"""Univariate factorization over Q and the integer invariants the transfer step needs.

This is the one place that leans on sympy: irreducible factorization over Q
(Zassenhaus with Hensel lifting), discriminants and resultants.  Everything
is keyed by dense integer coefficient tuples (low to high) and cached.
"""
from __future__ import annotations

import functools
from math import gcd

import sympy

_X = sympy.Symbol("x")


def _to_sympy(coeffs: tuple) -> sympy.Poly:
    return sympy.Poly(list(reversed(coeffs)), _X, domain="ZZ")


def _from_sympy(p: sympy.Poly) -> tuple:
    return tuple(int(c) for c in reversed(p.all_coeffs()))


def content(coeffs: tuple) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    return g


@functools.lru_cache(maxsize=None)
def factor_q(coeffs: tuple) -> tuple[int, tuple]:
    """(integer unit part, ((primitive irreducible with positive lc, multiplicity), ...)).

    Factors are sorted by (degree, coefficients) so the output is canonical.
    """
    if not any(coeffs):
        raise ValueError("cannot factor the zero polynomial")
    if len(coeffs) == 1:
        return coeffs[0], ()
    c, facs = _to_sympy(coeffs).factor_list()
    out = []
    for f, m in facs:
        t = _from_sympy(f)
        if t[-1] < 0:
            t = tuple(-x for x in t)
            if m % 2:
                c = -c
        out.append((t, m))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return int(c), tuple(out)


@functools.lru_cache(maxsize=None)
def discriminant(coeffs: tuple) -> int:
    if len(coeffs) <= 2:
        return 1
    return int(sympy.discriminant(_to_sympy(coeffs)))


@functools.lru_cache(maxsize=None)
def resultant(a: tuple, b: tuple) -> int:
    return int(sympy.resultant(_to_sympy(a), _to_sympy(b)))


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    if n < 2:
        return []
    return sorted(int(p) for p in sympy.factorint(n))
