"""Dense univariate polynomials over an arbitrary field object.

A polynomial a_0 + a_1 x + ... + a_n x^n is the tuple (a_0, ..., a_n) with
a_n nonzero; the zero polynomial is the empty tuple.  All functions take the
coefficient field as their first argument (same layout as sympy's
``galoistools``, but field-generic so it also runs over GF(p^k) and QQ).
"""
from __future__ import annotations

import functools
import random
from typing import Sequence

Poly = tuple


def trim(F, f: Sequence) -> Poly:
    n = len(f)
    while n and F.is_zero(f[n - 1]):
        n -= 1
    return tuple(f[:n])


def deg(f: Poly) -> int:
    """Degree, with deg(0) = -1."""
    return len(f) - 1


def lc(F, f):
    return f[-1] if f else F.zero


def const(F, c) -> Poly:
    return trim(F, (c,))


def x_poly(F) -> Poly:
    return (F.zero, F.one)


def add(F, f, g) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(F, out)


def neg(F, f) -> Poly:
    return tuple(F.neg(c) for c in f)


def sub(F, f, g) -> Poly:
    return add(F, f, neg(F, g))


def scale(F, f, c) -> Poly:
    if F.is_zero(c):
        return ()
    return trim(F, [F.mul(a, c) for a in f])


def mul(F, f, g) -> Poly:
    if not f or not g:
        return ()
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            if not F.is_zero(b):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(F, out)


def shift(F, f, n: int) -> Poly:
    """Multiply by x^n."""
    return (F.zero,) * n + tuple(f) if f else ()


def divmod_(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv = F.inv(g[-1])
    if len(r) - 1 < dg:
        return (), trim(F, r)
    q = [F.zero] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if F.is_zero(c):
            continue
        c = F.mul(c, inv)
        q[i - dg] = c
        for j, b in enumerate(g):
            r[i - dg + j] = F.sub(r[i - dg + j], F.mul(c, b))
    return trim(F, q), trim(F, r[:dg])


def rem(F, f, g) -> Poly:
    return divmod_(F, f, g)[1]


def quo(F, f, g) -> Poly:
    q, r = divmod_(F, f, g)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def monic(F, f) -> Poly:
    if not f:
        return ()
    return scale(F, f, F.inv(f[-1]))


def gcd(F, f, g) -> Poly:
    while g:
        f, g = g, rem(F, f, g)
    return monic(F, f)


def xgcd(F, f, g):
    """Return (d, s, t) with s*f + t*g = d, d monic (or zero)."""
    r0, r1 = f, g
    s0, s1 = const(F, F.one), ()
    t0, t1 = (), const(F, F.one)
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return (), s0, t0
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def invmod(F, a, m) -> Poly:
    d, s, _ = xgcd(F, a, m)
    if d != const(F, F.one):
        raise ZeroDivisionError("element not invertible modulo polynomial")
    return rem(F, s, m)


def mulmod(F, f, g, m) -> Poly:
    return rem(F, mul(F, f, g), m)


def powmod(F, f, n: int, m) -> Poly:
    result = const(F, F.one)
    base = rem(F, f, m)
    while n:
        if n & 1:
            result = mulmod(F, result, base, m)
        n >>= 1
        if n:
            base = mulmod(F, base, base, m)
    return rem(F, result, m)


def power(F, f, n: int) -> Poly:
    result = const(F, F.one)
    while n:
        if n & 1:
            result = mul(F, result, f)
        n >>= 1
        if n:
            f = mul(F, f, f)
    return result


def deriv(F, f) -> Poly:
    return trim(F, [F.mul(F.from_int(i), c) for i, c in enumerate(f)][1:])


def evaluate(F, f, a):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, a), c)
    return acc


def compose(F, f, g) -> Poly:
    acc: Poly = ()
    for c in reversed(f):
        acc = add(F, mul(F, acc, g), const(F, c))
    return acc


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- finite-field specific routines (F must expose p and q) -----------------


def is_irreducible(F, f) -> bool:
    """Rabin's irreducibility test over a finite field."""
    f = monic(F, f)
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    x = x_poly(F)
    for r in _prime_factors(n):
        h = _frobenius_power(F, x, n // r, f)
        if deg(gcd(F, f, sub(F, h, x))) > 0:
            return False
    return _frobenius_power(F, x, n, f) == rem(F, x, f)


def _frobenius_power(F, a, i: int, m) -> Poly:
    """a^(q^i) mod m."""
    for _ in range(i):
        a = powmod(F, a, F.q, m)
    return a


def pth_root(F, f) -> Poly:
    """Inverse Frobenius of a polynomial all of whose exponents are multiples of p."""
    p = F.p
    root_exp = F.q // p
    return trim(F, [F.pow(f[i], root_exp) for i in range(0, len(f), p)])


def sqf_decompose(F, f) -> list[tuple[Poly, int]]:
    """Squarefree decomposition of a monic polynomial over GF(q)."""
    f = monic(F, f)
    if deg(f) < 1:
        return []
    out: dict[Poly, int] = {}
    one = const(F, F.one)
    c = gcd(F, f, deriv(F, f))
    w = quo(F, f, c)
    i = 1
    while w != one:
        y = gcd(F, w, c)
        fac = quo(F, w, y)
        if fac != one:
            out[fac] = out.get(fac, 0) + i
        w, c = y, quo(F, c, y)
        i += 1
    if c != one:
        for g, m in sqf_decompose(F, pth_root(F, c)):
            out[g] = out.get(g, 0) + m * F.p
    return sorted(out.items(), key=lambda t: (len(t[0]), t[0]))


def distinct_degree(F, f) -> list[tuple[Poly, int]]:
    """Split a monic squarefree polynomial into products of equal-degree factors."""
    out = []
    x = x_poly(F)
    h = rem(F, x, f)
    i = 0
    while deg(f) >= 2 * (i + 1):
        i += 1
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, x))
        if deg(g) > 0:
            out.append((g, i))
            f = quo(F, f, g)
            h = rem(F, h, f)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree(F, f, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-d irreducibles."""
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = trim(F, [rng.randrange(F.q) for _ in range(n)])
        if deg(a) < 1:
            continue
        if F.p == 2:
            # absolute trace down to GF(2)
            b = rem(F, a, f)
            acc = b
            for _ in range(F.k * d - 1):
                b = mulmod(F, b, b, f)
                acc = add(F, acc, b)
        else:
            acc = sub(F, powmod(F, a, (F.q**d - 1) // 2, f), const(F, F.one))
        g = gcd(F, f, acc)
        if 0 < deg(g) < n:
            return equal_degree(F, g, d, rng) + equal_degree(F, quo(F, f, g), d, rng)


def factor(F, f, seed: int = 0):
    """Factor over GF(q): returns (unit, [(monic irreducible, multiplicity), ...])."""
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    unit, facs = _factor(F, tuple(f), seed)
    return unit, list(facs)


@functools.lru_cache(maxsize=1 << 14)
def _factor(F, f: Poly, seed: int):
    # the deciders refactor the same reductions many times over a corpus
    rng = random.Random(seed)
    found: dict[Poly, int] = {}
    for g, m in sqf_decompose(F, f):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree(F, h, d, rng):
                found[irr] = found.get(irr, 0) + m
    return f[-1], tuple(sorted(found.items(), key=lambda t: (len(t[0]), t[0])))


def roots(F, f, seed: int = 0) -> list:
    """Distinct roots of f lying in F, in increasing encoding order."""
    if not f:
        raise ValueError("every element is a root of the zero polynomial")
    if deg(f) < 1:
        return []
    _, facs = factor(F, f, seed)
    return sorted(F.neg(h[0]) for h, _ in facs if deg(h) == 1)


def multiplicity(F, f, h) -> int:
    """Largest m with h^m | f (f nonzero, deg h >= 1)."""
    m = 0
    while True:
        q, r = divmod_(F, f, h)
        if r:
            return m
        f, m = q, m + 1
