"""Buchberger's algorithm over an arbitrary exact field.

Polynomials here are dicts ``{exponent tuple: coefficient}`` over a fixed
variable order; :func:`to_dict` converts from :class:`~abmod.algebra.poly.Poly`.
Pairs are selected by the normal strategy (smallest lcm degree first) with
Buchberger's coprime and chain criteria.  Optionally the computation keeps
cofactors expressing each basis element in the input generators, which is
how ideal-triviality certificates are produced.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from ..errors import ResourceError
from .base import ZZ
from .poly import Poly

ORDERS = ("grevlex", "grlex", "lex")


def order_key(order: str):
    if order == "lex":
        return lambda m: m
    if order == "grlex":
        return lambda m: (sum(m), m)
    if order == "grevlex":
        return lambda m: (sum(m), tuple(-e for e in reversed(m)))
    raise ValueError(f"unknown monomial order {order!r}")


def to_dict(p: Poly, variables: Sequence[str], F) -> dict:
    idx = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    conv = F.from_int if p.ring is ZZ else (lambda c: c)
    out: dict = {}
    for m, c in p.terms.items():
        e = [0] * n
        for v, k in m:
            e[idx[v]] = k
        c = conv(c)
        if not F.is_zero(c):
            out[tuple(e)] = c
    return out


def from_dict(d: dict, variables: Sequence[str], F) -> Poly:
    return Poly({tuple((v, k) for v, k in zip(variables, e) if k): c for e, c in d.items()}, F)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_mono(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _axpy(F, f: dict, c, mono, g: dict):
    """f -= c * x^mono * g, in place."""
    for m, d in g.items():
        mm = tuple(x + y for x, y in zip(m, mono))
        val = F.sub(f.get(mm, F.zero), F.mul(c, d))
        if F.is_zero(val):
            f.pop(mm, None)
        else:
            f[mm] = val


def _scale(F, f: dict, c) -> dict:
    return {m: F.mul(x, c) for m, x in f.items()}


class _Elem:
    __slots__ = ("poly", "lm", "cof")

    def __init__(self, poly, lm, cof):
        self.poly, self.lm, self.cof = poly, lm, cof


class GroebnerResult:
    """Reduced Groebner basis plus optional cofactors (basis[i] = sum cof[i][j] * input[j])."""

    def __init__(self, field, nvars, order, basis, cofactors=None):
        self.field, self.nvars, self.order = field, nvars, order
        self.basis = basis
        self.cofactors = cofactors

    @property
    def is_trivial(self) -> bool:
        zero = (0,) * self.nvars
        return any(list(g) == [zero] for g in self.basis)

    def one_cofactors(self):
        """Cofactors c_j with sum c_j * input_j = 1 (only when the ideal is trivial)."""
        zero = (0,) * self.nvars
        for i, g in enumerate(self.basis):
            if list(g) == [zero]:
                return self.cofactors[i] if self.cofactors is not None else None
        return None


def groebner(
    F,
    polys: Sequence[dict],
    nvars: int,
    order: str = "grevlex",
    cofactors: bool = False,
    trace: Callable[[object], None] | None = None,
    max_pairs: int = 200_000,
) -> GroebnerResult:
    """Reduced Groebner basis of the ideal generated by ``polys`` over the field ``F``.

    ``trace`` is called on every leading coefficient (before normalization)
    and every coefficient of every normalized basis element; over QQ this
    records exactly the numbers whose primes may break specialization.
    """
    key = order_key(order)
    ninp = len(polys)
    zero_m = (0,) * nvars

    def lead(f):
        return max(f, key=key)

    def unit_vec(j):
        return [({zero_m: F.one} if i == j else {}) for i in range(ninp)]

    def normalize(f, cof):
        lm = lead(f)
        c = f[lm]
        if trace is not None:
            trace(c)
        inv = F.inv(c)
        f = _scale(F, f, inv)
        if cof is not None:
            cof = [_scale(F, h, inv) for h in cof]
        if trace is not None:
            for x in f.values():
                trace(x)
        return _Elem(f, lm, cof)

    def reduce_full(f, cof, G):
        f = dict(f)
        cof = [dict(h) for h in cof] if cof is not None else None
        rem: dict = {}
        while f:
            m = max(f, key=key)
            c = f[m]
            for g in G:
                if _divides(g.lm, m):
                    mono = _sub_mono(m, g.lm)
                    _axpy(F, f, c, mono, g.poly)
                    if cof is not None:
                        for h, gh in zip(cof, g.cof):
                            _axpy(F, h, c, mono, gh)
                    break
            else:
                rem[m] = c
                del f[m]
        return rem, cof

    G: list[_Elem] = []
    for j, f in enumerate(polys):
        f = {m: c for m, c in f.items() if not F.is_zero(c)}
        if not f:
            continue
        cof = unit_vec(j) if cofactors else None
        r, rc = reduce_full(f, cof, G)
        if r:
            G.append(normalize(r, rc))

    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    processed = 0
    while pairs:
        pairs.sort(key=lambda ij: key(_lcm(G[ij[0]].lm, G[ij[1]].lm)))
        i, j = pairs.pop(0)
        processed += 1
        if processed > max_pairs:
            raise ResourceError("Groebner pair budget exhausted")
        gi, gj = G[i], G[j]
        L = _lcm(gi.lm, gj.lm)
        if all(a == 0 or b == 0 for a, b in zip(gi.lm, gj.lm)):
            continue  # coprime leading monomials
        if any(
            k not in (i, j)
            and _divides(G[k].lm, L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue  # chain criterion
        s: dict = {}
        _axpy(F, s, F.neg(F.one), _sub_mono(L, gi.lm), gi.poly)
        _axpy(F, s, F.one, _sub_mono(L, gj.lm), gj.poly)
        scof = None
        if cofactors:
            scof = [{} for _ in range(ninp)]
            for h, a in zip(scof, gi.cof):
                _axpy(F, h, F.neg(F.one), _sub_mono(L, gi.lm), a)
            for h, b in zip(scof, gj.cof):
                _axpy(F, h, F.one, _sub_mono(L, gj.lm), b)
        r, rc = reduce_full(s, scof, G)
        if not r:
            continue
        G.append(normalize(r, rc))
        k = len(G) - 1
        pairs.extend((i2, k) for i2 in range(k))
        if G[k].lm == zero_m:
            break

    # interreduce to the reduced basis
    G = [g for g in G if not any(h is not g and _divides(h.lm, g.lm) for h in G)]
    out = []
    for idx, g in enumerate(G):
        others = G[:idx] + G[idx + 1 :]
        tail = dict(g.poly)
        lc = tail.pop(g.lm)
        cof = g.cof
        if tail:
            # reducing the tail of g by the others keeps the cofactors in step
            tail, cof = reduce_full(tail, g.cof, others)
        poly = dict(tail)
        poly[g.lm] = lc
        if trace is not None:
            for x in poly.values():
                trace(x)
        out.append(_Elem(poly, g.lm, cof))
    out.sort(key=lambda e: key(e.lm))
    return GroebnerResult(F, nvars, order, [e.poly for e in out], [e.cof for e in out] if cofactors else None)


def _add(F, a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = F.add(out.get(m, F.zero), c)
        if F.is_zero(v):
            out.pop(m, None)
        else:
            out[m] = v
    return out


def mul_dict(F, a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = F.add(out.get(m, F.zero), F.mul(c1, c2))
            if F.is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
    return out


def combination(F, cofs: Sequence[dict], polys: Sequence[dict]) -> dict:
    acc: dict = {}
    for c, f in zip(cofs, polys):
        acc = _add(F, acc, mul_dict(F, c, f))
    return acc


def ideal_is_trivial(F, polys: Sequence[Poly], variables: Sequence[str]) -> bool:
    return groebner(F, [to_dict(p, variables, F) for p in polys], len(variables)).is_trivial


class PrimeTrace:
    """Collects the primes of numerators and denominators seen by a QQ computation."""

    def __init__(self):
        self.numbers: dict[int, str] = {}

    def record(self, x, why: str):
        x = Fraction(x)
        for n in (abs(x.numerator), x.denominator):
            if n > 1 and n not in self.numbers:
                self.numbers[n] = why

    def hook(self, why: str):
        return lambda x: self.record(x, why)
