"""Points on varieties over finite fields.

``find_point`` walks the variables from last to first: it projects the
variety onto one coordinate with a lex Groebner basis, takes a root of the
eliminant (growing the field when the root needs it) or, when the projection
is dense, the first value that keeps the fibre nonempty.  ``nonvanishing_point``
does the same for a product of inequations, where a greedy choice suffices.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from ..errors import ResourceError
from . import upoly
from .base import ZZ
from .gf import FIELD_SEED, embedding, make_ext_field
from .groebner import groebner
from .poly import Poly


def specialize(p: Poly, values: Mapping[str, int], F, variables: Sequence[str]) -> dict:
    """p with ``values`` substituted, as an exponent dict over ``variables`` and coefficients in F."""
    idx = {v: i for i, v in enumerate(variables)}
    out: dict = {}
    conv = F.from_int if p.ring is ZZ else (lambda c: c)
    for m, c in p.terms.items():
        coeff = conv(c)
        exp = [0] * len(variables)
        for v, e in m:
            if v in values:
                coeff = F.mul(coeff, F.pow(values[v], e))
            else:
                exp[idx[v]] = e
        if F.is_zero(coeff):
            continue
        key = tuple(exp)
        s = F.add(out.get(key, F.zero), coeff)
        if F.is_zero(s):
            out.pop(key, None)
        else:
            out[key] = s
    return out


def _grow(values: dict, F, K2: int, p: int, seed: int):
    F2 = make_ext_field(p, K2, seed)
    emb = embedding(F, F2)
    return {v: emb(a) for v, a in values.items()}, F2


def find_point(polys: Sequence[Poly], variables: Sequence[str], p: int, seed: int = FIELD_SEED, max_degree: int = 12):
    """A common zero over some F_{p^K}: returns (K, {var: encoded element}) or None if there is none."""
    F = make_ext_field(p, 1, seed)
    values: dict = {}
    remaining = list(variables)
    polys = [q for q in polys if q.terms]
    first = groebner(F, [specialize(q, {}, F, remaining) for q in polys], len(remaining), "grevlex")
    if first.is_trivial:
        return None
    while remaining:
        x = remaining[-1]
        n = len(remaining)
        sub = [specialize(q, values, F, remaining) for q in polys]
        G = groebner(F, sub, n, "lex")
        if G.is_trivial:
            raise AssertionError("fibre became empty after a projection step")
        elim = [g for g in G.basis if all(e[i] == 0 for e in g for i in range(n - 1))]
        if elim:
            u = upoly.trim(F, [elim[0].get((0,) * (n - 1) + (d,), F.zero) for d in range(max(e[-1] for e in elim[0]) + 1)])
            if upoly.deg(u) < 1:
                raise AssertionError("constant eliminant in a consistent system")
            _, facs = upoly.factor(F, u, seed)
            h = min(facs, key=lambda t: (len(t[0]), t[0]))[0]
            d = upoly.deg(h)
            if d > 1:
                K2 = F.k * d
                if K2 > max_degree:
                    raise ResourceError(f"point needs a field of degree {K2}")
                emb = embedding(F, make_ext_field(p, K2, seed))
                h = tuple(emb(c) for c in h)
                values, F = _grow(values, F, K2, p, seed)
            values[x] = min(upoly.roots(F, h, seed))
        else:
            chosen = None
            while chosen is None:
                for beta in F.elements():
                    trial = dict(values)
                    trial[x] = beta
                    rest = remaining[:-1]
                    test = [specialize(q, trial, F, rest) for q in polys]
                    if not groebner(F, test, len(rest), "grevlex").is_trivial:
                        chosen = beta
                        break
                if chosen is None:
                    K2 = F.k * 2
                    if K2 > max_degree:
                        raise ResourceError(f"point needs a field of degree {K2}")
                    values, F = _grow(values, F, K2, p, seed)
            values[x] = chosen
        remaining.pop()
    return F.k, values


def nonvanishing_point(polys: Sequence[Poly], variables: Sequence[str], p: int, seed: int = FIELD_SEED):
    """A point of F_{p^K}^m where every poly is nonzero mod p, or None if one of them is identically 0.

    K is the least degree with p^K larger than every partial degree of the
    product, which guarantees a greedy coordinate-by-coordinate choice works.
    """
    F1 = make_ext_field(p, 1, seed)
    prod = Poly.const(1)
    for q in polys:
        if not q.reduce(F1).terms:
            return None
        prod = prod * q
    prod = prod.reduce(F1)
    dmax = max((prod.degree_in(v) for v in variables), default=0)
    K = 1
    while p**K <= dmax:
        K += 1
    F = make_ext_field(p, K, seed)
    values: dict = {}
    rest = list(variables)
    for x in variables:
        rest.remove(x)
        for beta in F.elements():
            trial = dict(values)
            trial[x] = beta
            if specialize(prod, trial, F, rest):
                values = trial
                break
        else:  # pragma: no cover - excluded by the field size bound
            raise AssertionError("greedy choice failed")
    return K, values
