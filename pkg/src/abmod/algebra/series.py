"""Truncated ramified series  GF(p^k)[t^(1/p^e)] / (t^M).

Internally an element is a polynomial in the uniformizer v = t^(1/p^e),
stored as a trimmed coefficient tuple of length at most N = p^e * M.  The
t-adic valuation of a nonzero truncated element is exact; the zero element
only tells us the true valuation is at least the cap.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ContextMismatchError, InputError, ParseError
from .gf import FIELD_SEED, make_ext_field
from .rings import TruncPolyRing


@dataclass(frozen=True)
class Valuation:
    """Finite(value) or, with ``at_least`` set, AtLeastCap(value).

    Ordered by (value, at_least): AtLeastCap(M) sits above every Finite(q) with q < M.
    """

    value: Fraction
    at_least: bool = False

    @property
    def is_finite(self) -> bool:
        return not self.at_least

    def _key(self):
        return (self.value, self.at_least)

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def scaled(self, q) -> "Valuation":
        return Valuation(self.value * q, self.at_least)

    def __str__(self):
        return f">={self.value}" if self.at_least else str(self.value)


def Finite(q) -> Valuation:
    return Valuation(Fraction(q), False)


def AtLeastCap(m) -> Valuation:
    return Valuation(Fraction(m), True)


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


class SeriesRing(TruncPolyRing):
    """Context (p, k, e, M) for truncated ramified series; see module docstring."""

    var = "v"

    def __init__(self, p: int, k: int, e: int, cap, seed: int = FIELD_SEED):
        cap = Fraction(cap)
        if e < 0 or cap <= 0:
            raise InputError("need e >= 0 and a positive cap")
        n = cap * p**e
        if n.denominator != 1:
            raise InputError(f"cap {cap} is not a multiple of 1/{p}^{e}")
        field = make_ext_field(p, k, seed)
        super().__init__(field, int(n))
        self.field = field
        self.p, self.k, self.e, self.cap = p, k, e, cap
        self.denom = p**e
        self.seed = seed

    @property
    def params(self):
        return (self.p, self.k, self.e, self.cap, self.field.modulus)

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and self.params == other.params

    def __hash__(self):
        return hash(self.params)

    def __repr__(self):
        return f"SeriesRing(p={self.p}, k={self.k}, e={self.e}, M={self.cap})"

    # -- valuations ------------------------------------------------------------
    def valuation(self, a) -> Valuation:
        i = self.order(a)
        if i >= self.m:
            return AtLeastCap(self.cap)
        return Finite(Fraction(i, self.denom))

    def exponent_index(self, exponent) -> int:
        """v-index of t^exponent; exponent must lie in (1/p^e) Z."""
        idx = Fraction(exponent) * self.denom
        if idx.denominator != 1 or idx < 0:
            raise InputError(f"t^{exponent} is not an element of {self!r}")
        return int(idx)

    def t_power(self, exponent, c=1):
        return self.monomial(c, self.exponent_index(exponent))

    def uniformizer(self):
        return self.monomial(1, 1)

    def t(self):
        return self.monomial(1, self.denom)

    # -- text ------------------------------------------------------------------
    def fmt(self, a) -> str:
        F = self.field
        terms = []
        for i, c in enumerate(a):
            if F.is_zero(c):
                continue
            cs = F.fmt(c)
            if " " in cs:
                cs = f"({cs})"
            ex = Fraction(i, self.denom)
            if ex == 0:
                terms.append(cs)
                continue
            tp = "t" if ex == 1 else (f"t^{ex.numerator}" if ex.denominator == 1 else f"t^({ex})")
            terms.append(tp if cs == "1" else f"{cs}*{tp}")
        return " + ".join(terms) if terms else "0"

    def parse(self, text: str):
        return parse_series(self, text)

    def wrap(self, a) -> "TruncSeries":
        return TruncSeries(self, a)


@functools.lru_cache(maxsize=None)
def series_ring(p: int, k: int, e: int, cap, seed: int = FIELD_SEED) -> SeriesRing:
    return SeriesRing(p, k, e, Fraction(cap), seed)


class TruncSeries:
    """An element of a :class:`SeriesRing` bundled with its context."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: SeriesRing, coeffs=()):
        self.ctx = ctx
        self.coeffs = ctx._trim(tuple(coeffs))

    def _other(self, other):
        if isinstance(other, TruncSeries):
            if other.ctx != self.ctx:
                raise ContextMismatchError(f"{self.ctx!r} vs {other.ctx!r}")
            return other.coeffs
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else TruncSeries(self.ctx, self.ctx.add(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else TruncSeries(self.ctx, self.ctx.sub(self.coeffs, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else TruncSeries(self.ctx, self.ctx.sub(o, self.coeffs))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else TruncSeries(self.ctx, self.ctx.mul(self.coeffs, o))

    __rmul__ = __mul__

    def __neg__(self):
        return TruncSeries(self.ctx, self.ctx.neg(self.coeffs))

    def __pow__(self, n: int):
        return TruncSeries(self.ctx, self.ctx.pow(self.coeffs, n))

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def valuation(self) -> Valuation:
        return self.ctx.valuation(self.coeffs)

    def __repr__(self):
        return f"TruncSeries({self.ctx.fmt(self.coeffs)!r}, {self.ctx!r})"

    def __str__(self):
        return self.ctx.fmt(self.coeffs)


def series_valuation(a: TruncSeries) -> Valuation:
    return a.valuation()


def rescale(a: TruncSeries, q) -> TruncSeries:
    """Image of ``a`` under the field embedding t -> t^q (q > 0 with p-power denominator).

    The result lives in a context with ramification e + s (q = u/p^s) and cap
    q*M, so nothing known below the original cap is lost.
    """
    ctx = a.ctx
    q = Fraction(q)
    if q <= 0 or not _is_p_power(q.denominator, ctx.p):
        raise InputError(f"scale factor {q} must be positive with a power-of-{ctx.p} denominator")
    s = 0
    d = q.denominator
    while d > 1:
        d //= ctx.p
        s += 1
    u = q.numerator
    target = series_ring(ctx.p, ctx.k, ctx.e + s, ctx.cap * q, ctx.seed)
    out = [ctx.field.zero] * (len(a.coeffs) and (len(a.coeffs) - 1) * u + 1)
    for i, c in enumerate(a.coeffs):
        if c:
            out[i * u] = c
    return TruncSeries(target, out)


def recontext(a: TruncSeries, target: SeriesRing) -> TruncSeries:
    """Move ``a`` to a context with the same field and e' >= e; cap may shrink (truncation)."""
    ctx = a.ctx
    if target.p != ctx.p or target.field != ctx.field or target.e < ctx.e:
        raise ContextMismatchError(f"cannot move {ctx!r} into {target!r}")
    if target.cap > ctx.cap:
        raise ContextMismatchError("target cap exceeds the known precision")
    step = ctx.p ** (target.e - ctx.e)
    out = [ctx.field.zero] * target.m
    for i, c in enumerate(a.coeffs):
        if i * step < target.m:
            out[i * step] = c
    return TruncSeries(target, out)


_TERM = re.compile(r"^(?:(?P<coef>.+?)\*)?(?P<t>t(?:\^(?:(?P<int>\d+)|\((?P<num>\d+)/(?P<den>\d+)\)))?)$")


def _split_top(text: str, sep: str):
    depth, start, out = 0, 0, []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append(text[start:i])
            start = i + 1
    out.append(text[start:])
    return [s.strip() for s in out]


def _parse_coeff(F, text: str):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    acc = F.zero
    for term in _split_top(text, "+"):
        m = re.fullmatch(r"(?:(\d+)\*?)?(a(?:\^(\d+))?)?", term)
        if not term or not m or (m.group(1) is None and m.group(2) is None):
            raise ParseError(f"bad field coefficient {term!r}")
        c = F.from_int(int(m.group(1))) if m.group(1) else F.one
        if m.group(2):
            if F.k == 1:
                raise ParseError("symbol 'a' needs an extension field")
            c = F.mul(c, F.pow(F.generator(), int(m.group(3) or 1)))
        acc = F.add(acc, c)
    return acc


def parse_series(ctx: SeriesRing, text: str):
    """Inverse of :meth:`SeriesRing.fmt`; returns the raw coefficient tuple."""
    text = text.strip()
    if text == "0":
        return ()
    acc = ()
    for term in _split_top(text, "+"):
        m = _TERM.match(term)
        if m:
            coef = _parse_coeff(ctx.field, m.group("coef")) if m.group("coef") else ctx.field.one
            if m.group("int"):
                ex = Fraction(int(m.group("int")))
            elif m.group("num"):
                ex = Fraction(int(m.group("num")), int(m.group("den")))
            else:
                ex = Fraction(1)
            acc = ctx.add(acc, ctx.t_power(ex, coef))
        else:
            acc = ctx.add(acc, ctx.scalar(_parse_coeff(ctx.field, term)))
    return acc
