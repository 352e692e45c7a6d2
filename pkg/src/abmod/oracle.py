"""Ground truth at desk scale.

Finite levels of Z^ab/pZ^ab come in two shapes:

* local factors  F_{p^k}[v]/(v^(p^e (p-1)))  with t = v^(p^e)  (LocalModel), and
* cyclotomic quotients  F_p[x]/(Phi_N mod p)  with their CRT splitting.

``brute_sat`` decides a conjunct or formula by plain lexicographic
enumeration.  ``coset_sat`` is the exact oracle for local levels too big to
enumerate: it refines cosets a + v^L O using Taylor expansions, and only
ever prunes a coset when the expansion proves a literal constant on it, so
its answers are as exhaustive as enumeration.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from math import comb
from typing import Mapping, Sequence

from .algebra import upoly
from .algebra.cyclotomic import cyclotomic_mod_p, euler_phi
from .algebra.gf import prime_field
from .algebra.poly import Poly
from .algebra.rings import CRT, ProductRing, QuotientRing, TableRing, fmt_poly
from .algebra.series import SeriesRing, series_ring
from .errors import InputError, ResourceError
from .formula import Conjunct, eval_formula
from .reduction import pad, replicate

RING_BUDGET = 1 << 16
ASSIGNMENT_BUDGET = 1 << 24
CYCLOTOMIC_DEGREE_BUDGET = 64
NODE_BUDGET = 200_000
ZETA = "z"  # generator of the cyclotomic quotient rings
TABLE_LIMIT = 1024  # rings up to this size get operation tables


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class LocalModel:
    p: int
    k: int
    e: int
    ring: SeriesRing

    @property
    def size(self) -> int:
        return self.ring.size

    @property
    def t(self):
        return self.ring.t()

    def describe(self) -> dict:
        return {"kind": "local", "p": self.p, "k": self.k, "e": self.e, "length": self.ring.m, "size": self.size}


def local_ring(p: int, k: int, e: int) -> SeriesRing:
    """F_{p^k}[t^(1/p^e)]/(t^(p-1)) with no size limit (for the coset oracle)."""
    return series_ring(p, k, e, p - 1)


def build_local_model(p: int, k: int, e: int, budget: int = RING_BUDGET) -> LocalModel:
    size = (p**k) ** (p**e * (p - 1))
    if size > budget:
        raise ResourceError(f"local model ({p},{k},{e}) has {size} elements, budget {budget}")
    return LocalModel(p, k, e, local_ring(p, k, e))


@dataclass
class CyclotomicModel:
    N: int
    p: int
    ring: QuotientRing
    factors: list  # [(monic irreducible over F_p, multiplicity)]
    crt: CRT

    @property
    def components(self):
        return self.crt.components

    @property
    def component_sizes(self) -> list[int]:
        return [c.size for c in self.components]

    def describe(self) -> dict:
        F = self.ring.field
        return {
            "kind": "cyclotomic",
            "N": self.N,
            "p": self.p,
            "components": [
                {"factor": upoly_str(F, h, ZETA), "multiplicity": m, "size": c.size, "field": c.is_field}
                for (h, m), c in zip(self.factors, self.components)
            ],
        }


def upoly_str(F, f, var: str = "x") -> str:
    return fmt_poly(F, f, var)


def build_cyclotomic_model(N: int, p: int, budget: int = CYCLOTOMIC_DEGREE_BUDGET) -> CyclotomicModel:
    if N < 1:
        raise InputError("N must be positive")
    if euler_phi(N) > budget:
        raise ResourceError(f"phi({N}) = {euler_phi(N)} exceeds the degree budget {budget}")
    F = prime_field(p)
    phi_n = cyclotomic_mod_p(N, p)
    _, facs = upoly.factor(F, phi_n)
    crt = CRT(F, [upoly.power(F, h, m) for h, m in facs], ZETA)
    return CyclotomicModel(N, p, crt.ring, facs, crt)


# ---------------------------------------------------------------------------
# exhaustive enumeration


def _literals(target):
    if isinstance(target, Conjunct):
        return [(f, True) for f in target.eqs] + [(g, False) for g in target.neqs]
    return None


def brute_sat(
    ring,
    target,
    variables: Sequence[str] | None = None,
    budget: int = ASSIGNMENT_BUDGET,
):
    """Exhaustive satisfiability over an enumerable ring.

    ``target`` is a Conjunct or a quantifier-free formula.  Returns
    ``(True, witness)`` for the lexicographically first witness or
    ``(False, None)``.
    """
    if variables is None:
        variables = target.variables() if isinstance(target, Conjunct) else ()
    variables = tuple(variables)
    elems = list(ring.elements())
    total = len(elems) ** len(variables)
    if total > budget:
        raise ResourceError(f"{len(elems)}^{len(variables)} assignments exceed budget {budget}")
    lits = _literals(target)
    if lits is None:
        for combo in itertools.product(elems, repeat=len(variables)):
            w = dict(zip(variables, combo))
            if eval_formula(target, ring, w):
                return True, w
        return False, None

    # conjuncts: backtracking with each literal checked as soon as it is ground
    pos = {v: i for i, v in enumerate(variables)}
    stages: list[list] = [[] for _ in range(len(variables) + 1)]
    for poly, is_eq in lits:
        vs = poly.variables()
        missing = [v for v in vs if v not in pos]
        if missing:
            raise InputError(f"variables {missing} not in the assignment order")
        last = max((pos[v] + 1 for v in vs), default=0)
        stages[last].append((poly.compile(ring, variables), is_eq))
    is_zero = ring.is_zero
    values = [None] * len(variables)

    def ok(stage):
        for fn, is_eq in stages[stage]:
            if is_zero(fn(values)) != is_eq:
                return False
        return True

    if not ok(0):
        return False, None

    def rec(i):
        if i == len(variables):
            return True
        for x in elems:
            values[i] = x
            if ok(i + 1) and rec(i + 1):
                return True
        return False

    if rec(0):
        w = dict(zip(variables, values))
        assert eval_formula(target, ring, w)
        return True, w
    return False, None


@functools.lru_cache(maxsize=64)
def _tabulated(S, r: int):
    ring = S if r == 1 else ProductRing(S, r)
    if isinstance(ring, TableRing) or not ring.size or ring.size > TABLE_LIMIT:
        return ring
    return TableRing(ring)


def product_transfer_check(S, r: int, c: Conjunct, budget: int = ASSIGNMENT_BUDGET) -> bool:
    """S^r |= exists x c  <=>  S |= exists replicate(pad(c)); True when both sides agree."""
    left, _ = brute_sat(_tabulated(S, r), c, budget=budget)
    rc = replicate(pad(c)).conjunct()
    right, _ = brute_sat(_tabulated(S, 1), rc, budget=budget)
    return left == right


# ---------------------------------------------------------------------------
# coset refinement over a local level


ZERO, NONZERO, MIXED = "zero", "nonzero", "mixed"


class _UPoly:
    """A univariate integer polynomial prepared for Taylor expansion over a series ring."""

    __slots__ = ("hasse", "deg")

    def __init__(self, poly: Poly, var: str, F):
        dense = poly.to_dense(var) if poly.terms else ()
        self.deg = len(dense) - 1
        self.hasse = []
        for j in range(len(dense)):
            h = [F.from_int(comb(i, j) * dense[i]) for i in range(j, len(dense))]
            self.hasse.append(upoly.trim(F, h))


class CosetOracle:
    """Exact satisfiability over one local level via coset refinement.

    Cosets are pairs (a, L) meaning a + v^L O, where a only uses v-indices
    below L.  For a univariate P the Taylor coefficients T_j = H_j P(a) give
    v(P(a + v^L u)) >= min_j (v(T_j) + jL) for every u, which decides
    "P vanishes on the whole coset" and "P vanishes nowhere on it"; in the
    remaining case the leading-term polynomial in the next digit tells which
    children can still contain zeros.
    """

    def __init__(self, ring: SeriesRing, node_budget: int = NODE_BUDGET):
        self.R = ring
        self.F = ring.base
        self.N = ring.m
        self.node_budget = node_budget
        self.nodes = 0
        self._covers: dict = {}
        self._prepared: dict = {}

    def _prep(self, poly: Poly, var: str) -> _UPoly:
        key = (poly, var)
        if key not in self._prepared:
            self._prepared[key] = _UPoly(poly, var, self.F)
        return self._prepared[key]

    def _taylor(self, P: _UPoly, powers):
        R = self.R
        out = []
        for h in P.hasse:
            acc = ()
            for i, c in enumerate(h):
                if c:
                    acc = R.add(acc, R.mul(R.scalar(c), powers[i]))
            out.append(acc)
        return out

    def _powers(self, a, d):
        R = self.R
        pw = [R.one]
        for _ in range(d):
            pw.append(R.mul(pw[-1], a))
        return pw

    def _status(self, P: _UPoly, a, L, powers):
        """(status, value at a, leading-term polynomial as {j: coeff})."""
        R, N = self.R, self.N
        T = self._taylor(P, powers)
        orders = [R.order(t) for t in T]
        lam = [min(N, o + j * L) if o < N else N for j, o in enumerate(orders)]
        low = min(lam, default=N)
        value = T[0] if T else ()
        if low >= N:
            return ZERO, value, None
        o0 = orders[0] if orders else N
        if o0 < N and all(o0 < x for x in lam[1:]):
            return NONZERO, value, None
        phi = {j: T[j][orders[j]] for j in range(len(T)) if lam[j] == low and orders[j] < N}
        return MIXED, value, phi

    def _phi_at(self, phi, c):
        F = self.F
        acc = F.zero
        for j, lc in phi.items():
            acc = F.add(acc, F.mul(lc, F.pow(c, j)))
        return acc

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise ResourceError(f"coset oracle exceeded {self.node_budget} nodes")

    def _child(self, a, c, L):
        return self.R.add(a, self.R.monomial(c, L))

    def cover(self, eqs: Sequence[Poly], var: str) -> list:
        """Maximal cosets on which every equation vanishes identically (their union is the zero set)."""
        key = (frozenset(eqs), var)
        if key in self._covers:
            return self._covers[key]
        prepped = [self._prep(f, var) for f in eqs if f.terms]
        dmax = max((P.deg for P in prepped), default=0)
        out: list = []

        def rec(a, L):
            self._tick()
            pw = self._powers(a, dmax)
            stats = [self._status(P, a, L, pw) for P in prepped]
            if any(s == NONZERO for s, _, _ in stats):
                return
            if all(s == ZERO for s, _, _ in stats):
                out.append((a, L))
                return
            if L >= self.N:
                return
            mixed = [phi for s, _, phi in stats if s == MIXED]
            for c in self.F.elements():
                if all(not self._phi_at(phi, c) for phi in mixed):
                    rec(self._child(a, c, L), L + 1)

        rec((), 0)
        self._covers[key] = out
        return out

    def find_nonvanishing(self, a, L, neqs: Sequence[Poly], var: str):
        """A point of a + v^L O where every polynomial in ``neqs`` is nonzero, or None."""
        prepped = [self._prep(g, var) for g in neqs]
        dmax = max((P.deg for P in prepped), default=0)

        def rec(a, L):
            self._tick()
            pw = self._powers(a, dmax)
            stats = [self._status(P, a, L, pw) for P in prepped]
            if any(s == ZERO for s, _, _ in stats):
                return None
            if all(self.R.order(val) < self.N for _, val, _ in stats):
                return a
            if L >= self.N:
                return None
            mixed = [phi for s, _, phi in stats if s == MIXED]
            for c in self.F.elements():
                if all(self._phi_at(phi, c) for phi in mixed):
                    return self._child(a, c, L)
            for c in self.F.elements():
                hit = rec(self._child(a, c, L), L + 1)
                if hit is not None:
                    return hit
            return None

        return rec(a, L)

    def solve_var(self, eqs: Sequence[Poly], neqs: Sequence[Poly], var: str):
        for a, L in self.cover(eqs, var):
            hit = self.find_nonvanishing(a, L, neqs, var)
            if hit is not None:
                return hit
        return None

    def sat(self, c: Conjunct):
        """(sat, witness) for a conjunct whose literals each mention at most one variable."""
        R = self.R
        per_var: dict[str, tuple[list, list]] = {}
        for f in c.eqs:
            vs = f.variables()
            if len(vs) > 1:
                raise InputError("coset oracle needs literals in at most one variable")
            if not vs:
                if R.order(f.evaluate(R, {})) < self.N:
                    return False, None
                continue
            per_var.setdefault(vs[0], ([], []))[0].append(f)
        for g in c.neqs:
            vs = g.variables()
            if len(vs) > 1:
                raise InputError("coset oracle needs literals in at most one variable")
            if not vs:
                if R.order(g.evaluate(R, {})) >= self.N:
                    return False, None
                continue
            per_var.setdefault(vs[0], ([], []))[1].append(g)
        witness = {v: () for v in c.variables()}
        for v in sorted(per_var):
            eqs, neqs = per_var[v]
            hit = self.solve_var(eqs, neqs, v)
            if hit is None:
                return False, None
            witness[v] = hit
        return True, witness


_ORACLES: dict = {}


def coset_oracle(p: int, k: int, e: int) -> CosetOracle:
    key = (p, k, e)
    if key not in _ORACLES:
        _ORACLES[key] = CosetOracle(local_ring(p, k, e))
    return _ORACLES[key]


def coset_sat(p: int, k: int, e: int, c: Conjunct, node_budget: int = NODE_BUDGET):
    """Exact satisfiability of a conjunct in the local level (p, k, e) by coset refinement."""
    orc = coset_oracle(p, k, e)
    orc.nodes = 0
    orc.node_budget = node_budget
    return orc.sat(c)


def check_assignment(ring, c: Conjunct, assignment: Mapping[str, object]) -> bool:
    return eval_formula(c, ring, assignment)
