"""Per-prime decisions.

Every conjunct of the DNF is classified and sent to the matching procedure:

* Positive and InequationsOnly conjuncts only see the residue field, so an
  algebraically closed field of characteristic p decides them (Groebner
  basis, resp. a polynomial identity test).
* Separated conjuncts (one variable) are decided exactly by comparing factor
  multiplicities over F_p, with a synthesized witness on the Yes side.
* General conjuncts get two cheap refutations (a vanishing inequation, no
  common residue root) and otherwise a budgeted witness search.

A Yes always carries a :class:`PrimeWitness` for the gap sentence, stored at
cap p - 1 so that it is also a point of the local level F_{p^k}[v]/(v^(p^e (p-1))).
A No always carries a certificate that :func:`check_certificate` re-verifies.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .algebra import upoly
from .algebra.gf import FIELD_SEED, is_prime, prime_field
from .algebra.base import QQ
from .algebra.groebner import combination, from_dict, groebner, to_dict
from .algebra.poly import Poly
from .algebra.series import (
    AtLeastCap,
    SeriesRing,
    TruncSeries,
    Valuation,
    recontext,
    rescale,
    series_ring,
)
from .algebra.variety import find_point, nonvanishing_point
from .errors import ContextMismatchError, InputError, ResourceError
from .formula import DEFAULT_DNF_CAP, Conjunct, Sentence, parse, to_dnf
from .reduction import (
    GENERAL,
    INEQUATIONS_ONLY,
    POSITIVE,
    SEPARATED,
    GapSentence,
    classify,
    gap_of,
)

INF = None  # multiplicity marker for the zero polynomial


# ---------------------------------------------------------------------------
# budgets, verdicts, witnesses, certificates


@dataclass(frozen=True)
class Budget:
    max_field_deg: int = 2
    max_ram: int = 2
    precision: int = 2
    enum_cap: int = 1 << 12
    samples: int = 400
    seed: int = 0

    def report(self) -> dict:
        return {"K": self.max_field_deg, "E": self.max_ram, "M": self.precision}


@dataclass
class PrimeWitness:
    p: int
    k: int
    e: int
    cap: Fraction
    ring: SeriesRing
    assignment: dict  # gap variable -> coefficient tuple in ``ring``
    margin: tuple = (None, None)  # (min upper, max lower)

    def series(self, var: str) -> TruncSeries:
        return TruncSeries(self.ring, self.assignment[var])

    def formatted(self) -> dict:
        return {v: self.ring.fmt(a) for v, a in self.assignment.items()}


@dataclass
class OrdProfile:
    p: int
    basis: list  # monic irreducibles over F_p (dense tuples) or over Q (integer tuples)
    f_mults: list  # per equation: list aligned with basis, None for the zero polynomial
    g_mults: list  # per inequation
    failing_block: int
    f_polys: list = field(default_factory=list)
    g_polys: list = field(default_factory=list)
    kind: str = "OrdProfile"


@dataclass
class ResidueObstruction:
    p: int
    variables: tuple
    eqs: list  # the equations, as integer Polys
    cofactors: list  # Polys over F_p with sum c_i * eq_i = 1 mod p
    kind: str = "ResidueObstruction"


@dataclass
class PolyVanishes:
    p: int
    index: int
    poly: Poly
    kind: str = "PolyVanishes"


@dataclass
class Yes:
    witness: PrimeWitness | None
    fragment: str = ""
    conjunct: int = 0
    note: str = ""
    tag: str = "yes"


@dataclass
class No:
    certificates: list  # one per DNF conjunct
    fragment: str = ""
    tag: str = "no"

    @property
    def certificate(self):
        return self.certificates[0] if len(self.certificates) == 1 else self.certificates


@dataclass
class Inconclusive:
    report: dict
    fragment: str = ""
    tag: str = "inconclusive"


# ---------------------------------------------------------------------------
# witness verification


def _valuations(gap: GapSentence, w: PrimeWitness):
    R = w.ring
    for v in gap.variables:
        if v not in w.assignment:
            raise InputError(f"witness misses variable {v}")
    uppers = [R.valuation(f.evaluate(R, w.assignment)) for _, _, f in gap.upper]
    lowers = [R.valuation(g.evaluate(R, w.assignment)) for _, g in gap.lower]
    return uppers, lowers


def verify_witness(gap: GapSentence, w: PrimeWitness) -> bool:
    """Gap condition in the witness's own ring: every lower valuation finite and below every upper one."""
    R = w.ring
    if not isinstance(R, SeriesRing) or R.p != w.p:
        raise ContextMismatchError("witness ring does not match its prime")
    for v, a in w.assignment.items():
        if len(a) > R.m:
            raise ContextMismatchError(f"value of {v} is not an element of {R!r}")
    uppers, lowers = _valuations(gap, w)
    if any(not l.is_finite for l in lowers):
        return False
    top = max(lowers)
    low = min(uppers) if uppers else AtLeastCap(R.cap)
    return low > top


def margin(gap: GapSentence, w: PrimeWitness) -> tuple:
    uppers, lowers = _valuations(gap, w)
    return (min(uppers) if uppers else AtLeastCap(w.ring.cap)), max(lowers)


def _finish(gap: GapSentence, w: PrimeWitness) -> PrimeWitness:
    if not verify_witness(gap, w):
        raise AssertionError("synthesized witness failed verification")
    w.margin = margin(gap, w)
    return w


# ---------------------------------------------------------------------------
# ord profiles and the separated criterion


def _dense_mod_p(f: Poly, var: str | None, F) -> tuple:
    if not f.terms:
        return ()
    if var is None:
        return upoly.trim(F, (F.from_int(f.constant_term()),))
    return upoly.trim(F, f.reduce(F).to_dense(var, F))


def ord_profile(polys: Sequence[tuple], F) -> tuple[list, list]:
    """Shared irreducible basis of the nonzero inputs and the multiplicity table (None = zero polynomial)."""
    basis: set = set()
    for f in polys:
        if f and upoly.deg(f) >= 1:
            _, facs = upoly.factor(F, f)
            basis.update(h for h, _ in facs)
    basis_l = sorted(basis, key=lambda h: (len(h), h))
    table = []
    for f in polys:
        if not f:
            table.append([INF] * len(basis_l))
        else:
            table.append([upoly.multiplicity(F, f, h) for h in basis_l])
    return basis_l, table


def _block_candidates(basis, f_mults, g_row):
    """[(h index, A, b)] with A = min_i ord_h(f_i) > b = ord_h(g) (A None means infinite)."""
    out = []
    for idx in range(len(basis)):
        col = [row[idx] for row in f_mults if row[idx] is not INF]
        A = min(col) if col else INF
        b = g_row[idx]
        if A is INF or A > b:
            out.append((idx, A, b))
    return out


def _needed_e(p: int, A, b) -> int:
    if b == 0:
        return 0
    e = 0
    while True:
        N = p**e * (p - 1)
        a = 1 if A is INF else -(-N // A)
        if b * a < N:
            return e
        e += 1


def _irreducibles_of_degree(F, d: int):
    """Monic irreducibles of degree d over the prime field F, in increasing order."""
    for tail in itertools.product(range(F.p), repeat=d):
        h = tuple(tail) + (1,)
        if upoly.is_irreducible(F, h):
            yield h


def decide_separated(gap: GapSentence, p: int) -> Yes | No:
    """Complete decision for gap sentences with a single original variable."""
    if gap.m > 1:
        raise InputError("decide_separated needs at most one original variable")
    F = prime_field(p)
    var = gap.orig_vars[0] if gap.m else None
    src = gap.source
    fs = [_dense_mod_p(f, var, F) for f in src.eqs]
    gs = [_dense_mod_p(g, var, F) for g in src.neqs]
    for k, g in enumerate(gs):
        if not g:
            return No([PolyVanishes(p, k + 1, src.neqs[k])], SEPARATED)

    if var is None:
        # constants only: all equations must vanish mod p
        if any(fs):
            return No([_ord_certificate(p, fs, gs, 1, src)], SEPARATED)
        R = series_ring(p, 1, 0, p - 1)
        return Yes(_finish(gap, PrimeWitness(p, 1, 0, R.cap, R, {})), SEPARATED)

    basis, table = ord_profile(fs + gs, F)
    f_mults, g_mults = table[: len(fs)], table[len(fs) :]
    all_zero = all(not f for f in fs)
    choices = []
    for k, g_row in enumerate(g_mults):
        cands = _block_candidates(basis, f_mults, g_row)
        if all_zero:
            # every irreducible qualifies; prefer a root that is not a root of g_k
            d = 1
            pick = None
            while pick is None:
                for h in _irreducibles_of_degree(F, d):
                    if upoly.multiplicity(F, gs[k], h) == 0:
                        pick = (h, INF, 0)
                        break
                d += 1
            choices.append(pick)
            continue
        if not cands:
            return No([_ord_certificate(p, fs, gs, k + 1, src, basis, f_mults, g_mults)], SEPARATED)
        best = min(cands, key=lambda c: (_needed_e(p, c[1], c[2]), len(basis[c[0]]), basis[c[0]]))
        choices.append((basis[best[0]], best[1], best[2]))

    e = max(_needed_e(p, A, b) for _, A, b in choices)
    K = 1
    for h, _, _ in choices:
        K = lcm(K, upoly.deg(h))
    R = series_ring(p, K, e, p - 1)
    Fk = R.field
    N = R.m
    assignment = {}
    for (h, A, b), block in zip(choices, gap.blocks):
        alpha = min(upoly.roots(Fk, h))
        x = R.scalar(alpha)
        if b:
            a = 1 if A is INF else -(-N // A)
            x = R.add(x, R.monomial(Fk.one, a))
        assignment[block[0]] = x
    w = PrimeWitness(p, K, e, R.cap, R, assignment)
    return Yes(_finish(gap, w), SEPARATED)


def _ord_certificate(p, fs, gs, block, src, basis=None, f_mults=None, g_mults=None) -> OrdProfile:
    F = prime_field(p)
    if basis is None:
        basis, table = ord_profile(fs + gs, F)
        f_mults, g_mults = table[: len(fs)], table[len(fs) :]
    return OrdProfile(p, basis, f_mults, g_mults, block, list(src.eqs), list(src.neqs))


# ---------------------------------------------------------------------------
# certificates


def check_certificate(cert) -> bool:
    """Independent re-check of a No certificate."""
    if isinstance(cert, PolyVanishes):
        return is_prime(cert.p) and not cert.poly.reduce(prime_field(cert.p)).terms
    if isinstance(cert, ResidueObstruction):
        F = prime_field(cert.p)
        vs = list(cert.variables)
        eqs = [to_dict(f, vs, F) for f in cert.eqs]
        cofs = [to_dict(c, vs, F) for c in cert.cofactors]
        return combination(F, cofs, eqs) == {(0,) * len(vs): F.one}
    if isinstance(cert, OrdProfile):
        return _check_ord(cert)
    if isinstance(cert, list):
        return bool(cert) and all(check_certificate(c) for c in cert)
    return False


def _check_ord(c: OrdProfile) -> bool:
    F = prime_field(c.p)
    vars_ = sorted({v for f in c.f_polys + c.g_polys for v in f.variables()})
    if len(vars_) > 1:
        return False
    var = vars_[0] if vars_ else None
    fs = [_dense_mod_p(f, var, F) for f in c.f_polys]
    gs = [_dense_mod_p(g, var, F) for g in c.g_polys]
    if not 1 <= c.failing_block <= len(gs):
        return False
    for h in c.basis:
        if not upoly.is_irreducible(F, h) or h[-1] != 1:
            return False
    # multiplicities recomputed by division
    for polys, rows in ((fs, c.f_mults), (gs, c.g_mults)):
        for f, row in zip(polys, rows):
            for h, m in zip(c.basis, row):
                if (m is INF) != (not f):
                    return False
                if f and upoly.multiplicity(F, f, h) != m:
                    return False
    nonzero = [f for f in fs if f]
    g = gs[c.failing_block - 1]
    if not nonzero:
        return not g  # only a vanishing inequation can refute an all-zero equation set
    common = nonzero[0]
    for f in nonzero[1:]:
        common = upoly.gcd(F, common, f)
    common = upoly.monic(F, common)
    # every irreducible factor of the common part must be listed in the basis
    rest = common
    for h in c.basis:
        while upoly.deg(rest) >= 1 and not upoly.rem(F, rest, h):
            rest = upoly.quo(F, rest, h)
    if upoly.deg(rest) >= 1:
        return False
    k = c.failing_block - 1
    for idx, h in enumerate(c.basis):
        col = [row[idx] for row in c.f_mults if row[idx] is not INF]
        if min(col) > c.g_mults[k][idx]:
            return False
    return True


# ---------------------------------------------------------------------------
# algebraically closed fields


@dataclass
class AcfResult:
    sat: bool
    characteristic: int
    point: tuple | None = None  # (K, assignment) over F_{p^K} when char p
    certificate: object = None

    def __bool__(self):
        return self.sat


def acf_decide(c: Conjunct, characteristic: int, seed: int = FIELD_SEED) -> AcfResult:
    """Satisfiability of a conjunct over an algebraically closed field of the given characteristic.

    Equations alone: Groebner triviality (Nullstellensatz).  Inequations
    alone: every inequation must be a nonzero polynomial.  Mixed conjuncts
    use the Rabinowitsch variable 1 - y * prod(g).
    """
    vars_ = list(c.variables())
    F = QQ if characteristic == 0 else prime_field(characteristic)
    if not c.eqs:
        for idx, g in enumerate(c.neqs):
            if not g.reduce(F).terms:
                cert = PolyVanishes(characteristic, idx + 1, g) if characteristic else None
                return AcfResult(False, characteristic, certificate=cert)
        point = nonvanishing_point(c.neqs, vars_, characteristic, seed) if characteristic else None
        return AcfResult(True, characteristic, point)
    eqs = list(c.eqs)
    if c.neqs:
        y = "_rabinowitsch"
        while y in vars_:
            y += "_"
        prod = Poly.const(1)
        for g in c.neqs:
            prod = prod * g
        eqs.append(Poly.const(1) - Poly.var(y) * prod)
        vars_.append(y)
    G = groebner(F, [to_dict(f, vars_, F) for f in eqs], len(vars_), "grevlex", cofactors=bool(characteristic))
    if G.is_trivial:
        cert = None
        if characteristic:
            cofs = [from_dict(cf, vars_, F) for cf in G.one_cofactors()]
            cert = ResidueObstruction(characteristic, tuple(vars_), eqs, cofs)
        return AcfResult(False, characteristic, certificate=cert)
    point = None
    if characteristic and not c.neqs:
        point = find_point(c.eqs, c.variables(), characteristic, seed)
    return AcfResult(True, characteristic, point)


def _residue_witness(gap: GapSentence, p: int, K: int, values: dict) -> PrimeWitness:
    R = series_ring(p, K, 0, p - 1)
    assignment = {}
    for block in gap.blocks:
        for orig, v in zip(gap.orig_vars, block):
            assignment[v] = R.scalar(values.get(orig, 0))
    return _finish(gap, PrimeWitness(p, K, 0, R.cap, R, assignment))


# ---------------------------------------------------------------------------
# general fragment: budgeted witness search


def _levels(budget: Budget):
    out = [
        (k, e, M)
        for k in range(1, budget.max_field_deg + 1)
        for e in range(0, budget.max_ram + 1)
        for M in range(1, budget.precision + 1)
    ]
    out.sort(key=lambda t: (sum(t), t))
    return out


def _candidates(R: SeriesRing, gap: GapSentence, m: int, budget: Budget, rng: random.Random):
    """Block assignments to try at one level (lists of m ring elements)."""
    F = R.field
    if F.q ** (R.m * m) <= budget.enum_cap:
        yield from itertools.product(list(R.elements()), repeat=m)
        return
    fbar = [f for f in gap.source.eqs if f.terms]
    names = gap.orig_vars
    if F.q**m <= budget.enum_cap:
        residues = list(itertools.product(range(F.q), repeat=m))
    else:
        residues = [tuple(rng.randrange(F.q) for _ in range(m)) for _ in range(budget.samples)]
    roots = [
        r for r in residues if all(F.is_zero(f.evaluate(F, dict(zip(names, r)))) for f in fbar)
    ]
    N = R.m
    for r in roots:
        base = [R.scalar(c) for c in r]
        yield tuple(base)
        for i in range(m):
            for j in range(1, N):
                for c in (F.one, F.generator()) if F.k > 1 else (F.one,):
                    x = list(base)
                    x[i] = R.add(x[i], R.monomial(c, j))
                    yield tuple(x)
        for _ in range(budget.samples):
            x = list(base)
            for i in range(m):
                if rng.random() < 0.7:
                    tail = [0] + [rng.randrange(F.q) if rng.random() < 0.3 else 0 for _ in range(N - 1)]
                    x[i] = R.add(x[i], R._trim(tuple(tail)))
            yield tuple(x)


def witness_search(gap: GapSentence, p: int, budget: Budget = Budget()):
    """Fair search over levels (k, e, M) by weight k + e + M; returns a PrimeWitness or None."""
    m = gap.m
    rng = random.Random(budget.seed * 7919 + p)
    for k, e, M in _levels(budget):
        R = series_ring(p, k, e, M)
        found: dict[int, tuple] = {}
        names = gap.orig_vars
        for x in _candidates(R, gap, m, budget, rng):
            env = dict(zip(names, x))
            up = min((R.valuation(f.evaluate(R, env)) for f in gap.source.eqs), default=AtLeastCap(M))
            for kk, g in enumerate(gap.source.neqs):
                if kk in found:
                    continue
                lo = R.valuation(g.evaluate(R, env))
                if lo.is_finite and lo < up:
                    found[kk] = (x, up, lo)
            if len(found) == gap.n:
                break
        if len(found) == gap.n:
            w = _assemble(gap, p, R, [found[kk] for kk in range(gap.n)])
            return w, {"level": {"k": k, "e": e, "M": M}}
    return None, {"levels": len(_levels(budget)), **budget.report()}


def _scale_factor(p: int, upper: Fraction, lower: Fraction) -> Fraction:
    """A p-power-denominator q with q * lower < 1 <= q * upper."""
    s = 0
    while True:
        d = p**s
        q = Fraction(_ceil(d / upper), d)
        if q * lower < 1:
            return q
        s += 1


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _assemble(gap: GapSentence, p: int, R: SeriesRing, per_block) -> PrimeWitness:
    """Rescale each block so all lowers sit below 1 <= all uppers, then normalize to cap p - 1."""
    scaled = []
    for x, up, lo in per_block:
        q = _scale_factor(p, up.value, lo.value)
        scaled.append([rescale(TruncSeries(R, a), q) for a in x])
    ctxs = [a.ctx for s in scaled for a in s] or [R]
    e_star = max(c.e for c in ctxs)
    cap = min(c.cap for c in ctxs)
    common = series_ring(p, R.k, e_star, cap)
    blocks_vals = [[recontext(a, common) for a in s] for s in scaled]
    # t -> t^(p-1) then truncate to cap p - 1
    final = series_ring(p, R.k, e_star, p - 1)
    assignment = {}
    for block, vals in zip(gap.blocks, blocks_vals):
        for v, a in zip(block, vals):
            b = rescale(a, p - 1) if p > 2 else a
            assignment[v] = recontext(b, final).coeffs
    return _finish(gap, PrimeWitness(p, R.k, e_star, final.cap, final, assignment))


def normalize_witness(gap: GapSentence, w: PrimeWitness) -> PrimeWitness:
    """Move a verified witness at any cap to cap p - 1 (a point of the local level)."""
    if w.cap == w.p - 1:
        return w
    R = w.ring
    uppers, lowers = _valuations(gap, w)
    up = min(uppers) if uppers else AtLeastCap(R.cap)
    lo = max(lowers)
    per_block = []
    for block in gap.blocks:
        per_block.append((tuple(w.assignment[v] for v in block), up, lo))
    return _assemble(gap, w.p, R, per_block)


# ---------------------------------------------------------------------------
# orchestration


@dataclass
class ConjunctDecision:
    conjunct: Conjunct
    fragment: str
    verdict: object


@dataclass
class ModPResult:
    p: int
    verdict: object
    conjuncts: list

    @property
    def tag(self) -> str:
        return self.verdict.tag


def decide_conjunct(c: Conjunct, p: int, budget: Budget = Budget()):
    fragment = classify(c)
    gap = gap_of(c)
    if fragment in (POSITIVE, INEQUATIONS_ONLY):
        res = acf_decide(c, p, FIELD_SEED)
        if not res.sat:
            return No([res.certificate], fragment)
        K, values = res.point
        return Yes(_residue_witness(gap, p, K, values), fragment)
    if fragment == SEPARATED:
        return decide_separated(gap, p)
    # general fragment
    F = prime_field(p)
    for idx, g in enumerate(c.neqs):
        if not g.reduce(F).terms:
            return No([PolyVanishes(p, idx + 1, g)], fragment)
    res = _residue_gb(c, p)
    if res is not None:
        return No([res], fragment)
    try:
        w, report = witness_search(gap, p, budget)
    except ResourceError as exc:
        return Inconclusive({"reason": str(exc), **budget.report()}, fragment)
    if w is None:
        return Inconclusive({"reason": "witness search exhausted", **report}, fragment)
    return Yes(w, fragment, note=f"found at level {report['level']}")


def _residue_gb(c: Conjunct, p: int):
    F = prime_field(p)
    vars_ = list(c.variables())
    G = groebner(F, [to_dict(f, vars_, F) for f in c.eqs], len(vars_), "grevlex", cofactors=True)
    if not G.is_trivial:
        return None
    cofs = [from_dict(cf, vars_, F) for cf in G.one_cofactors()]
    return ResidueObstruction(p, tuple(vars_), list(c.eqs), cofs)


def decide_mod_p(s: Sentence | str, p: int, budget: Budget = Budget(), dnf_cap: int | None = None) -> ModPResult:
    """Decide solvability in Z^ab/pZ^ab; disjuncts are OR-aggregated."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if isinstance(s, str):
        s = parse(s)
    conjuncts = to_dnf(s, cap=dnf_cap or DEFAULT_DNF_CAP)
    decisions = []
    for c in conjuncts:
        v = decide_conjunct(c, p, budget)
        decisions.append(ConjunctDecision(c, classify(c), v))
        if isinstance(v, Yes):
            v.conjunct = len(decisions) - 1
            return ModPResult(p, v, decisions)
    if all(isinstance(d.verdict, No) for d in decisions):
        certs = [d.verdict.certificates[0] for d in decisions]
        frag = decisions[0].fragment if len(decisions) == 1 else "mixed"
        return ModPResult(p, No(certs, frag), decisions)
    pending = [i for i, d in enumerate(decisions) if isinstance(d.verdict, Inconclusive)]
    report = {"unresolved_conjuncts": pending, **budget.report()}
    return ModPResult(p, Inconclusive(report, GENERAL), decisions)


def verify_verdict(result: ModPResult) -> bool:
    """Soundness gate: Yes re-verifies its witness, No re-checks every certificate."""
    v = result.verdict
    if isinstance(v, Yes):
        c = result.conjuncts[v.conjunct].conjunct
        return v.witness is not None and verify_witness(gap_of(c), v.witness)
    if isinstance(v, No):
        return len(v.certificates) == len(result.conjuncts) and all(check_certificate(x) for x in v.certificates)
    return True
