"""Acceptance suite: one test per criterion, budgets pinned.

The criterion 4 and 6 corpora are large, so both use the same reductions:
a conjunct's verdict at p depends only on its polynomials mod p up to
nonzero scalars, which lets the integer corpus collapse to zero plus monic
polynomials over F_p.  Where even that corpus is too large (n = 2 at
p = 3, 5) a fixed-seed sample is drawn.  ``test_normalization_invariance``
checks the collapse itself on raw integer conjuncts.
"""
from __future__ import annotations

import itertools
import random
import time

import pytest

from abmod import selfcheck as sc
from abmod.algebra.cyclotomic import euler_phi
from abmod.algebra.gf import make_ext_field, prime_field
from abmod.algebra.poly import Poly
from abmod.algebra.rings import TableRing, TruncPolyRing
from abmod.decider import (
    Inconclusive,
    No,
    Yes,
    acf_decide,
    check_certificate,
    decide_conjunct,
    decide_mod_p,
    decide_separated,
    verify_verdict,
    verify_witness,
)
from abmod.formula import Conjunct, parse, to_dnf
from abmod.oracle import build_cyclotomic_model, coset_sat, product_transfer_check
from abmod.reduction import GENERAL, SEPARATED, classify, gap_of, pad, replicate
from abmod.transfer import AllPrimesInconclusive, FailsAt, HoldsForAll, char0_conjunct, decide_all_primes, primes_upto

X = ("x",)

# budgets, seconds
C1_LIMIT = 5
C2_LIMIT = 5
C3_LIMIT = 60
C4_LIMIT = 600
C5_LIMIT = 5
C6_LIMIT = 600
C7_LIMIT = 60

# sample sizes for the parts of the corpora that are not run exhaustively
C3_BIVARIATE_SAMPLE = 600
C3_BIVARIATE_MAX_RING = 4  # S^r x S^r enumeration gets too large past this
C4_N2_SAMPLE = {3: 20000, 5: 8000}
C6_N2_SAMPLE = 3000


def _int_polys(deg: int, lo: int, hi: int, var: str = "x") -> list[Poly]:
    return [Poly.from_dense(c, var) for c in itertools.product(range(lo, hi + 1), repeat=deg + 1)]


def _up_to_sign(polys):
    seen = {}
    for f in polys:
        if f.terms and f.sorted_terms()[0][1] < 0:
            f = -f
        seen.setdefault(f, None)
    return sorted(seen, key=str)


def _monic_mod_p(p: int, deg: int = 3) -> list[Poly]:
    """Zero and every monic polynomial of degree <= deg over F_p, as integer polynomials."""
    out = [Poly()]
    for d in range(deg + 1):
        for tail in itertools.product(range(p), repeat=d):
            out.append(Poly.from_dense(tuple(tail) + (1,), "x"))
    return out


def _normalize_mod_p(f: Poly, p: int) -> Poly:
    dense = [c % p for c in f.to_dense("x")] if f.terms else []
    while dense and dense[-1] == 0:
        dense.pop()
    if not dense:
        return Poly()
    inv = pow(dense[-1], -1, p)
    return Poly.from_dense(tuple(c * inv % p for c in dense), "x")


def _conj(eqs, neqs) -> Conjunct:
    return Conjunct(tuple(eqs), tuple(neqs), X)


# -- 1 ---------------------------------------------------------------------


def test_c1_cyclotomic_splitting_counts():
    t0 = time.perf_counter()
    cases = [(p, m) for p in (2, 3, 5) for m in range(1, 6) if p**m <= 32] + [(2, 4)]
    for p, m in cases:
        q = p**m
        model = build_cyclotomic_model(q - 1, p)
        degs = [len(h) - 1 for h, _ in model.factors]
        assert len(degs) == euler_phi(q - 1) // m, (p, m)
        assert set(degs) == {m} and all(mult == 1 for _, mult in model.factors), (p, m)
        assert len({h for h, _ in model.factors}) == len(degs)
    assert time.perf_counter() - t0 < C1_LIMIT


# -- 2 ---------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_c2_flagship(p):
    t0 = time.perf_counter()
    text = f"exists x: x^{p} = 1 & x != 1"
    r = decide_mod_p(text, p)
    v = r.verdict
    assert isinstance(v, Yes) and verify_verdict(r)
    (c,) = to_dnf(parse(text))
    assert verify_witness(gap_of(c), v.witness)
    if p == 2:
        assert v.witness.e >= 1
    assert not acf_decide(c, p).sat
    assert time.perf_counter() - t0 < C2_LIMIT


# -- 3 ---------------------------------------------------------------------

C3_RINGS = {
    "F2": prime_field(2),
    "F3": prime_field(3),
    "F4": make_ext_field(2, 2),
    "F2[v]/v^2": TruncPolyRing(prime_field(2), 2),
    "F3[v]/v^2": TruncPolyRing(prime_field(3), 2),
}


def _multisets(polys, upto):
    for size in range(upto + 1):
        yield from itertools.combinations_with_replacement(polys, size)


class _ZeroSets:
    """Zero set of each corpus polynomial in S^m; both sides of the law depend only on these."""

    def __init__(self, S, variables):
        self.S, self.vars = S, variables
        self.points = list(itertools.product(list(S.elements()), repeat=len(variables)))
        self.cache = {}

    def __call__(self, f):
        if f not in self.cache:
            ev = f.compile(self.S, self.vars)
            self.cache[f] = tuple(i for i, pt in enumerate(self.points) if self.S.is_zero(ev(pt)))
        return self.cache[f]

    def signature(self, c):
        return (tuple(sorted(map(self, c.eqs))), tuple(sorted(map(self, c.neqs))))


def _c3_corpus():
    uni = _int_polys(2, -1, 1)
    sets = list(_multisets(uni, 2))
    for eqs, neqs in itertools.product(sets, repeat=2):
        if eqs or neqs:
            yield X, Conjunct(eqs, neqs, X)
    xy = ("x", "y")
    x, y = Poly.var("x"), Poly.var("y")
    monos = [Poly.const(1), x, y, x**2, x * y, y**2]
    rng = random.Random("c3")
    for _ in range(C3_BIVARIATE_SAMPLE):
        pick = lambda: sum((rng.randint(-1, 1) * m for m in monos), Poly())  # noqa: E731
        eqs = tuple(pick() for _ in range(rng.randint(0, 2)))
        neqs = tuple(pick() for _ in range(rng.randint(0 if eqs else 1, 2)))
        yield xy, Conjunct(eqs, neqs, xy)


def test_c3_replication_law():
    t0 = time.perf_counter()
    corpus = list(_c3_corpus())
    violations, checked = [], 0
    for name, S in C3_RINGS.items():
        S = TableRing(S)
        zs = {}
        memo = {}
        for variables, c in corpus:
            if len(variables) > 1 and S.size > C3_BIVARIATE_MAX_RING:
                continue
            z = zs.setdefault(variables, _ZeroSets(S, variables))
            n = max(len(c.eqs), len(c.neqs), 1)
            key = (variables, z.signature(c))
            if key not in memo:
                memo[key] = [r for r in (n, n + 1) if not product_transfer_check(S, r, c)]
            checked += 2
            if memo[key]:
                violations.append((name, str(c), memo[key]))
    assert not violations, violations[:5]
    assert checked > 10**6
    assert time.perf_counter() - t0 < C3_LIMIT


# -- 4 ---------------------------------------------------------------------


def _c4_cases(p):
    P = _monic_mod_p(p)
    pairs = list(itertools.combinations_with_replacement(P, 2))
    for f, g in itertools.product(P, repeat=2):
        yield _conj([f], [g])
    if p in C4_N2_SAMPLE:
        rng = random.Random(f"c4:{p}")
        for _ in range(C4_N2_SAMPLE[p]):
            yield _conj(rng.choice(pairs), rng.choice(pairs))
    else:
        # permuting inequations permutes blocks, so unordered pairs suffice
        for fs, gs in itertools.product(pairs, repeat=2):
            yield _conj(fs, gs)


@pytest.fixture(scope="module")
def c4_results():
    t0 = time.perf_counter()
    rows = []
    for p in (2, 3, 5):
        for c in _c4_cases(p):
            if classify(c) != SEPARATED:
                continue
            v = decide_separated(gap_of(c), p)
            sat, _ = coset_sat(p, 2, 2, replicate(pad(c)).conjunct())
            rows.append((p, c, v, sat))
    return rows, time.perf_counter() - t0


def test_c4_separated_completeness(c4_results):
    """Strict form: every Yes has an oracle witness at k <= 2, e <= 2."""
    rows, elapsed = c4_results
    yes_side = [(p, str(c), v.witness.k, v.witness.e) for p, c, v, sat in rows if isinstance(v, Yes) and not sat]
    no_side = [(p, str(c)) for p, c, v, sat in rows if isinstance(v, No) and sat]
    assert not no_side, no_side[:5]
    assert elapsed < C4_LIMIT
    assert not yes_side, (
        f"{len(yes_side)} Yes verdicts (corpus of {len(rows)}) have no oracle witness at k <= 2, e <= 2; "
        f"first: {yes_side[:5]} (see notes/decisions.md)"
    )


def test_c4_witness_levels_explain_disagreements(c4_results):
    """Every Yes the level-(2, 2) oracle misses is confirmed at the witness's own level."""
    rows, _ = c4_results
    missed = [(p, c, v) for p, c, v, sat in rows if isinstance(v, Yes) and not sat]
    for p, c, v in missed:
        w = v.witness
        assert w.k > 2 or w.e > 2, (p, str(c), w.k, w.e)
        ok, _ = coset_sat(p, w.k, w.e, replicate(pad(c)).conjunct())
        assert ok, (p, str(c), w.k, w.e)


def test_c4_normalization_invariance():
    rng = random.Random("c4:raw")
    raw = _int_polys(3, -2, 2)
    for _ in range(400):
        n = rng.randint(1, 2)
        eqs = [rng.choice(raw) for _ in range(n)]
        neqs = [rng.choice(raw) for _ in range(rng.randint(1, 2))]
        c = _conj(eqs, neqs)
        if classify(c) != SEPARATED:
            continue
        for p in (2, 3, 5):
            d = _conj([_normalize_mod_p(f, p) for f in eqs], [_normalize_mod_p(g, p) for g in neqs])
            assert decide_separated(gap_of(c), p).tag == decide_separated(gap_of(d), p).tag, (str(c), p)


# -- 5 ---------------------------------------------------------------------


def test_c5_all_primes_driver():
    t0 = time.perf_counter()
    r = decide_all_primes("x^2+x+1=0")
    assert isinstance(r, HoldsForAll) and r.char0.bad.primes == [3]
    assert isinstance(r.checked[3].verdict, Yes) and verify_verdict(r.checked[3])

    r = decide_all_primes("2x-1=0")
    assert isinstance(r, FailsAt) and r.p == 2
    assert all(check_certificate(c) for c in r.result.verdict.certificates)

    r = decide_all_primes("x-1=0 & (x-1)^2 != 0")
    assert isinstance(r, FailsAt) and r.p == 2 and r.char0.verdict == "no"
    assert verify_verdict(r.result)
    assert time.perf_counter() - t0 < C5_LIMIT


# -- 6 ---------------------------------------------------------------------


class _ModPMemo:
    def __init__(self):
        self.memo = {}

    def __call__(self, c, p):
        key = (p, tuple(_normalize_mod_p(f, p) for f in c.eqs), tuple(_normalize_mod_p(g, p) for g in c.neqs))
        if key not in self.memo:
            self.memo[key] = decide_conjunct(c, p).tag
        return self.memo[key]


def _c6_corpus():
    P = _up_to_sign(_int_polys(3, -2, 2))
    for f, g in itertools.product(P, repeat=2):
        yield _conj([f], [g])
    pairs = list(itertools.combinations_with_replacement(P, 2))
    rng = random.Random("c6")
    for _ in range(C6_N2_SAMPLE):
        yield _conj(rng.choice(pairs), rng.choice(pairs))


def test_c6_transfer_consistency():
    t0 = time.perf_counter()
    modp = _ModPMemo()
    violations, checked = [], 0
    for c in _c6_corpus():
        if classify(c) != SEPARATED:
            continue
        r = char0_conjunct(c)
        for p in primes_upto(13):
            if p in r.bad:
                continue
            checked += 1
            if modp(c, p) != r.verdict:
                violations.append((str(c), p, r.verdict))
    assert not violations, violations[:5]
    assert checked > 3 * 10**5
    assert time.perf_counter() - t0 < C6_LIMIT


# -- 7 ---------------------------------------------------------------------


def test_c7_selfcheck_suites():
    t0 = time.perf_counter()
    results = sc.run()
    names = {r.name for r in results}
    assert {"iso", "crt", "ultrametric", "frobenius", "cyclotomic", "rescale"} <= names
    assert all(r.ok and r.total > 0 for r in results), [r.as_dict() for r in results if not r.ok]
    assert time.perf_counter() - t0 < C7_LIMIT


# -- 8 ---------------------------------------------------------------------

GATE_SENTENCES = [
    "exists x: x^2 = 1 & x != 1",
    "x^3 = 1 & x != 1",
    "x - 1 = 0 & (x - 1)^2 != 0",
    "x^2 + x + 1 = 0",
    "x*y - 1 = 0 & x = 0",
    "x != 0 & y - 1 != 0",
    "2x - 1 = 0",
    "3x != 0 & x^2 = 1",
    "x*y = 1 & x - 1 != 0",
    "x*y = 1 & x = 0 & y != 1",
    "x^2 = 0 & x*y = 0 & y != 0 & x + y != y",
    "(x = 0 | y = 0) & x*y - 1 != 0",
    "x - 1 = 0 & (x-1)^2 != 0 | x^2 + 1 = 0",
    "x^2 + y^2 = 1 & x != 1 & x != -1",
]


def _gate(r):
    assert verify_verdict(r), (r.p, r.verdict)
    if isinstance(r.verdict, Inconclusive):
        pending = [d for d in r.conjuncts if isinstance(d.verdict, Inconclusive)]
        assert pending and all(d.fragment == GENERAL for d in pending)


def test_c8_soundness_gate(c4_results):
    for text in GATE_SENTENCES:
        for p in (2, 3, 5, 7):
            _gate(decide_mod_p(text, p))
        res = decide_all_primes(text)
        for r in res.checked.values():
            _gate(r)
        if isinstance(res, AllPrimesInconclusive):
            assert not res.contradiction
            assert res.char0.verdict == "inconclusive" or res.unresolved
    rows, _ = c4_results
    for p, c, v, _ in rows:
        if isinstance(v, Yes):
            assert verify_witness(gap_of(c), v.witness), (p, str(c))
        else:
            assert isinstance(v, No) and all(check_certificate(x) for x in v.certificates), (p, str(c))
