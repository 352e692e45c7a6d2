"""All-primes driver.

The sentence is first decided in residue characteristic 0.  For the
complete fragments the char-0 computation also yields a finite set of
exceptional ("bad") primes outside of which reduction mod p preserves the
data the verdict rests on, so only those primes (plus a small floor set)
need individual attention.  General conjuncts have no such set; they are
checked prime by prime up to a bound and stay Inconclusive unless refuted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .algebra.base import QQ
from .algebra.gf import is_prime
from .algebra.groebner import PrimeTrace, groebner, to_dict
from .algebra.poly import Poly, content
from .algebra.qfactor import discriminant, factor_q, prime_factors, resultant
from .decider import Budget, Inconclusive, ModPResult, No, Yes, decide_mod_p, verify_verdict
from .errors import ResourceError
from .formula import DEFAULT_DNF_CAP, Conjunct, Sentence, parse, to_dnf
from .reduction import GENERAL, INEQUATIONS_ONLY, POSITIVE, SEPARATED, classify

FLOOR_BOUND = 13
SEPARATED_ASSUMPTION = (
    "separated transfer: verdict assumed stable outside the bad-prime set "
    "(enforced by construction of the set, validated empirically)"
)


def primes_upto(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if is_prime(q)]


def next_prime(n: int) -> int:
    q = n + 1
    while not is_prime(q):
        q += 1
    return q


# ---------------------------------------------------------------------------
# bad primes


@dataclass
class BadPrimeSet:
    provenance: dict = field(default_factory=dict)  # prime -> first reason

    def add(self, n, why: str):
        if n == 0:
            raise AssertionError(f"zero invariant ({why})")
        for q in prime_factors(int(n)):
            self.provenance.setdefault(q, why)

    def merge(self, other: "BadPrimeSet"):
        for q, why in other.provenance.items():
            self.provenance.setdefault(q, why)

    @property
    def primes(self) -> list[int]:
        return sorted(self.provenance)

    def __contains__(self, q):
        return q in self.provenance

    def as_list(self) -> list[dict]:
        return [{"p": q, "reason": self.provenance[q]} for q in self.primes]


def bad_primes(trace) -> BadPrimeSet:
    """Bad-prime set from a char-0 trace: a PrimeTrace, a mapping number -> reason, or a BadPrimeSet."""
    if isinstance(trace, BadPrimeSet):
        return trace
    numbers = trace.numbers if isinstance(trace, PrimeTrace) else dict(trace)
    out = BadPrimeSet()
    for n, why in numbers.items():
        out.add(n, why)
    return out


def _lc_content(bad: BadPrimeSet, polys, label: str):
    for idx, f in enumerate(polys, 1):
        if f.terms:
            bad.add(content(f), f"content of {label} {idx}")
            lead = f.sorted_terms()[0][1]
            bad.add(lead, f"leading coefficient of {label} {idx}")


def _factor_data(bad: BadPrimeSet, dense_polys) -> list:
    """Q-irreducible factors of the nonzero inputs; records their leading coefficients, discriminants, resultants."""
    basis = []
    for f in dense_polys:
        if f and len(f) > 1:
            _, facs = factor_q(f)
            for h, _ in facs:
                if h not in basis:
                    basis.append(h)
    basis.sort(key=lambda h: (len(h), h))
    for h in basis:
        name = _dense_str(h)
        bad.add(h[-1], f"leading coefficient of factor {name}")
        if len(h) > 2:
            bad.add(discriminant(h), f"discriminant of factor {name}")
    for a, b in combinations(basis, 2):
        bad.add(resultant(a, b), f"resultant of factors {_dense_str(a)}, {_dense_str(b)}")
    return basis


def _dense_str(h) -> str:
    return Poly.from_dense(h, "x").to_str()


# ---------------------------------------------------------------------------
# char 0


@dataclass
class Char0Result:
    verdict: str  # "yes" | "no" | "inconclusive"
    fragment: str
    bad: BadPrimeSet
    detail: dict = field(default_factory=dict)


def _multiplicity_q(f: tuple, h: tuple) -> int | None:
    if not f:
        return None
    if len(f) == 1:
        return 0
    _, facs = factor_q(f)
    return dict(facs).get(h, 0)


def _char0_separated(c: Conjunct) -> Char0Result:
    bad = BadPrimeSet()
    vars_ = c.variables()
    _lc_content(bad, c.eqs, "equation")
    _lc_content(bad, c.neqs, "inequation")
    if any(not g.terms for g in c.neqs):
        return Char0Result("no", SEPARATED, bad, {"reason": "an inequation is the zero polynomial"})
    if not vars_:
        ok = all(not f.terms for f in c.eqs)
        return Char0Result("yes" if ok else "no", SEPARATED, bad, {"reason": "constant literals"})
    x = vars_[0]
    fs = [f.to_dense(x) if f.terms else () for f in c.eqs]
    gs = [g.to_dense(x) for g in c.neqs]
    basis = _factor_data(bad, fs + gs)
    if all(not f for f in fs):
        return Char0Result("yes", SEPARATED, bad, {"reason": "all equations vanish"})
    for k, g in enumerate(gs, 1):
        ok = False
        for h in basis:
            col = [_multiplicity_q(f, h) for f in fs]
            col = [m for m in col if m is not None]
            if min(col) > _multiplicity_q(g, h):
                ok = True
                break
        if not ok:
            return Char0Result("no", SEPARATED, bad, {"failing_block": k, "basis": [_dense_str(h) for h in basis]})
    return Char0Result("yes", SEPARATED, bad, {"basis": [_dense_str(h) for h in basis]})


def _char0_positive(c: Conjunct) -> Char0Result:
    bad = BadPrimeSet()
    _lc_content(bad, c.eqs, "equation")
    vars_ = list(c.variables())
    trace = PrimeTrace()
    G = groebner(QQ, [to_dict(f, vars_, QQ) for f in c.eqs], len(vars_), "grevlex", trace=trace.hook("Groebner coefficient"))
    bad.merge(bad_primes(trace))
    if len(vars_) == 1:
        # a univariate ideal is read through its factors; their separation must survive mod p too
        _factor_data(bad, [f.to_dense(vars_[0]) for f in c.eqs if f.terms])
    return Char0Result("no" if G.is_trivial else "yes", POSITIVE, bad, {"basis_size": len(G.basis)})


def _char0_inequations(c: Conjunct) -> Char0Result:
    bad = BadPrimeSet()
    for idx, g in enumerate(c.neqs, 1):
        if not g.terms:
            return Char0Result("no", INEQUATIONS_ONLY, bad, {"reason": f"inequation {idx} is the zero polynomial"})
        bad.add(content(g), f"content of inequation {idx}")
    return Char0Result("yes", INEQUATIONS_ONLY, bad)


def char0_conjunct(c: Conjunct) -> Char0Result:
    frag = classify(c)
    if frag == POSITIVE:
        return _char0_positive(c)
    if frag == INEQUATIONS_ONLY:
        return _char0_inequations(c)
    if frag == SEPARATED:
        return _char0_separated(c)
    return Char0Result("inconclusive", GENERAL, BadPrimeSet(), {"reason": "no complete char-0 procedure"})


def char0_decide(s: Sentence | str, dnf_cap: int = DEFAULT_DNF_CAP) -> Char0Result:
    """Residue-characteristic-0 verdict for the whole sentence, with the union of bad primes."""
    if isinstance(s, str):
        s = parse(s)
    results = [char0_conjunct(c) for c in to_dnf(s, cap=dnf_cap)]
    bad = BadPrimeSet()
    for r in results:
        bad.merge(r.bad)
    frags = sorted({r.fragment for r in results})
    frag = frags[0] if len(frags) == 1 else "mixed"
    per = [{"fragment": r.fragment, "verdict": r.verdict, **r.detail} for r in results]
    if any(r.verdict == "yes" for r in results):
        return Char0Result("yes", frag, bad, {"conjuncts": per})
    if all(r.verdict == "no" for r in results):
        return Char0Result("no", frag, bad, {"conjuncts": per})
    return Char0Result("inconclusive", frag, bad, {"conjuncts": per})


# ---------------------------------------------------------------------------
# aggregation


@dataclass
class HoldsForAll:
    char0: Char0Result
    checked: dict  # p -> ModPResult (all Yes)
    assumption: str = ""
    tag: str = "holds_for_all"


@dataclass
class FailsAt:
    p: int
    result: object  # ModPResult with a No verdict
    char0: Char0Result
    checked: dict
    tag: str = "fails_at"


@dataclass
class AllPrimesInconclusive:
    char0: Char0Result
    checked: dict
    reason: str
    contradiction: bool = False
    tag: str = "inconclusive"

    @property
    def unresolved(self) -> list:
        """Checked primes whose own per-prime verdict was Inconclusive."""
        return sorted(p for p, r in self.checked.items() if isinstance(r.verdict, Inconclusive))

    @property
    def report(self) -> dict:
        return {
            "char0": self.char0.verdict,
            "bad_primes": self.char0.bad.primes,
            "reason": self.reason,
            "unresolved": self.unresolved,
            "contradiction": self.contradiction,
        }


def _check(s, p, budget, dnf_cap, checked):
    if p not in checked:
        try:
            r = decide_mod_p(s, p, budget, dnf_cap)
        except ResourceError as exc:
            r = ModPResult(p, Inconclusive({"reason": str(exc), **budget.report()}), [])
        if not verify_verdict(r):
            raise AssertionError(f"per-prime verdict at p={p} failed its own check")
        checked[p] = r
    return checked[p]


def decide_all_primes(
    s: Sentence | str,
    budget: Budget = Budget(),
    prime_bound: int = FLOOR_BOUND,
    floor: list | str = "auto",
    dnf_cap: int = DEFAULT_DNF_CAP,
):
    """HoldsForAll, FailsAt(p) or Inconclusive for the sentence over every prime."""
    if isinstance(s, str):
        s = parse(s)
    c0 = char0_decide(s, dnf_cap)
    floor_set = primes_upto(FLOOR_BOUND) if floor == "auto" else sorted(set(floor))
    bad = c0.bad.primes
    checked: dict = {}

    if c0.verdict == "yes":
        for p in sorted(set(bad) | set(floor_set)):
            _check(s, p, budget, dnf_cap, checked)
        nos = [p for p, r in checked.items() if isinstance(r.verdict, No)]
        if nos:
            p = min(nos)
            return FailsAt(p, checked[p], c0, checked)
        if any(not isinstance(r.verdict, Yes) for r in checked.values()):
            return AllPrimesInconclusive(c0, checked, "an exceptional prime exhausted its budget")
        assumption = SEPARATED_ASSUMPTION if SEPARATED in c0.fragment or c0.fragment == "mixed" else ""
        return HoldsForAll(c0, checked, assumption)

    if c0.verdict == "no":
        # every prime outside the bad set fails, so the search ends at the first good prime
        limit = max(bad + [prime_bound])
        p = 2
        while True:
            r = _check(s, p, budget, dnf_cap, checked)
            if isinstance(r.verdict, No):
                return FailsAt(p, r, c0, checked)
            if p >= limit and p not in c0.bad:
                break
            p = next_prime(p)
        why = "characteristic 0 says no but no checked prime fails"
        return AllPrimesInconclusive(c0, checked, why, contradiction=True)

    # no complete char-0 verdict: refute at a small prime or give up honestly
    for p in primes_upto(prime_bound):
        r = _check(s, p, budget, dnf_cap, checked)
        if isinstance(r.verdict, No):
            return FailsAt(p, r, c0, checked)
    why = f"no characteristic 0 decision for this fragment and no failure at primes <= {prime_bound}"
    return AllPrimesInconclusive(c0, checked, why)
