"""Invariant suites behind ``abmod selfcheck``.

Each suite enumerates its cases from small to large (random cases come from
a seeded generator), so the first failure reported is also a smallest one.
``inject_fault`` names a suite whose checker is deliberately broken; it
exists so the harness can prove that failures are caught and reported.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import upoly
from .algebra.cyclotomic import cyclotomic_coeffs, cyclotomic_mod_p, divisors, euler_phi
from .algebra.gf import make_ext_field, prime_field
from .algebra.poly import Poly
from .algebra.rings import CRT, TruncPolyRing, power_quotient_iso
from .algebra.series import TruncSeries, rescale, series_ring
from .formula import And, Conjunct, Literal, Or, eval_formula, to_dnf
from .oracle import product_transfer_check

SUITES = (
    "iso",
    "crt",
    "ultrametric",
    "frobenius",
    "cyclotomic",
    "rescale",
    "modulopfinite",
    "product_transfer",
    "dnf",
)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total and not self.failures

    def check(self, cond: bool, case):
        self.total += 1
        if cond:
            self.passed += 1
        elif len(self.failures) < 5:
            self.failures.append(case)

    def as_dict(self) -> dict:
        out = {"suite": self.name, "passed": self.passed, "total": self.total}
        if self.failures:
            out["counterexample"] = self.failures[0]
        return out


# ---------------------------------------------------------------------------
# suites


def suite_iso(rng, fault):
    """R^kappa[x]/(x^m) <-> (R[x]/(x^m))^kappa: both roundtrips and multiplicativity."""
    r = SuiteResult("iso")
    for p, m, kappa in [(2, 1, 1), (2, 2, 2), (3, 2, 2), (2, 3, 3), (5, 2, 3)]:
        R = prime_field(p)
        f, g, source, target = power_quotient_iso(R, m, kappa)
        for _ in range(40):
            a = source._trim([tuple(rng.randrange(p) for _ in range(kappa)) for _ in range(m)])
            b = source._trim([tuple(rng.randrange(p) for _ in range(kappa)) for _ in range(m)])
            fa = f(a)
            if fault:
                fa = (fa[-1],) + tuple(fa[:-1]) if kappa > 1 else target.add(fa, target.from_int(1))
            case = {"p": p, "m": m, "kappa": kappa, "a": repr(a)}
            r.check(g(fa) == a, case)
            r.check(f(source.mul(a, b)) == target.mul(f(a), f(b)), {**case, "b": repr(b)})
    return r


def suite_crt(rng, fault):
    """split o join = id and join o split = id for coprime moduli over F_p."""
    r = SuiteResult("crt")
    for p in (2, 3, 5):
        F = prime_field(p)
        for degs in [(1, 1), (1, 2), (1, 1, 2), (3, 2)]:
            pool = {d: list(_irreducibles(F, d)) for d in set(degs)}
            moduli = [pool[d].pop(0) for d in degs]
            crt = CRT(F, moduli)
            for _ in range(25):
                a = crt.ring.reduce(tuple(rng.randrange(p) for _ in range(upoly.deg(crt.ring.modulus))))
                parts = crt.split(a)
                if fault:
                    parts = tuple(reversed(parts))
                r.check(crt.join(parts) == a, {"p": p, "moduli": [list(m) for m in moduli], "a": list(a)})
                back = crt.split(crt.join(parts))
                r.check(back == parts, {"p": p, "parts": [list(x) for x in parts]})
    return r


def _irreducibles(F, d):
    for tail in itertools.product(range(F.p), repeat=d):
        h = tuple(tail) + (1,)
        if upoly.is_irreducible(F, h):
            yield h


def _random_series(R, rng, density=0.5):
    F = R.field
    return R._trim(tuple(rng.randrange(F.q) if rng.random() < density else 0 for _ in range(R.m)))


def suite_ultrametric(rng, fault):
    """v(ab) = v(a) + v(b) below the cap and v(a + b) >= min(v(a), v(b))."""
    r = SuiteResult("ultrametric")
    for p, k, e, M in [(2, 1, 1, 2), (3, 1, 1, 2), (2, 2, 2, 1), (5, 1, 0, 3), (3, 2, 1, 1)]:
        R = series_ring(p, k, e, M)
        for _ in range(60):
            a, b = _random_series(R, rng), _random_series(R, rng)
            va, vb = R.valuation(a), R.valuation(b)
            vs = R.valuation(R.add(a, b))
            if fault:
                vs = type(vs)(vs.value - 1, vs.at_least)
            case = {"ctx": repr(R), "a": R.fmt(a), "b": R.fmt(b)}
            r.check(vs >= min(va, vb), case)
            vab = R.valuation(R.mul(a, b))
            if va.is_finite and vb.is_finite and va.value + vb.value < M:
                r.check(vab.is_finite and vab.value == va.value + vb.value, case)
            else:
                r.check(not vab.is_finite or vab.value >= M, case)
    return r


def suite_frobenius(rng, fault):
    """(a + b)^p = a^p + b^p in characteristic p fields and series rings."""
    r = SuiteResult("frobenius")
    rings = [make_ext_field(p, k) for p, k in [(2, 1), (2, 3), (3, 2), (5, 1), (7, 2)]]
    rings += [series_ring(p, k, e, M) for p, k, e, M in [(2, 1, 1, 2), (3, 1, 1, 1), (2, 2, 2, 1)]]
    for R in rings:
        p = R.field.p if hasattr(R, "m") else R.p
        elems = (lambda: _random_series(R, rng)) if hasattr(R, "m") else (lambda: rng.randrange(R.q))
        for _ in range(50):
            a, b = elems(), elems()
            lhs = _pow(R, R.add(a, b), p)
            rhs = R.add(_pow(R, a, p), _pow(R, b, p))
            if fault:
                rhs = R.add(rhs, R.from_int(1))
            r.check(lhs == rhs, {"ring": repr(R), "a": repr(a), "b": repr(b)})
    return r


def _pow(R, a, n):
    acc = R.from_int(1)
    for _ in range(n):
        acc = R.mul(acc, a)
    return acc


def suite_cyclotomic(rng, fault):
    """prod over d | n of Phi_d = x^n - 1 for n <= 30, and deg Phi_n = phi(n)."""
    r = SuiteResult("cyclotomic")
    for n in range(1, 31):
        acc = Poly.const(1)
        for d in divisors(n):
            acc = acc * Poly.from_dense(cyclotomic_coeffs(d))
        target = Poly.var("x") ** n - Poly.const(1)
        if fault and n == 6:
            target = target + Poly.const(1)
        r.check(acc == target, {"n": n})
        r.check(len(cyclotomic_coeffs(n)) - 1 == euler_phi(n), {"n": n, "check": "degree"})
    return r


def suite_rescale(rng, fault):
    """v(rescale(a, q)) = q v(a), rescale is multiplicative, and precision scales with q."""
    r = SuiteResult("rescale")
    for p, k, e, M in [(2, 1, 1, 2), (3, 1, 0, 2), (2, 2, 1, 1), (5, 1, 1, 1)]:
        R = series_ring(p, k, e, M)
        for q in [Fraction(1), Fraction(2), Fraction(1, p), Fraction(3, p), Fraction(p - 1)]:
            if q <= 0:
                continue
            for _ in range(15):
                a = TruncSeries(R, _random_series(R, rng))
                b = TruncSeries(R, _random_series(R, rng))
                ra = rescale(a, q)
                want = a.valuation().scaled(q)
                got = ra.valuation()
                if fault:
                    want = want.scaled(2) if want.value else type(want)(Fraction(1), want.at_least)
                case = {"ctx": repr(R), "q": str(q), "a": str(a)}
                r.check(got == want and ra.ctx.cap == R.cap * q, case)
                r.check(rescale(a * b, q) == ra * rescale(b, q), {**case, "b": str(b)})
    return r


def suite_modulopfinite(rng, fault, cases=None):
    """Phi_{q-1} mod p splits into phi(q-1)/m distinct irreducibles of degree m (q = p^m)."""
    r = SuiteResult("modulopfinite")
    cases = cases or default_modulopfinite_cases()
    for p, m in cases:
        F = prime_field(p)
        n = p**m - 1
        _, facs = upoly.factor(F, cyclotomic_mod_p(n, p))
        want = euler_phi(n) // m
        if fault and (p, m) == cases[0]:
            want += 1
        ok = len(facs) == want and all(mult == 1 and upoly.deg(h) == m for h, mult in facs)
        r.check(ok, {"p": p, "m": m, "factors": len(facs), "expected": want})
    return r


def default_modulopfinite_cases() -> list:
    cases = [(p, m) for p in (2, 3, 5) for m in range(1, 6) if p**m <= 32]
    if (2, 4) not in cases:
        cases.append((2, 4))
    return sorted(cases)


def suite_product_transfer(rng, fault):
    """S^r |= c iff S |= replicate(c), on random small conjuncts."""
    r = SuiteResult("product_transfer")
    rings = [prime_field(2), prime_field(3), make_ext_field(2, 2), TruncPolyRing(prime_field(2), 2)]
    x = Poly.var("x")
    for S in rings:
        for _ in range(12):
            def rnd():
                return sum((Poly.const(rng.randint(-1, 1)) * x**d for d in range(3)), Poly())

            eqs = tuple(f for f in (rnd() for _ in range(rng.randint(0, 2))))
            neqs = tuple(g for g in (rnd() for _ in range(rng.randint(0, 2))))
            c = Conjunct(eqs, neqs, ("x",))
            n = max(len(eqs), len(neqs), 1)
            for rr in (n, n + 1):
                ok = product_transfer_check(S, rr, c)
                if fault:
                    ok = ok and rr == n
                r.check(ok, {"ring": repr(S), "r": rr, "conjunct": str(c)})
    return r


def suite_dnf(rng, fault):
    """to_dnf is equivalent to the formula on every assignment over F_2 and F_3."""
    r = SuiteResult("dnf")
    vars_ = ("x", "y")
    atoms = [Poly.var("x"), Poly.var("y"), Poly.var("x") - Poly.var("y"), Poly.var("x") * Poly.var("y") - 1]

    def rnd(depth):
        if depth == 0 or rng.random() < 0.3:
            return Literal(rng.choice(atoms), rng.choice(["=", "!="]))
        kids = tuple(rnd(depth - 1) for _ in range(rng.randint(2, 3)))
        return And(kids) if rng.random() < 0.5 else Or(kids)

    for p in (2, 3):
        F = prime_field(p)
        for _ in range(30):
            f = rnd(3)
            dnf = to_dnf(f, vars_)
            for vals in itertools.product(range(p), repeat=2):
                w = dict(zip(vars_, vals))
                lhs = eval_formula(f, F, w)
                rhs = any(eval_formula(c, F, w) for c in dnf)
                if fault:
                    rhs = not rhs
                r.check(lhs == rhs, {"p": p, "assignment": w})
    return r


_RUNNERS = {
    "iso": suite_iso,
    "crt": suite_crt,
    "ultrametric": suite_ultrametric,
    "frobenius": suite_frobenius,
    "cyclotomic": suite_cyclotomic,
    "rescale": suite_rescale,
    "modulopfinite": suite_modulopfinite,
    "product_transfer": suite_product_transfer,
    "dnf": suite_dnf,
}


def run(suites=None, seed: int = 0, inject_fault: str | None = None) -> list[SuiteResult]:
    names = list(suites) if suites else list(SUITES)
    for n in names + ([inject_fault] if inject_fault else []):
        if n not in _RUNNERS:
            raise ValueError(f"unknown suite {n!r} (choose from {', '.join(SUITES)})")
    out = []
    for name in names:
        rng = random.Random(f"{seed}:{name}")
        out.append(_RUNNERS[name](rng, inject_fault == name))
    return out


def report(results) -> dict:
    return {
        "ok": all(r.ok for r in results),
        "suites": [r.as_dict() for r in results],
    }
