"""Per-prime decisions, witnesses and certificates."""
from fractions import Fraction

import pytest

from abmod.algebra.poly import Poly
from abmod.algebra.series import TruncSeries, rescale, series_ring
from abmod.decider import (
    Budget,
    Inconclusive,
    No,
    OrdProfile,
    PolyVanishes,
    PrimeWitness,
    ResidueObstruction,
    Yes,
    acf_decide,
    check_certificate,
    decide_mod_p,
    decide_separated,
    normalize_witness,
    ord_profile,
    verify_verdict,
    verify_witness,
    witness_search,
)
from abmod.algebra.gf import prime_field
from abmod.errors import InputError
from abmod.formula import eval_formula, parse, to_dnf
from abmod.oracle import brute_sat, build_local_model
from abmod.reduction import gap_of, pad, replicate

x = Poly.var("x")


def conj(text):
    (c,) = to_dnf(parse(text))
    return c


def test_verify_witness_examples():
    g = gap_of(conj("x^2 = 1 & x != 1"))
    R = series_ring(2, 1, 1, 1)
    good = PrimeWitness(2, 1, 1, R.cap, R, {"x_1": R.add(R.one, R.uniformizer())})
    bad = PrimeWitness(2, 1, 1, R.cap, R, {"x_1": R.one})
    assert verify_witness(g, good)
    assert not verify_witness(g, bad)


def test_verify_witness_missing_variable():
    g = gap_of(conj("x^2 = 1 & x != 1"))
    R = series_ring(2, 1, 1, 1)
    with pytest.raises(InputError):
        verify_witness(g, PrimeWitness(2, 1, 1, R.cap, R, {}))


def test_rescaled_witness_still_verifies():
    c = conj("x^2 = 1 & x != 1")
    g = gap_of(c)
    w = decide_mod_p("x^2 = 1 & x != 1", 2).verdict.witness
    for q in (Fraction(1, 2), Fraction(3), Fraction(5, 4)):
        a = rescale(TruncSeries(w.ring, w.assignment["x_1"]), q)
        w2 = PrimeWitness(2, w.k, a.ctx.e, a.ctx.cap, a.ctx, {"x_1": a.coeffs})
        assert verify_witness(g, w2)
        assert verify_witness(g, normalize_witness(g, w2))


def test_flagship_p2():
    r = decide_mod_p("exists x: x^2 = 1 & x != 1", 2)
    v = r.verdict
    assert isinstance(v, Yes) and v.witness.e == 1
    assert v.witness.formatted() == {"x_1": "1 + t^(1/2)"}
    assert verify_verdict(r)


def test_x_cubed_one_p7_residue_witness():
    v = decide_mod_p("x^3 = 1 & x != 1", 7).verdict
    assert isinstance(v, Yes) and v.witness.e == 0 and v.witness.k == 1


def test_separated_no_with_ord_profile():
    r = decide_mod_p("x - 1 = 0 & (x - 1)^2 != 0", 3)
    (cert,) = r.verdict.certificates
    assert isinstance(cert, OrdProfile)
    assert cert.basis == [(2, 1)] and cert.f_mults == [[1]] and cert.g_mults == [[2]]
    assert check_certificate(cert)


def test_separated_yes_shared_factor():
    v = decide_mod_p("(x - 1)^2 = 0 & x - 1 != 0", 5).verdict
    assert isinstance(v, Yes) and v.witness.e == 0
    assert v.witness.formatted() == {"x_1": "1 + t^2"}  # cap 4: (t^2)^2 vanishes, t^2 does not


def test_separated_vanishing_inequation():
    (cert,) = decide_mod_p("x^2 = 1 & 3x != 0", 3).verdict.certificates
    assert isinstance(cert, PolyVanishes) and check_certificate(cert)


def test_separated_rejects_two_variables():
    with pytest.raises(InputError):
        decide_separated(gap_of(conj("x*y = 1 & x != 1")), 2)


def test_ord_profile_frobenius():
    F = prime_field(3)
    basis, table = ord_profile([(2, 0, 0, 1), (2, 1), ()], F)
    assert basis == [(2, 1)]
    assert table == [[3], [1], [None]]


def test_forged_ord_profile_fails_check():
    (cert,) = decide_mod_p("x - 1 = 0 & (x - 1)^2 != 0", 3).verdict.certificates
    forged = OrdProfile(cert.p, cert.basis, cert.f_mults, [[0]], 1, cert.f_polys, cert.g_polys)
    assert not check_certificate(forged)


def test_positive_extension_root():
    v = decide_mod_p("x^2 + x + 1 = 0", 5).verdict
    assert isinstance(v, Yes) and v.witness.k == 2


def test_positive_unsat_certificate():
    r = decide_mod_p("x*y - 1 = 0 & x = 0", 5)
    (cert,) = r.verdict.certificates
    assert isinstance(cert, ResidueObstruction) and check_certificate(cert)


def test_acf_flagship_unsat_in_char_p():
    for p in (2, 3, 5):
        c = conj(f"x^{p} = 1 & x != 1")
        res = acf_decide(c, p)
        assert not res.sat and check_certificate(res.certificate)
        assert acf_decide(c, 0).sat


def test_acf_inequations_and_trivial():
    assert acf_decide(conj("x != 0 & y - 1 != 0"), 2).sat
    assert not acf_decide(conj("1 = 0"), 7).sat
    assert acf_decide(conj("x^2 + x + 1 = 0"), 0).sat


def test_general_fragment_search():
    r = decide_mod_p("x*y = 1 & x - 1 != 0", 2)
    assert isinstance(r.verdict, Yes) and verify_verdict(r)
    r = decide_mod_p("x*y = 1 & x = 0 & y != 1", 3)
    assert isinstance(r.verdict, No)


def test_general_fragment_exhausted_is_inconclusive():
    # the second block needs a nilpotent x, which F_2 alone does not have
    text = "x^2 = 0 & x*y = 0 & y != 0 & x + y != y"
    r = decide_mod_p(text, 2, Budget(1, 0, 1))
    assert isinstance(r.verdict, Inconclusive)
    assert r.verdict.report["unresolved_conjuncts"] == [0]
    r = decide_mod_p(text, 2)
    assert isinstance(r.verdict, Yes) and verify_verdict(r)


def test_witness_search_never_says_no():
    g = gap_of(conj("x - 1 = 0 & (x - 1)^2 != 0"))
    w, report = witness_search(g, 3, Budget(2, 2, 2))
    assert w is None and "levels" in report


def test_disjunction_aggregation():
    r = decide_mod_p("x - 1 = 0 & (x-1)^2 != 0 | x^2 + 1 = 0", 3)
    assert isinstance(r.verdict, Yes) and r.verdict.conjunct == 1
    r = decide_mod_p("x - 1 = 0 & (x-1)^2 != 0 | 3 x != 0", 3)
    assert isinstance(r.verdict, No) and len(r.verdict.certificates) == 2
    assert verify_verdict(r)


def test_non_prime_rejected():
    with pytest.raises(InputError):
        decide_mod_p("x = 0", 4)


@pytest.mark.parametrize(
    "text,p", [("x^2 = 1 & x != 1", 2), ("x^3 = 1 & x != 1", 3), ("x^2 + 1 = 0 & x != 1", 2), ("x != 0", 3)]
)
def test_witness_lands_in_local_model(text, p):
    """A Yes witness at cap p - 1 is a point of F_{p^k}[v]/v^(p^e (p-1)) satisfying the replicated conjunct."""
    c = conj(text)
    w = decide_mod_p(text, p).verdict.witness
    R = build_local_model(p, w.k, w.e).ring
    assert R == w.ring
    rc = replicate(pad(c)).conjunct()
    assert eval_formula(rc, R, w.assignment)
    assert brute_sat(R, rc)[0]
