"""Kernel tests: finite fields, univariate factoring, CRT, series, cyclotomics, Groebner, Q-factoring."""
from fractions import Fraction
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from abmod.algebra import upoly
from abmod.algebra.base import QQ, ZZ
from abmod.algebra.cyclotomic import cyclotomic, cyclotomic_coeffs, euler_phi, multiplicative_order, splitting_profile
from abmod.algebra.gf import GF, embedding, is_prime, make_ext_field, prime_field
from abmod.algebra.groebner import PrimeTrace, combination, groebner, ideal_is_trivial, to_dict
from abmod.algebra.poly import Poly, content
from abmod.algebra.qfactor import discriminant, factor_q, resultant
from abmod.algebra.rings import CRT, ProductRing, TableRing, TruncPolyRing, power_quotient_iso
from abmod.algebra.series import (
    AtLeastCap,
    Finite,
    TruncSeries,
    parse_series,
    recontext,
    rescale,
    series_ring,
)
from abmod.algebra.variety import find_point, nonvanishing_point
from abmod.errors import ContextMismatchError, InputError

x, y = Poly.var("x"), Poly.var("y")


# -- finite fields -----------------------------------------------------------


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("p,k", [(2, 1), (2, 3), (3, 2), (5, 2), (2, 4)])
def test_field_axioms_exhaustive(p, k):
    F = make_ext_field(p, k)
    elems = list(F.elements())
    assert len(elems) == p**k
    for a in elems:
        assert F.add(a, F.neg(a)) == F.zero
        if a:
            assert F.mul(a, F.inv(a)) == F.one
        assert F.pow(a, p**k) == a


def test_field_modulus_divides_x_q_minus_x():
    F = make_ext_field(3, 2)
    base = prime_field(3)
    xq = upoly.sub(base, upoly.shift(base, (1,), 9), (0, 1))
    assert not upoly.rem(base, xq, F.modulus)


def test_non_prime_rejected():
    with pytest.raises(InputError):
        GF(4)


def test_embedding_is_a_ring_map():
    src, dst = make_ext_field(2, 2), make_ext_field(2, 4)
    emb = embedding(src, dst)
    for a, b in itertools.product(src.elements(), repeat=2):
        assert emb(src.mul(a, b)) == dst.mul(emb(a), emb(b))
        assert emb(src.add(a, b)) == dst.add(emb(a), emb(b))


def test_embedding_needs_divisibility():
    with pytest.raises(InputError):
        embedding(make_ext_field(2, 2), make_ext_field(2, 3))


# -- univariate polynomials ----------------------------------------------------


def test_factor_x2_x_1_mod_3():
    F = prime_field(3)
    unit, facs = upoly.factor(F, (1, 1, 1))
    assert unit == 1 and facs == [((2, 1), 2)]


def test_x_p_minus_1_is_frobenius_collapse():
    for p in (2, 3, 5, 7):
        F = prime_field(p)
        f = upoly.sub(F, upoly.shift(F, (1,), p), (1,))
        assert upoly.factor(F, f)[1] == [((p - 1, 1), p)]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=7), st.sampled_from([2, 3, 5]))
def test_factor_product_reconstructs(coeffs, p):
    F = prime_field(p)
    f = upoly.trim(F, [c % p for c in coeffs])
    if not f:
        return
    unit, facs = upoly.factor(F, f)
    acc = (unit,)
    for h, m in facs:
        assert upoly.is_irreducible(F, h) and h[-1] == 1
        acc = upoly.mul(F, acc, upoly.power(F, h, m))
    assert acc == f


def test_roots_in_extension():
    F = make_ext_field(5, 2)
    rs = upoly.roots(F, (1, 1, 1))
    assert len(rs) == 2
    for r in rs:
        assert upoly.evaluate(F, (1, 1, 1), r) == F.zero


# -- CRT and the power isomorphism ---------------------------------------------


def test_crt_example_points():
    F = prime_field(2)
    crt = CRT(F, [(0, 1), (1, 1)])
    assert crt.split((0, 1)) == ((), (1,))  # x -> (0, 1)


def test_crt_rejects_non_coprime():
    F = prime_field(3)
    with pytest.raises(InputError):
        CRT(F, [(1, 1), (1, 1)])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_crt_roundtrip_f3(coeffs):
    F = prime_field(3)
    crt = CRT(F, [(0, 1), (1, 0, 1)])
    a = crt.ring.reduce(upoly.trim(F, coeffs))
    assert crt.join(crt.split(a)) == a


def test_power_quotient_iso_exhaustive_small():
    R = prime_field(2)
    f, g, source, target = power_quotient_iso(R, 2, 2)
    elems = list(source.elements())
    assert len(elems) == 16
    for a in elems:
        assert g(f(a)) == a
        for b in elems[:6]:
            assert f(source.mul(a, b)) == target.mul(f(a), f(b))


@pytest.mark.parametrize("S", [make_ext_field(2, 2), TruncPolyRing(prime_field(3), 2), ProductRing(prime_field(2), 2)])
def test_table_ring_matches_base(S):
    T = TableRing(S)
    assert [T.lift(a) for a in T.elements()] == list(S.elements())
    assert T.lift(T.from_int(5)) == S.from_int(5) and T.lift(T.one) == S.one
    for a, b in itertools.product(T.elements(), repeat=2):
        assert T.lift(T.mul(a, b)) == S.mul(T.lift(a), T.lift(b))
        assert T.lift(T.sub(a, b)) == S.sub(T.lift(a), T.lift(b))


def test_product_ring_componentwise():
    S = ProductRing(prime_field(3), 2)
    assert S.mul((1, 2), (2, 2)) == (2, 1)
    assert len(list(S.elements())) == 9


# -- series ------------------------------------------------------------------


def test_series_context_shapes():
    R = series_ring(2, 1, 1, 1)
    assert R.m == 2 and R.t() == ()  # t = v^2 vanishes
    R3 = series_ring(3, 1, 1, 2)
    assert R3.m == 6


def test_series_valuation_and_cap():
    R = series_ring(2, 1, 1, 2)
    v = R.uniformizer()
    assert R.valuation(v) == Finite(Fraction(1, 2))
    assert R.valuation(R.mul(v, R.mul(v, R.mul(v, v)))) == AtLeastCap(2)
    assert AtLeastCap(2) > Finite(Fraction(3, 2))


def test_series_fmt_parse_roundtrip():
    R = series_ring(3, 2, 1, 2)
    F = R.field
    a = R.add(R.scalar(F.generator()), R.t_power(Fraction(2, 3), 2))
    assert parse_series(R, R.fmt(a)) == a


def test_flagship_unit_is_a_square_root_of_one():
    R = series_ring(2, 1, 1, 1)
    a = R.add(R.one, R.uniformizer())
    assert R.mul(a, a) == R.one and a != R.one


def test_rescale_scales_valuation():
    R = series_ring(2, 1, 1, 2)
    a = TruncSeries(R, R.t_power(Fraction(1, 2)))
    b = rescale(a, Fraction(3, 2))
    assert b.valuation() == Finite(Fraction(3, 4))
    assert b.ctx.e == 2 and b.ctx.cap == 3


def test_rescale_rejects_bad_denominator():
    R = series_ring(2, 1, 1, 2)
    with pytest.raises(InputError):
        rescale(TruncSeries(R, R.one), Fraction(1, 3))


def test_recontext_and_mismatch():
    R = series_ring(3, 1, 0, 2)
    a = TruncSeries(R, R.t_power(1))
    b = recontext(a, series_ring(3, 1, 1, 1))
    assert b.valuation() == AtLeastCap(1)
    with pytest.raises(ContextMismatchError):
        recontext(a, series_ring(3, 1, 0, 3))
    with pytest.raises(ContextMismatchError):
        a + TruncSeries(series_ring(3, 1, 1, 2), ())


# -- cyclotomics -------------------------------------------------------------


@pytest.mark.parametrize(
    "n,coeffs", [(1, (-1, 1)), (4, (1, 0, 1)), (5, (1, 1, 1, 1, 1)), (12, (1, 0, -1, 0, 1))]
)
def test_cyclotomic_values(n, coeffs):
    assert cyclotomic_coeffs(n) == coeffs


def test_cyclotomic_30():
    assert cyclotomic(30) == Poly.from_dense((1, 1, 0, -1, -1, -1, 0, 1, 1))


def test_phi15_mod2_two_quartics():
    facs = splitting_profile(15, 2)
    assert [(len(h) - 1, m) for h, m in facs] == [(4, 1), (4, 1)]


def test_euler_phi_and_order():
    assert [euler_phi(n) for n in (1, 2, 9, 15, 30)] == [1, 1, 6, 8, 8]
    assert multiplicative_order(2, 15) == 4


# -- multivariate polynomials ------------------------------------------------


def test_poly_arithmetic_and_printing():
    f = (x - 1) ** 2 * (y + 2)
    assert f.total_degree() == 3
    assert (f - f).is_zero()
    assert str(x * y - 2 * x + 1) == "x*y - 2*x + 1"
    assert content(4 * x + 6) == 2


def test_poly_evaluate_in_field():
    F = prime_field(5)
    assert (x**2 + y).evaluate(F, {"x": 2, "y": 1}) == 0


# -- Groebner --------------------------------------------------------------------


def test_groebner_trivial_and_cofactors():
    F = prime_field(5)
    vs = ["x", "y"]
    polys = [to_dict(p, vs, F) for p in (x * y - 1, x)]
    G = groebner(F, polys, 2, cofactors=True)
    assert G.is_trivial
    assert combination(F, G.one_cofactors(), polys) == {(0, 0): 1}


def test_groebner_nontrivial_over_q():
    assert not ideal_is_trivial(QQ, [x**2 + y**2 - 1, x - y], ["x", "y"])
    assert ideal_is_trivial(QQ, [x**2 + 1, x], ["x"])


def test_prime_trace_records_denominators():
    tr = PrimeTrace()
    groebner(QQ, [to_dict(2 * x - 1, ["x"], QQ)], 1, trace=tr.hook("gb"))
    assert 2 in tr.numbers


# -- Q factoring -------------------------------------------------------------


def test_factor_q_and_invariants():
    unit, facs = factor_q((-1, 0, 1))
    assert unit == 1 and facs == (((-1, 1), 1), ((1, 1), 1))
    assert discriminant((1, 1, 1)) == -3
    assert resultant((-1, 1), (1, 1)) == 2


# -- points on varieties ------------------------------------------------------


def test_find_point_needs_extension():
    K, pt = find_point([x**3 + x + 1], ["x"], 2)
    assert K == 3
    F = make_ext_field(2, 3)
    assert (x**3 + x + 1).evaluate(F, pt) == 0


def test_find_point_none_when_inconsistent():
    assert find_point([x * y - 1, x], ["x", "y"], 3) is None


def test_nonvanishing_point():
    K, pt = nonvanishing_point([x * (x + 1), y], ["x", "y"], 2)
    F = make_ext_field(2, K)
    assert (x * (x + 1) * y).evaluate(F, pt) != 0
    assert nonvanishing_point([2 * x], ["x"], 2) is None


def test_zz_ring_basics():
    assert ZZ.add(2, 3) == 5 and QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
