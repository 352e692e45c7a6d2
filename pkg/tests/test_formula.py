"""Parser, printer, DNF and evaluation."""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from abmod.algebra.gf import make_ext_field, prime_field
from abmod.algebra.poly import Poly
from abmod.errors import ParseError, ResourceError
from abmod.formula import And, Literal, Or, eval_formula, negate, parse, to_dnf, to_text

x, y = Poly.var("x"), Poly.var("y")


def test_parse_declared_sentence():
    s = parse("exists x: x^2 = 1 & x != 1")
    assert s.vars == ("x",)
    assert s.matrix == And((Literal(x**2 - 1, "="), Literal(x - 1, "!=")))


def test_bare_formula_gets_closure_in_order_of_appearance():
    s = parse("y*x = 1 | x = 0")
    assert s.vars == ("y", "x")


def test_implicit_products_and_unicode():
    s = parse("∃ x y: 2x y − 1 = 0 ∧ ¬(x = 0)")
    assert s.matrix == And((Literal(2 * x * y - 1, "="), Literal(x, "!=")))


def test_parenthesized_relation_vs_formula():
    a = parse("(x - 1) = 0")
    b = parse("(x = 1 | y = 0) & x != 0")
    assert a.matrix == Literal(x - 1, "=")
    assert isinstance(b.matrix, And) and isinstance(b.matrix.children[0], Or)


@pytest.mark.parametrize(
    "text,line,col",
    [("exists x: x^2=", 1, 15), ("x = 1 &\n  y +", 2, 6), ("exists x: y = 0", 1, 11), ("x ? 1", 1, 3)],
)
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_negation_flips_literals():
    f = negate(parse("x = 0 & y != 1").matrix)
    assert f == Or((Literal(x, "!="), Literal(y - 1, "=")))


def test_roundtrip_printing():
    for text in ["exists x: x^2 - 1 = 0 & x - 1 != 0", "exists x, y: (x = 0 | y = 0) & x*y - 1 != 0"]:
        s = parse(text)
        assert parse(to_text(s)) == s


def test_dnf_example():
    a, b, c = Poly.var("a"), Poly.var("b"), Poly.var("c")
    dnf = to_dnf(parse("(a = 0 | b = 0) & c != 0"))
    assert [(d.eqs, d.neqs) for d in dnf] == [((a,), (c,)), ((b,), (c,))]


def test_dnf_dedupes():
    dnf = to_dnf(parse("x = 0 & x = 0 | x = 0"))
    assert len(dnf) == 1 and dnf[0].eqs == (x,)


def test_dnf_cap():
    text = " & ".join(f"(x = {i} | y = {i})" for i in range(8))
    with pytest.raises(ResourceError):
        to_dnf(parse(text), cap=100)


def test_eval_in_f4():
    F = make_ext_field(2, 2)
    s = parse("x^2 + x + 1 = 0")
    roots = [a for a in F.elements() if eval_formula(s.matrix, F, {"x": a})]
    assert len(roots) == 2


_atoms = st.sampled_from([x, y, x - y, x * y - 1, x + 1])


def _formulas():
    lit = st.builds(Literal, _atoms, st.sampled_from(["=", "!="]))
    return st.recursive(
        lit,
        lambda kids: st.one_of(
            st.builds(lambda cs: And(tuple(cs)), st.lists(kids, min_size=2, max_size=3)),
            st.builds(lambda cs: Or(tuple(cs)), st.lists(kids, min_size=2, max_size=3)),
        ),
        max_leaves=8,
    )


@settings(max_examples=80, deadline=None)
@given(_formulas())
def test_dnf_equivalent_on_f3(f):
    F = prime_field(3)
    dnf = to_dnf(f, ("x", "y"))
    for vals in itertools.product(range(3), repeat=2):
        w = dict(zip(("x", "y"), vals))
        assert eval_formula(f, F, w) == any(eval_formula(c, F, w) for c in dnf)


@settings(max_examples=80, deadline=None)
@given(_formulas())
def test_double_negation_semantics(f):
    F = prime_field(2)
    g = negate(f)
    for vals in itertools.product(range(2), repeat=2):
        w = dict(zip(("x", "y"), vals))
        assert eval_formula(g, F, w) != eval_formula(f, F, w)
