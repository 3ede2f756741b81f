from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from depthctl.errors import (
    DegreeOverflow, DivisionByZero, LengthMismatch, MixedFields, MixedRings, UnknownVariable,
)
from depthctl.field import Field, field_arith, is_prime
from depthctl.parser import parse_poly
from depthctl.poly import Grevlex, Lex, Poly, Ring, canonical_string, monomial_cmp

from oracles import binomial, evaluate, expand

QQ = Field.QQ()
F5, F7 = Field.GF(5), Field.GF(7)
RQ = Ring(QQ, ("x", "y", "z"))
RP = Ring(Field.GF(32003), ("x", "y", "z"))


def test_field_examples():
    assert field_arith(QQ.elem(Fraction(1, 2)), QQ.elem(Fraction(1, 3)), "add") == Fraction(5, 6)
    assert field_arith(F5.elem(3), F5.elem(4), "mul") == 2
    q = field_arith(F7.elem(2), F7.elem(3), "div")
    assert [x for x in range(7) if 3 * x % 7 == 2] == [q.value]


def test_field_errors():
    with pytest.raises(DivisionByZero):
        field_arith(F7.elem(1), F7.elem(0), "div")
    with pytest.raises(MixedFields):
        field_arith(F5.elem(1), F7.elem(1), "add")
    with pytest.raises(Exception):
        Field.GF(15)
    with pytest.raises(Exception):
        Field.GF(2 ** 31 + 11)


def test_rationals_lowest_terms():
    v = QQ("-6/4")
    assert v == Fraction(-3, 2) and v.denominator == 2


@given(st.integers(2, 10 ** 6))
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == all(n % d for d in range(2, int(n ** 0.5) + 1))


def test_poly_examples():
    x, y = RQ.gen(0), RQ.gen(1)
    assert (x + y) * (x - y) == x ** 2 - y ** 2
    assert x + RQ.zero() == x
    cube = (x + 1) ** 3
    assert all(cube.terms[(k, 0, 0)] == binomial(3, k) for k in range(4))


def test_mixed_rings():
    other = Ring(QQ, ("a", "b"))
    with pytest.raises(MixedRings):
        RQ.gen(0) + other.gen(0)


def test_degree_cap():
    with pytest.raises(DegreeOverflow):
        RQ.gen(0) ** (2 ** 16 + 1)


def test_monomial_cmp_examples():
    assert monomial_cmp("grevlex", (2, 1), (1, 2)) == 1
    assert monomial_cmp("lex", (1, 0), (0, 2)) == 1
    assert monomial_cmp("grevlex", (1, 2, 3), (1, 2, 3)) == 0
    with pytest.raises(LengthMismatch):
        monomial_cmp("grevlex", (1,), (1, 2))


def test_canonical_string_examples():
    x, y = RQ.gen(0), RQ.gen(1)
    assert canonical_string(RQ.zero()) == "0"
    assert canonical_string(y + x) == "x + y"
    assert canonical_string(2 * x - 2 * y, monic=True) == "x - y"
    assert canonical_string(x ** 2 * y - QQ("1/2") * RQ.gen(2) + 3) == "x^2*y - 1/2*z + 3"


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_poly("x + q", RQ)


# -- properties --------------------------------------------------------------

exps = st.tuples(*[st.integers(0, 3)] * 3)


def polys(ring):
    coef = st.integers(-5, 5) if not ring.field.p else st.integers(0, ring.field.p - 1)
    return st.dictionaries(exps, coef, max_size=5).map(ring.from_dict)


@pytest.mark.parametrize("ring", [RQ, RP], ids=["QQ", "GFp"])
def test_ring_axioms(ring):
    @given(polys(ring), polys(ring), polys(ring))
    def check(f, g, h):
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f * g == g * f and f + g == g + f
        assert canonical_string(f * g) == canonical_string(g * f)
    check()


@given(polys(RQ), polys(RQ))
def test_product_matches_hand_expansion(f, g):
    ref = expand(dict(f.terms), dict(g.terms))
    assert (f * g).terms == {e: QQ(c) for e, c in ref.items()}


@given(polys(RP), polys(RP), st.tuples(*[st.integers(0, 50)] * 3))
def test_evaluation_is_a_homomorphism(f, g, pt):
    p = RP.field.p
    value = (f * g).evaluate(list(pt))
    assert value == evaluate(dict(f.terms), pt, p) * evaluate(dict(g.terms), pt, p) % p


@pytest.mark.parametrize("order", [Grevlex(), Lex()], ids=["grevlex", "lex"])
def test_order_is_total_and_multiplicative(order):
    @given(exps, exps, exps)
    def check(a, b, c):
        ka, kb, kc = order.key(a), order.key(b), order.key(c)
        assert (ka < kb) + (ka > kb) + (ka == kb) == 1
        assert (ka == kb) == (a == b)
        if ka < kb and kb < kc:
            assert ka < kc
        ta = tuple(x + y for x, y in zip(a, c))
        tb = tuple(x + y for x, y in zip(b, c))
        if ka < kb:
            assert order.key(ta) < order.key(tb)
        assert order.key((0, 0, 0)) <= ka
    check()


@pytest.mark.parametrize("ring", [RQ, RP], ids=["QQ", "GFp"])
def test_parse_print_roundtrip(ring):
    @given(polys(ring))
    def check(f):
        text = canonical_string(f)
        g = parse_poly(text, ring)
        assert g == f and canonical_string(g) == text
    check()
