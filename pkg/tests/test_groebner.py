import random

import pytest
from hypothesis import given, settings, strategies as st

from depthctl.errors import MixedFields, ZeroDivisorArgument
from depthctl.field import Field
from depthctl.groebner import (
    IdealOrder, Ideal, ModuleSub, POT, RingMap, apply_ring_map, buchberger, eliminate,
    groebner_basis, ideal_equal, ideal_member, ideal_quotient, intersect, is_groebner,
    normal_form, radical_member, saturate, syzygy_basis, vec_from_column, vec_from_poly,
)
from depthctl.poly import Poly, Ring

QQ = Field.QQ()
R2 = Ring(QQ, ("x", "y"))
R4 = Ring(QQ, ("x", "y", "u", "v"))
RP = Ring(Field.GF(32003), ("x", "y", "z"))


def P(text, ring=R2):
    return ring.parse(text)


def ideal(ring, *gens):
    return Ideal(ring, [ring.parse(g) for g in gens])


def test_gb_examples():
    x, y = R2.gens()
    assert groebner_basis([x, y]) == [x, y]
    assert groebner_basis([x + y, x - y]) == [x, y]
    G = [P(g, R4) for g in ("x*u", "x*v", "y*u", "y*v")]
    assert sorted(map(str, groebner_basis(G))) == sorted(map(str, G))


def test_normal_form_examples():
    x, y = R2.gens()
    assert normal_form(x ** 2 * y, [x, y]).is_zero()
    assert normal_form(x + 1, [x]) == 1
    assert normal_form(x ** 2 - y, [x ** 2 - y]).is_zero()


def test_membership_and_equality():
    x, y = R2.gens()
    assert ideal_member(x ** 2, Ideal(R2, [x]))
    assert ideal_equal(Ideal(R2, [x + y, x - y]), Ideal(R2, [x, y]))
    assert not ideal_equal(Ideal(R2, [x]), Ideal(R2, [x ** 2]))


def _apply(col, gens):
    return sum((c * g for c, g in zip(col, gens)), gens[0].ring.zero())


def test_syzygy_examples():
    x, y = R2.gens()
    (s,) = syzygy_basis([x, y], R2)
    assert _apply(s, [x, y]).is_zero() and set(s) == {y, -x}
    assert syzygy_basis([x ** 2 + y], R2) == []
    G = groebner_basis([P(g, R4) for g in ("x*u", "x*v", "y*u", "y*v")])
    syz = syzygy_basis(G, R4)
    assert len(syz) == 4
    for s in syz:
        assert _apply(s, G).is_zero()


def test_eliminate_examples():
    R = Ring(QQ, ("t", "x", "y"))
    E = eliminate(ideal(R, "t - x^2", "t - y"), ["x", "y"])
    assert ideal_equal(E, ideal(R, "x^2 - y"))
    assert ideal_equal(eliminate(ideal(R2, "x"), ["x"]), ideal(R2, "x"))
    assert eliminate(ideal(R2, "x", "x - 1"), []).is_unit()


def test_saturation_and_quotient_examples():
    R = Ring(QQ, ("x", "y", "z"))
    assert ideal_equal(saturate(ideal(R, "x^2*y"), P("y", R)), ideal(R, "x^2"))
    assert ideal_quotient(ideal(R, "x"), P("x", R)).is_unit()
    assert ideal_equal(ideal_quotient(ideal(R, "x*y", "x*z"), P("x", R)), ideal(R, "y", "z"))
    with pytest.raises(ZeroDivisorArgument):
        saturate(ideal(R, "x"), R.zero())


def test_radical_member_examples():
    x, y = R2.gens()
    assert radical_member(x, Ideal(R2, [x ** 2]))
    assert not radical_member(y, Ideal(R2, [x ** 2]))
    assert radical_member(x + y, Ideal(R2, [(x + y) ** 3, x - y]))


def test_ring_map_examples():
    S2 = Ring(QQ, ("x", "y", "t"))
    phi = RingMap.from_pairs(S2, R2, [("x", P("x")), ("y", P("y")), ("t", P("x^2"))])
    assert apply_ring_map(phi, ideal(S2, "t - x^2")).is_zero()
    ident = RingMap(R2, R2, R2.gens())
    I = ideal(R2, "x^2 - y", "x*y")
    assert ideal_equal(apply_ring_map(ident, I), I)
    psi = RingMap.from_pairs(S2, R2, [("x", P("x")), ("y", P("y")), ("t", P("x + y"))])
    assert ideal_equal(apply_ring_map(psi, ideal(S2, "t")), ideal(R2, "x + y"))
    with pytest.raises(MixedFields):
        RingMap(Ring(Field.GF(5), ("a",)), R2, [P("x")])


def test_intersection():
    I = intersect(ideal(R2, "x"), ideal(R2, "y"))
    assert ideal_equal(I, ideal(R2, "x*y"))


# -- properties --------------------------------------------------------------

exps = st.tuples(*[st.integers(0, 3)] * 3)
coef = st.integers(1, 32002)
gf_polys = st.dictionaries(exps, coef, min_size=1, max_size=4).map(RP.from_dict)
gf_ideals = st.lists(gf_polys, min_size=1, max_size=3)


@given(gf_ideals)
def test_gb_is_groebner_and_generates(gens):
    G = groebner_basis(gens)
    vecs = [vec_from_poly(g) for g in G]
    assert is_groebner(vecs, IdealOrder(RP.order), RP.field)
    assert all(normal_form(f, G).is_zero() for f in gens)
    assert all(g.lc() == 1 for g in G)
    lms = [g.lm() for g in G]
    for i, g in enumerate(G):
        for m in g.terms:
            assert not any(j != i and all(a <= b for a, b in zip(lm, m)) for j, lm in enumerate(lms))


@given(gf_ideals, gf_polys, gf_polys, st.integers(0, 10))
def test_reduction_stability(gens, f, g, k):
    G = groebner_basis(gens)
    b = G[k % len(G)]
    assert normal_form(f + g * b, G) == normal_form(f, G)


@given(gf_ideals)
def test_syzygies_vanish(gens):
    G = groebner_basis(gens)
    for s in syzygy_basis(G, RP):
        assert _apply(s, G).is_zero()


small = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3), coef, min_size=1, max_size=3).map(RP.from_dict)


@settings(max_examples=25)
@given(st.lists(small, min_size=1, max_size=3), small)
def test_quotient_containments(gens, f):
    I = Ideal(RP, gens)
    Q = ideal_quotient(I, f)
    Sat = saturate(I, f)
    assert Q.contains_ideal(I) and Sat.contains_ideal(Q)
    assert all(I.contains(f * q) for q in Q.gens)


@given(gf_ideals, gf_ideals, gf_ideals)
def test_ideal_equal_is_an_equivalence(a, b, c):
    A, B, C = Ideal(RP, a), Ideal(RP, b), Ideal(RP, c)
    assert ideal_equal(A, A)
    assert ideal_equal(A, B) == ideal_equal(B, A)
    if ideal_equal(A, B) and ideal_equal(B, C):
        assert ideal_equal(A, C)
    AB = Ideal(RP, a + b)
    assert ideal_equal(AB, Ideal(RP, b + a))


def test_module_gb_deterministic_and_criterion():
    rng = random.Random(3)
    x, y, z = RP.gens()
    monos = [x, y, z, x * y, y * z, RP.one()]
    cols = [tuple(rng.choice(monos) * rng.randrange(1, 9) for _ in range(2)) for _ in range(4)]
    M = ModuleSub(RP, 2, cols)
    order = POT(RP.order)
    G1 = buchberger([vec_from_column(c) for c in cols], order, RP.field)
    G2 = buchberger([vec_from_column(c) for c in cols], order, RP.field)
    assert G1 == G2 and is_groebner(G1, order, RP.field)
    assert all(M.contains(c) for c in cols)
