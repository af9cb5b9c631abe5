from itertools import combinations

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from cmsym.partitions import partitions_of, partitions_upto
from cmsym.scalars import Scalar
from cmsym.symfunc import (
    Basis,
    BasisMismatch,
    SymFunc,
    apply_hom,
    convert,
    epsX_jack_product,
    multiply,
    parse_symfunc,
    to_p,
)
from oracles import monomial, restrict, same, to_sympy, xs

A = Scalar.gen("alpha")
P0 = Scalar.gen("p0")
G = Scalar.gen("s")
N = 3


def m(*lam):
    return SymFunc.basis_element(Basis.MONOMIAL, lam)


def e(*lam):
    return SymFunc.basis_element(Basis.ELEMENTARY, lam)


def test_multiply_examples():
    assert multiply(SymFunc.p(2), SymFunc.p(1)) == SymFunc.p(2, 1)
    f = SymFunc.p(3) + SymFunc.p(1, 1).scale(A)
    assert multiply(SymFunc.const(1), f) == f
    prod = multiply(m(1), m(1))
    assert prod.basis is Basis.MONOMIAL
    assert prod.terms == (m(2) + m(1, 1).scale(2)).terms


def test_mixed_bases_refuse_to_add():
    with pytest.raises(BasisMismatch):
        SymFunc.p(1) + m(1)


def test_convert_examples():
    assert convert(SymFunc.p(2), Basis.MONOMIAL).terms == m(2).terms
    assert convert(SymFunc.p(1, 1), Basis.MONOMIAL).terms == (m(2) + m(1, 1).scale(2)).terms
    half = Scalar(1) / 2
    assert convert(e(2), Basis.POWER).terms == (SymFunc.p(1, 1).scale(half) - SymFunc.p(2).scale(half)).terms


@pytest.mark.parametrize("lam", partitions_upto(4))
def test_monomials_restrict_correctly(lam):
    # m_lam in N variables, through the power-sum expansion with p0 = N
    assert same(restrict(m(*lam), N), monomial(lam, N))


@pytest.mark.parametrize("lam", partitions_upto(4))
def test_elementary_restricts_correctly(lam):
    vars_ = xs(N)
    expect = sp.Integer(1)
    for r in lam:
        expect *= sum(sp.Mul(*c) for c in combinations(vars_, r))
    assert same(restrict(e(*lam), N), sp.expand(expect))


@pytest.mark.parametrize("d", range(5))
def test_basis_roundtrips(d):
    for lam in partitions_of(d):
        for b in (Basis.MONOMIAL, Basis.ELEMENTARY):
            f = SymFunc.basis_element(b, lam)
            assert convert(to_p(f), b).terms == f.terms


def test_apply_hom_examples():
    nu = Scalar.gen("nu")
    assert apply_hom("sigma", nu, SymFunc.p(2, 1)) == SymFunc.p(2, 1).scale(nu ** 3)
    assert apply_hom("t", G, SymFunc.p(1)) == SymFunc.p(1) + G * P0
    assert apply_hom("epsX", P0, SymFunc.basis_element(Basis.JACK, (1,))) == P0


def test_epsX_product_examples():
    X = Scalar.gen("X")
    assert epsX_jack_product((), X) == 1
    assert epsX_jack_product((1,), X) == X
    jack2 = SymFunc.basis_element(Basis.JACK, (2,))
    assert epsX_jack_product((2,), X) == apply_hom("epsX", X, jack2)
    assert epsX_jack_product((2,), X) == X * (X + A) / (A + 1)


small_p = st.integers(0, 4).flatmap(lambda n: st.sampled_from(partitions_of(n)))


@st.composite
def symfuncs(draw):
    terms = {}
    for lam in draw(st.lists(small_p, max_size=3)):
        terms[lam] = Scalar(draw(st.integers(-3, 3))) + draw(st.sampled_from([0, 1])) * A
    return SymFunc(Basis.POWER, terms)


@given(symfuncs(), symfuncs())
def test_shift_hom_matches_variable_shift(f, g):
    k = 2
    lhs = restrict(apply_hom("t", k, multiply(f, g)), N)
    expect = (restrict(f, N) * restrict(g, N)).subs({v: v + k for v in xs(N)}, simultaneous=True)
    assert same(lhs, sp.expand(expect))


@given(symfuncs())
def test_sigma_scales_variables(f):
    lhs = restrict(apply_hom("sigma", 3, f), N)
    assert same(lhs, restrict(f, N).subs({v: 3 * v for v in xs(N)}, simultaneous=True))


@given(symfuncs())
def test_epsX_is_evaluation_at_ones(f):
    val = to_sympy(apply_hom("epsX", P0, f)).subs(sp.Symbol("p0"), N)
    assert same(val, restrict(f, N).subs({v: 1 for v in xs(N)}))


@given(symfuncs())
def test_omega_is_invertible(f):
    g = apply_hom("omega", 1 / A, apply_hom("omega", A, f))
    assert g == f


@given(symfuncs(), symfuncs())
def test_omega_is_multiplicative(f, g):
    lhs = apply_hom("omega", A, multiply(f, g))
    assert lhs == multiply(apply_hom("omega", A, f), apply_hom("omega", A, g))


@given(symfuncs())
def test_text_and_json_roundtrip(f):
    assert parse_symfunc(f.to_text()) == f
    assert SymFunc.from_json(f.to_json()) == f
    for b in (Basis.MONOMIAL, Basis.JACK):
        g = convert(f, b)
        assert parse_symfunc(g.to_text()) == g
