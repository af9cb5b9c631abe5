from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from cmsym import superpoly as sup
from cmsym.operators import D, E
from cmsym.partitions import partitions_of, partitions_upto
from cmsym.scalars import DenominatorVanishes, Scalar
from cmsym.symfunc import Basis, SymFunc, to_p
from oracles import NAMES, alpha, jack_oracle, same, to_sympy, xs

A = Scalar.gen("alpha")
P0 = Scalar.gen("p0")
ALG11 = sup.SuperAlgebra(1, 1)


def to_expr(poly):
    x = sp.symbols(f"x1:{poly.alg.n + 1}")
    y = sp.symbols(f"y1:{poly.alg.m + 1}")
    out = sp.Integer(0)
    for (ex, ey), c in poly.terms.items():
        mono = sp.Mul(*[v ** e for v, e in zip(x, ex)]) * sp.Mul(*[v ** e for v, e in zip(y, ey)])
        out += to_sympy(c) * mono
    return sp.expand(out)


def phi_oracle(f, n, m):
    """Deformed power sums written out in sympy."""
    x = sp.symbols(f"x1:{n + 1}")
    y = sp.symbols(f"y1:{m + 1}")
    out = sp.Integer(0)
    for mu, c in to_p(f).terms.items():
        term = to_sympy(c).subs(NAMES["p0"], n - alpha * m)
        for r in mu:
            term *= sum(v ** r for v in x) - alpha * sum(v ** r for v in y)
        out += term
    return sp.expand(out)


def jackp(*lam):
    return SymFunc.basis_element(Basis.JACK, lam)


def test_phi_examples():
    assert sup.phi_nm(ALG11, SymFunc.p(1)) == sup.MVPoly.variable(ALG11, "x", 0) - \
        sup.MVPoly.variable(ALG11, "y", 0).scale(A)
    assert sup.phi_nm(sup.SuperAlgebra(0, 0), SymFunc.p(1)).is_zero()
    alg = sup.SuperAlgebra(2, 0)
    x1, x2 = sup.MVPoly.variable(alg, "x", 0), sup.MVPoly.variable(alg, "x", 1)
    assert sup.phi_nm(alg, SymFunc.p(2)) == x1 * x1 + x2 * x2


def test_phi_pole():
    with pytest.raises(DenominatorVanishes):
        sup.phi_nm(sup.SuperAlgebra(1, 0), SymFunc.const(1 / (P0 - 1)))


def test_algebra_bounds():
    with pytest.raises(ValueError):
        sup.SuperAlgebra(-1, 0)
    with pytest.raises(ValueError):
        sup.SuperAlgebra(sup.MAX_VARS + 1, 0)


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2)])
@pytest.mark.parametrize("lam", [lam for lam in partitions_upto(3) if lam])
def test_phi_against_sympy(lam, n, m):
    f = to_p(jackp(*lam))
    assert same(to_expr(sup.phi_nm(sup.SuperAlgebra(n, m), f)), phi_oracle(f, n, m))


@pytest.mark.parametrize("lam", [lam for lam in partitions_upto(4) if len(lam) <= 2])
def test_ordinary_restriction_is_finite_jack(lam):
    alg = sup.SuperAlgebra(2, 0)
    assert same(to_expr(sup.phi_nm(alg, to_p(jackp(*lam)))), jack_oracle(lam, 2))


def test_membership_examples():
    assert sup.membership_check(ALG11, sup.phi_nm(ALG11, SymFunc.p(2)))
    assert not sup.membership_check(ALG11, sup.MVPoly.variable(ALG11, "x", 0))
    assert sup.membership_check(ALG11, sup.MVPoly.const(ALG11, 5))


def test_membership_needs_separate_symmetry():
    alg = sup.SuperAlgebra(2, 0)
    assert not sup.membership_check(alg, sup.MVPoly.variable(alg, "x", 0))


small = st.integers(0, 3).flatmap(lambda n: st.sampled_from(partitions_of(n)))


@st.composite
def symfuncs(draw):
    terms = {lam: Scalar(draw(st.integers(-2, 2))) + draw(st.sampled_from([0, 1])) * P0
             for lam in draw(st.lists(small, max_size=3))}
    return SymFunc(Basis.POWER, terms)


@given(symfuncs(), symfuncs())
def test_phi_is_a_ring_map(f, g):
    lhs = sup.phi_nm(ALG11, f * g)
    assert lhs == sup.phi_nm(ALG11, f) * sup.phi_nm(ALG11, g)
    assert sup.membership_check(ALG11, lhs)


def test_super_family_examples():
    f = sup.super_family(sup.SuperAlgebra(1, 0), "jack", (2,))
    x1 = sup.MVPoly.variable(f.alg, "x", 0)
    assert f.poly == x1 * x1
    k = sup.super_family(ALG11, "jack", (2, 2))
    assert k.kernel and k.poly.is_zero()
    h = sup.super_family(sup.SuperAlgebra(1, 0), "hermite", (1,))
    assert h.poly == x1


@pytest.mark.parametrize("alg", sup.algebras(2, 2))
@pytest.mark.parametrize("d", range(1, 6))
def test_kernel_matches_cell_containment(alg, d):
    for lam in partitions_of(d):
        img = sup.super_family(alg, "jack", lam).poly
        assert img.is_zero() == alg.in_kernel(lam), lam


def test_deformed_operator_examples():
    f = sup.phi_nm(ALG11, SymFunc.p(2, 1))
    assert sup.deformed_op_apply(ALG11, ("E", 1), f) == f.scale(3)
    g = sup.phi_nm(ALG11, SymFunc.p(2))
    p0 = 1 - A
    expect = sup.MVPoly.const(ALG11, 2 * p0 + 2 / A * p0 * (p0 - 1))
    assert sup.deformed_op_apply(ALG11, ("D", 0), g) == expect
    assert sup.deformed_op_apply(ALG11, E(0), sup.phi_nm(ALG11, SymFunc.p(1))) == sup.MVPoly.const(ALG11, p0)


def test_operator_without_lift():
    with pytest.raises(sup.NotInDeformedAlgebra):
        sup.deformed_op_apply(ALG11, ("D", 0), sup.MVPoly.variable(ALG11, "x", 0))


def test_point_check_examples():
    g = sup.phi_nm(ALG11, SymFunc.p(2))
    pt = ((Fraction(2),), (Fraction(3),))
    assert sup.deformed_op_point_check(ALG11, ("E", 1), g, pt)
    assert sup.deformed_op_point_check(ALG11, ("D", 0), g, pt)
    with pytest.raises(sup.SingularPoint):
        sup.deformed_op_point_check(ALG11, ("D", 0), g, ((Fraction(2),), (Fraction(2),)))


@pytest.mark.parametrize("alg", [sup.SuperAlgebra(1, 1), sup.SuperAlgebra(2, 1), sup.SuperAlgebra(1, 2)])
@pytest.mark.parametrize("which", [("E", 0), ("E", 2), ("D", 0), ("D", 1), ("D", 2), ("D", 3)])
def test_intertwining(alg, which):
    for mu in [(2, 1), (3,), (1, 1, 1)]:
        f = sup.phi_nm(alg, SymFunc.basis_element(Basis.POWER, mu))
        for pt in sup.sample_points(alg):
            assert sup.deformed_op_point_check(alg, which, f, pt)


@pytest.mark.parametrize("k", range(4))
def test_dual_D_identity(k):
    alg = sup.SuperAlgebra(2, 1)
    f = sup.phi_nm(alg, to_p(jackp(2, 1)))
    for pt in sup.sample_points(alg):
        assert sup.dual_D_check(alg, k, f, pt)


def test_dual_D_explicit_operator_matches_sympy():
    # D^1 in (1,1) written out by hand in sympy
    x, y = sp.symbols("x1 y1")
    f = sup.phi_nm(ALG11, SymFunc.p(3))
    fx = to_expr(f)
    k = 1
    expect = (x ** k * sp.diff(fx, x, 2) - y ** k / alpha * sp.diff(fx, y, 2)
              - alpha * 2 * x ** k / (x - y) / alpha * sp.diff(fx, x)
              + 2 * y ** k / (y - x) / alpha * sp.diff(fx, y)
              - (1 + 1 / alpha) * k * y ** (k - 1) * sp.diff(fx, y))
    pt = ((Fraction(2),), (Fraction(5),))
    got = sup.explicit_D(ALG11, k, f, pt)
    assert same(to_sympy(got), expect.subs({x: 2, y: 5}))


def test_duality_examples():
    assert sup.super_duality_check("jack", ALG11, (1,))[0]
    assert sup.super_duality_check("jack", ALG11, ())[0]
    assert sup.super_duality_check("hermite", ALG11, (2,))[0]
    assert sup.super_duality_check("laguerre", ALG11, (2, 1))[0]
    with pytest.raises(ValueError):
        sup.super_duality_check("jack", ALG11, (2, 2))


def test_super_series():
    assert sup.super_pFq(ALG11, [], [], 0) == sup.MVPoly.const(ALG11, 1)
    alg = sup.SuperAlgebra(1, 0)
    x1 = sup.MVPoly.variable(alg, "x", 0)
    got = sup.super_pFq(alg, [], [], 2)
    assert got == sup.MVPoly.const(alg, 1) + x1 + (x1 * x1).scale(Scalar(1) / 2)
    assert sup.super_pFq_duality(ALG11, [], [], 2).holds
    assert sup.super_pFq_duality(ALG11, [Scalar.gen("a")], [Scalar.gen("q")], 2).holds


@pytest.mark.parametrize("kind", ["hermite", "laguerre"])
def test_super_eigen_equations(kind):
    for lam in [(1,), (2,), (1, 1), (2, 1)]:
        assert sup.eigen_check(ALG11, kind, lam)


def test_hermite_exponential_form():
    for lam in [(2,), (2, 1), (1, 1, 1)]:
        assert sup.hermite_exp_check(ALG11, lam)


def test_json_and_text():
    f = sup.phi_nm(ALG11, SymFunc.p(2))
    data = f.to_json()
    assert data["n"] == 1 and data["m"] == 1 and len(data["terms"]) == 2
    assert "x1^2" in f.to_text()
    assert sup.MVPoly(ALG11).to_text() == "0"
