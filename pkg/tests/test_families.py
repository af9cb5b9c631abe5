from fractions import Fraction

import pytest
import sympy as sp

from cmsym import families as fam
from cmsym.partitions import Partition, partitions_upto
from cmsym.scalars import Scalar
from cmsym.symfunc import Basis, SymFunc, convert, to_p
from oracles import finite_D, finite_E, hermite_1var, jacobi_1var, laguerre_1var, restrict, same

A = Scalar.gen("alpha")
P0 = Scalar.gen("p0")
AA = Scalar.gen("a")
PP, QQ = Fraction(1, 3), Fraction(2, 5)


def jackp(*lam):
    return to_p(SymFunc.basis_element(Basis.JACK, lam))


def test_empty_label_is_one():
    for kind in ("jack", "hermite", "laguerre", "jacobi"):
        assert fam.family(kind, ()).value == 1


def test_hermite_examples():
    assert fam.hermite((1,)).value == jackp(1)
    h2 = fam.hermite((2,)).value
    assert h2 == jackp(2) - P0 * (P0 + A) / (2 * (1 + A))


def test_laguerre_examples():
    l1 = fam.laguerre((1,)).value
    assert l1 == SymFunc.p(1) - P0 * (AA + 1 + (P0 - 1) / A)
    q = 1 + (P0 - 1) / A
    assert l1 == SymFunc.p(1) - P0 * (AA + q)


def test_jacobi_examples():
    for lam in [(1,), (2,), (1, 1)]:
        solver = fam.jacobi(lam, method="solver").value
        assert solver == fam.jacobi(lam, method="product").value
        assert solver.constant_term() == fam.jacobi_eps0(lam)
    assert fam.jacobi_eps0(()) == 1


def test_renormalize_examples():
    for kind in ("hermite", "laguerre"):
        e0 = fam.family(kind, ())
        assert fam.renormalize(e0, "cminus").value == e0.value
        e1 = fam.family(kind, (1,))
        assert fam.renormalize(e1, "cminus").value == e1.value.scale(1 / A)
        e2 = fam.family(kind, (2,))
        assert fam.renormalize(e2, "cminus").value == e2.value.scale((1 / A) * (1 + 1 / A))
        assert fam.renormalize(e2).value == e2.value.scale(1 + A)


def test_ideal_membership_examples():
    assert fam.ideal_membership("hermite", 0, 0, (1,))
    assert not fam.ideal_membership("hermite", 1, 1, (2, 1))
    assert fam.ideal_membership("laguerre", 1, 0, (1, 1))
    with pytest.raises(fam.UnknownFamily):
        fam.ideal_membership("jacobi", 0, 0, (1,))


def test_unknown_family():
    with pytest.raises(fam.UnknownFamily):
        fam.family("bessel", (1,))


@pytest.mark.parametrize("k", range(5))
def test_one_variable_hermite(k):
    assert same(restrict(fam.hermite((k,)).value, 1), hermite_1var(k))


@pytest.mark.parametrize("k", range(4))
def test_one_variable_laguerre(k):
    assert same(restrict(fam.laguerre((k,)).value, 1), laguerre_1var(k))


@pytest.mark.parametrize("k", range(4))
def test_one_variable_jacobi(k):
    got = restrict(fam.jacobi((k,), p=PP, q=QQ).value, 1)
    assert same(got, jacobi_1var(k, sp.Rational(1, 3), sp.Rational(2, 5)))


def _finite_op(kind, f, n):
    if kind == "hermite":
        return finite_D(f, 0, n) - 2 * finite_E(f, 1, n)
    if kind == "laguerre":
        return finite_D(f, 1, n) + (sp.Symbol("a") + 1) * finite_E(f, 0, n) - finite_E(f, 1, n)
    pp, qq = sp.Rational(1, 3), sp.Rational(2, 5)
    return (finite_D(f, 2, n) + 2 * finite_D(f, 1, n) - (pp + 2 * qq - 1) * finite_E(f, 1, n)
            - (2 * pp + 2 * qq - 1) * finite_E(f, 0, n))


@pytest.mark.parametrize("kind", ["hermite", "laguerre", "jacobi"])
@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1)])
def test_two_variable_eigen_equation(kind, lam):
    params = {"p": PP, "q": QQ} if kind == "jacobi" else {}
    elem = fam.family(kind, lam, **params)
    f = restrict(elem.value, 2)
    ev = sp.sympify(str(elem.eigenvalue().substitute({"p0": 2})).replace("^", "**"))
    assert same(_finite_op(kind, f, 2), ev * f)


@pytest.mark.parametrize("kind", ["hermite", "laguerre"])
@pytest.mark.parametrize("lam", [lam for lam in partitions_upto(4)])
def test_exponential_matches_solver(kind, lam):
    assert fam.family(kind, lam).value == fam.family(kind, lam, method="solver").value


def test_duality_examples():
    assert fam.duality_check("jack", (1,))[0]
    assert fam.duality_check("hermite", ())[0]
    assert fam.duality_check("hermite", (2,))[0]
    assert fam.duality_check("laguerre", (2, 1))[0]


def test_laguerre_symmetry_examples():
    for lam in [(), (1,), (2, 1)]:
        assert fam.laguerre_symmetry_check(lam)


def test_expand_in_family_roundtrip():
    f = SymFunc.p(2, 1) + SymFunc.p(1).scale(A)
    for kind in ("hermite", "laguerre"):
        coeffs = fam.expand_in_family(f, kind)
        back = SymFunc(Basis.POWER)
        for lam, c in coeffs.items():
            back = back + fam.family(kind, lam).value.scale(c)
        assert back == f


def test_in_basis():
    h = fam.hermite((2,))
    assert convert(h.in_basis(Basis.JACK), Basis.POWER) == h.value
    assert h.in_basis(Basis.JACK).coefficient((2,)) == 1
