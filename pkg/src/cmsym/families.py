"""Jack, Hermite, Laguerre and Jacobi eigenfamilies of the deformed CMS operators.

Every family element is P_lam plus lower terms in the Jack basis (lower
meaning smaller diagrams), and is computed with symbolic parameters:

    hermite   D[0] - 2 nu^2 E[1]                            eigenvalue -2 nu^2 |lam|
    laguerre  D[1] + (a+1) E[0] - nu E[1]                    eigenvalue -nu |lam|
    jacobi    D[2] + 2 D[1] - (p+2q-1) E[1] - (2p+2q-1) E[0] eigenvalue d_lam - (p+2q-1)|lam|

Values are memoised per session on (kind, label, parameters, method).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import jack as _jack  # noqa: F401  registers the Jack basis provider
from .operators import (D, E, exp_truncated, product_eigenfunction, triangular_eigenfunction)
from .partitions import (Partition, b_coefficient, c_factors, conjugate, d_eigenvalue,
                         integral_norm, jack_eigenvalue, partition_key, partitions_of)
from .scalars import A, ALPHA, P, P0, Q, Scalar
from .symfunc import Basis, SymFunc, apply_hom, convert, epsX_jack_product, to_p

KINDS = ("jack", "hermite", "laguerre", "jacobi")


class UnknownFamily(ValueError):
    pass


@dataclass
class FamilyElement:
    kind: str
    label: Partition
    params: dict
    value: SymFunc = field(repr=False)

    def in_basis(self, basis):
        return convert(self.value, basis)

    def eigenvalue(self):
        return family_eigenvalue(self.kind, self.label, **self.params)


# -- operators and eigenvalues ---------------------------------------------------


def hermite_operator(nu2=1):
    return D(0) - Scalar.coerce(nu2) * 2 * E(1)


def laguerre_operator(a=A, nu=1):
    return D(1) + (Scalar.coerce(a) + 1) * E(0) - Scalar.coerce(nu) * E(1)


def jacobi_operator(p=P, q=Q):
    p, q = Scalar.coerce(p), Scalar.coerce(q)
    return D(2) + 2 * D(1) - (p + 2 * q - 1) * E(1) - (2 * p + 2 * q - 1) * E(0)


def jack_operator():
    return D(2) - (2 / ALPHA * (P0 - 1)) * E(1)


def family_operator(kind, **params):
    if kind == "jack":
        return jack_operator()
    if kind == "hermite":
        return hermite_operator(params.get("nu2", 1))
    if kind == "laguerre":
        return laguerre_operator(params.get("a", A), params.get("nu", 1))
    if kind == "jacobi":
        return jacobi_operator(params.get("p", P), params.get("q", Q))
    raise UnknownFamily(kind)


def family_eigenvalue(kind, lam, **params):
    lam = Partition(lam)
    n = lam.size
    if kind == "jack":
        return jack_eigenvalue(lam)
    if kind == "hermite":
        return -2 * Scalar.coerce(params.get("nu2", 1)) * n
    if kind == "laguerre":
        return -Scalar.coerce(params.get("nu", 1)) * n
    if kind == "jacobi":
        p, q = Scalar.coerce(params.get("p", P)), Scalar.coerce(params.get("q", Q))
        return d_eigenvalue(lam) - (p + 2 * q - 1) * n
    raise UnknownFamily(kind)


def _default_params(kind, params):
    params = {k: Scalar.coerce(v) for k, v in params.items() if v is not None}
    if kind == "hermite":
        params.setdefault("nu2", Scalar(1))
    elif kind == "laguerre":
        params.setdefault("a", A)
        params.setdefault("nu", Scalar(1))
    elif kind == "jacobi":
        params.setdefault("p", P)
        params.setdefault("q", Q)
    elif kind != "jack":
        raise UnknownFamily(kind)
    return params


# -- construction ----------------------------------------------------------------


def _key(params):
    return tuple(sorted((k, str(v)) for k, v in params.items()))


@lru_cache(maxsize=None)
def _compute(kind, lam, pkey, method):
    params = {k: Scalar(v) for k, v in pkey}
    lam = Partition(lam)
    pj = to_p(SymFunc(Basis.JACK, {lam: 1}))
    if kind == "jack":
        return pj
    if method in ("solver", "product"):
        op = family_operator(kind, **params)

        def eig(mu):
            return family_eigenvalue(kind, mu, **params)

        if method == "solver":
            return to_p(triangular_eigenfunction(op, eig, lam))
        return product_eigenfunction(op, eig, lam)
    if kind == "hermite":
        return exp_truncated(D(0) * (Scalar(-1) / (4 * params["nu2"])), lam.size // 2, pj)
    if kind == "laguerre":
        gen = (D(1) + (params["a"] + 1) * E(0)) * (-params["nu"].inverse())
        return exp_truncated(gen, lam.size, pj)
    # jacobi has no closed exponential form; use the solver
    return _compute(kind, lam, pkey, "solver")


def family(kind, lam, method="default", **params):
    """Family element with label ``lam``.

    ``method`` is ``default`` (exponential formula for Hermite/Laguerre,
    solver for Jacobi), ``solver`` or ``product``.
    """
    if kind not in KINDS:
        raise UnknownFamily(kind)
    lam = Partition(lam)
    params = _default_params(kind, params)
    if method not in ("default", "solver", "product", "exp"):
        raise ValueError(f"unknown method {method!r}")
    m = "default" if method == "exp" else method
    return FamilyElement(kind, lam, params, _compute(kind, lam, _key(params), m))


def jack_element(lam):
    return family("jack", lam)


def hermite(lam, nu2=1, method="default"):
    return family("hermite", lam, method=method, nu2=nu2)


def laguerre(lam, a=A, nu=1, method="default"):
    return family("laguerre", lam, method=method, a=a, nu=nu)


def jacobi(lam, p=P, q=Q, method="solver"):
    return family("jacobi", lam, method=method, p=p, q=q)


# -- normalisations -------------------------------------------------------------


def eps_p0_jack(lam):
    """epsilon_{p0}(P_lam), the principal specialisation of P_lam."""
    return epsX_jack_product(lam, P0)


def jacobi_eps0(lam, p=P, q=Q):
    """Closed form of epsilon_0 of the Jacobi function, i.e. its constant term."""
    lam = Partition(lam)
    p, q = Scalar.coerce(p), Scalar.coerce(q)
    ia = 1 / ALPHA
    num = (Scalar(2) ** lam.size) * c_factors(lam, P0 * ia, "0") * \
        c_factors(lam, (P0 - 1) * ia - p - q + Scalar(1) / 2, "0")
    den = c_factors(lam, ia, "-") * c_factors(lam, 2 * P0 * ia - p - 2 * q - 1, "+")
    return num / den


def renorm_factor(lam):
    """Scale turning a monic family element into its renormalised version.

    This is prod over cells of (alpha*arm + leg + 1), i.e. alpha^|lam| times
    C-_lam(1/alpha); with it the Hermite and Laguerre Pieri coefficients take
    their closed forms.
    """
    return integral_norm(lam)


def renormalize(elem, convention="integral"):
    """Scale a Hermite or Laguerre element for its Pieri recurrences.

    ``integral`` multiplies by prod (alpha*arm + leg + 1); ``cminus`` by
    C-_lam(1/alpha), which is smaller by alpha^|lam|.
    """
    lam = elem.label
    if convention == "integral":
        c = renorm_factor(lam)
    elif convention == "cminus":
        c = c_factors(lam, 1 / ALPHA, "-")
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return FamilyElement(elem.kind, lam, dict(elem.params), elem.value.scale(c))


# -- expansion in a family basis --------------------------------------------------


def expand_in_family(f, kind, **params):
    """Coefficients of f in the basis of family elements.

    Back-substitution: take the largest label (in the total order) with a
    nonzero Jack coefficient, subtract that multiple of the family element,
    repeat.
    """
    params = _default_params(kind, params)
    rest = convert(f, Basis.JACK)
    out = {}
    while not rest.is_zero():
        lam = max(rest.terms, key=partition_key)
        c = rest.terms[lam]
        out[lam] = c
        elem = convert(family(kind, lam, **params).value, Basis.JACK)
        rest = rest - elem.scale(c)
    return out


# -- identities -------------------------------------------------------------------


def duality_check(kind, lam, reading="consistent"):
    """omega_alpha(F_lam) against b_{lam'}(1/alpha) F_{lam'} with dual parameters.

    omega_alpha acts on coefficients by p0 -> -alpha p0.  ``consistent``
    builds the right side with alpha -> 1/alpha and keeps the p0 slot;
    Hermite uses nu^2 -> -alpha nu^2 and Laguerre a -> -alpha a, nu -> alpha nu.
    ``literal`` additionally sends the p0 slot to -alpha p0 and, for
    Laguerre, nu -> -alpha nu.
    Returns (holds, lhs, rhs).
    """
    lam = Partition(lam)
    lamc = conjugate(lam)
    nu = Scalar.gen("nu")
    inv = 1 / ALPHA
    if kind == "jack":
        lhs = apply_hom("omega", ALPHA, family("jack", lam).value)
        rhs = family("jack", lamc).value.substitute({"alpha": inv})
    elif kind == "hermite":
        lhs = apply_hom("omega", ALPHA, family("hermite", lam, nu2=nu * nu).value)
        # nu2 = -nu^2/alpha turns into -alpha nu^2 once alpha -> 1/alpha
        rhs = family("hermite", lamc, nu2=-nu * nu / ALPHA).value
        binding = {"alpha": inv}
        if reading == "literal":
            binding["p0"] = -ALPHA * P0
        rhs = rhs.substitute(binding)
    elif kind == "laguerre":
        lhs = apply_hom("omega", ALPHA, family("laguerre", lam, a=A, nu=nu).value)
        rhs = family("laguerre", lamc, a=A, nu=nu).value
        sign = -1 if reading == "literal" else 1
        binding = {"alpha": inv, "a": -ALPHA * A, "nu": sign * ALPHA * nu}
        if reading == "literal":
            binding["p0"] = -ALPHA * P0
        rhs = rhs.substitute(binding)
    else:
        raise UnknownFamily(kind)
    rhs = rhs.scale(b_coefficient(lamc).substitute({"alpha": inv}))
    return lhs == rhs, lhs, rhs


def laguerre_symmetry_check(lam):
    """L_lam is invariant under a -> 2/alpha - a - 2, p0 -> p0 - 1 + alpha(a+1)."""
    val = family("laguerre", lam).value
    moved = val.substitute({"a": 2 / ALPHA - A - 2, "p0": P0 - 1 + ALPHA * (A + 1)})
    return moved == val


def ideal_membership(kind, n, m, lam):
    """(n+1, m+1) is a cell of lam: H_lam (or L_lam) lies in the invariant ideal."""
    if kind not in ("hermite", "laguerre"):
        raise UnknownFamily(kind)
    lam = Partition(lam)
    return lam.part(n + 1) >= m + 1


def family_basis(kind, degree, **params):
    return {lam: family(kind, lam, **params) for k in range(degree + 1) for lam in partitions_of(k)}
