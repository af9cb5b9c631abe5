"""Finite-variable realisation in x_1..x_n, y_1..y_m.

phi_{n,m} sends p_r to the deformed power sum sum x_i^r - alpha sum y_I^r and
p0 to n - alpha m.  Its images (super Jack, Hermite and Laguerre
polynomials) carry their symmetric-function preimage along, so deformed
operators act by lifting, applying E^l / D^k upstairs and pushing back down.
The explicit partial differential form is only used for point checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .families import family
from .hyper import _check_poles, hyper_coefficient
from .operators import D, E, exp_truncated
from .partitions import Partition, b_coefficient, conjugate, partitions_of, partitions_upto
from .scalars import A, ALPHA, NU, Scalar
from .symfunc import Basis, SymFunc, to_p

MAX_VARS = 4


class NotInDeformedAlgebra(ValueError):
    pass


class SingularPoint(ValueError):
    pass


@dataclass(frozen=True)
class SuperAlgebra:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValueError("variable counts must be non-negative")
        if self.n > MAX_VARS or self.m > MAX_VARS:
            raise ValueError(f"n, m <= {MAX_VARS} at this scale")

    @property
    def p0(self):
        return self.n - ALPHA * self.m

    def swapped(self):
        return SuperAlgebra(self.m, self.n)

    def in_kernel(self, lam):
        """(n+1, m+1) is a cell of lam."""
        return Partition(lam).part(self.n + 1) >= self.m + 1

    def variables(self):
        return [("x", i) for i in range(self.n)] + [("y", i) for i in range(self.m)]


def _add_exp(e, i, k):
    return e[:i] + (e[i] + k,) + e[i + 1:]


class MVPoly:
    """Polynomial in x_1..x_n, y_1..y_m with Scalar coefficients.

    ``lift`` is a power-sum preimage under phi when one is known.
    """

    __slots__ = ("alg", "terms", "lift")

    def __init__(self, alg, terms=None, lift=None):
        self.alg = alg
        self.terms = {}
        for key, c in (terms or {}).items():
            c = Scalar.coerce(c)
            if not c.is_zero():
                self.terms[key] = c
        self.lift = lift

    @classmethod
    def const(cls, alg, c, lift=None):
        return cls(alg, {((0,) * alg.n, (0,) * alg.m): c}, lift)

    @classmethod
    def variable(cls, alg, which, i):
        zx, zy = [0] * alg.n, [0] * alg.m
        (zx if which == "x" else zy)[i] = 1
        return cls(alg, {(tuple(zx), tuple(zy)): 1})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(x) + sum(y) for x, y in self.terms), default=-1)

    def _combine(self, other, sign):
        if self.alg != other.alg:
            raise ValueError("polynomials live in different algebras")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c * sign if k in out else c * sign
        lift = None
        if self.lift is not None and other.lift is not None:
            lift = self.lift + other.lift if sign == 1 else self.lift - other.lift
        return MVPoly(self.alg, out, lift)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Scalar.coerce(c)
        lift = self.lift.scale(c) if self.lift is not None else None
        return MVPoly(self.alg, {k: v * c for k, v in self.terms.items()}, lift)

    def __mul__(self, other):
        if not isinstance(other, MVPoly):
            return self.scale(other)
        out = {}
        for (x1, y1), c1 in self.terms.items():
            for (x2, y2), c2 in other.terms.items():
                key = (tuple(a + b for a, b in zip(x1, x2)), tuple(a + b for a, b in zip(y1, y2)))
                out[key] = out[key] + c1 * c2 if key in out else c1 * c2
        return MVPoly(self.alg, out)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, MVPoly):
            return NotImplemented
        return self.alg == other.alg and (self - other).is_zero()

    __hash__ = None

    def map_coefficients(self, fn):
        return MVPoly(self.alg, {k: fn(c) for k, c in self.terms.items()})

    def substitute(self, bindings):
        return self.map_coefficients(lambda c: c.substitute(bindings))

    def swap_variables(self):
        """Same polynomial read in the algebra (m, n): x and y trade places."""
        return MVPoly(self.alg.swapped(), {(y, x): c for (x, y), c in self.terms.items()})

    def scale_variables(self, c):
        """f(c x, c y)."""
        c = Scalar.coerce(c)
        return MVPoly(self.alg, {k: v * c ** (sum(k[0]) + sum(k[1])) for k, v in self.terms.items()})

    def derivative(self, var, order=1):
        which, i = var
        slot = 0 if which == "x" else 1
        out = {}
        for key, c in self.terms.items():
            e = key[slot][i]
            if e < order:
                continue
            f = 1
            for t in range(order):
                f *= e - t
            new = _add_exp(key[slot], i, -order)
            nk = (new, key[1]) if slot == 0 else (key[0], new)
            out[nk] = c * f
        return MVPoly(self.alg, out)

    def evaluate(self, point):
        """Value at point = (xs, ys) of rationals, as a Scalar."""
        xs, ys = point
        total = Scalar(0)
        for (ex, ey), c in self.terms.items():
            v = Fraction(1)
            for a, e in zip(xs, ex):
                v *= Fraction(a) ** e
            for a, e in zip(ys, ey):
                v *= Fraction(a) ** e
            total = total + c * v
        return total

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for (ex, ey), c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0][0]) - sum(kv[0][1]), kv[0])):
            mono = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(ex) if e]
            mono += [f"y{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(ey) if e]
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(mono))
            else:
                parts.append(f"({cs})*" + "*".join(mono))
        return " + ".join(parts)

    def to_json(self):
        return {"n": self.alg.n, "m": self.alg.m,
                "terms": [[list(ex), list(ey), str(c)]
                          for (ex, ey), c in sorted(self.terms.items())]}

    def __repr__(self):
        return f"MVPoly({self.alg.n},{self.alg.m}: {self.to_text()})"


# -- the homomorphism ---------------------------------------------------------------


@lru_cache(maxsize=None)
def deformed_power_sum(alg, r):
    if r == 0:
        return MVPoly.const(alg, alg.p0)
    terms = {}
    for i in range(alg.n):
        terms[(_add_exp((0,) * alg.n, i, r), (0,) * alg.m)] = Scalar(1)
    for i in range(alg.m):
        terms[((0,) * alg.n, _add_exp((0,) * alg.m, i, r))] = -ALPHA
    return MVPoly(alg, terms)


@lru_cache(maxsize=None)
def _phi_power(alg, mu):
    out = MVPoly.const(alg, 1)
    for r in mu:
        out = out * deformed_power_sum(alg, r)
    return out


def phi_nm(alg, f):
    """Image of f under p_r -> deformed power sum, p0 -> n - alpha m.

    Raises DenominatorVanishes when a coefficient has a pole at p0 = n - alpha m.
    """
    f = to_p(f)
    acc = {}
    for mu, c in f.terms.items():
        c = c.substitute({"p0": alg.p0})
        for key, v in _phi_power(alg, mu).terms.items():
            acc[key] = acc[key] + c * v if key in acc else c * v
    return MVPoly(alg, acc, lift=f)


def membership_check(alg, f):
    """Separately symmetric, and (d/dx_i + (1/alpha) d/dy_I) f vanishes on x_i = y_I."""
    if f.alg != alg:
        return False
    for key, c in f.terms.items():
        ex, ey = key
        for perm_x in _transpositions(ex):
            if f.terms.get((perm_x, ey)) != c:
                return False
        for perm_y in _transpositions(ey):
            if f.terms.get((ex, perm_y)) != c:
                return False
    for i in range(alg.n):
        for j in range(alg.m):
            g = f.derivative(("x", i)) + f.derivative(("y", j)).scale(1 / ALPHA)
            if not _restrict_equal(g, i, j).is_zero():
                return False
    return True


def _transpositions(e):
    for i in range(len(e) - 1):
        if e[i] != e[i + 1]:
            yield e[:i] + (e[i + 1], e[i]) + e[i + 2:]


def _restrict_equal(g, i, j):
    """Set y_j = x_i (the y_j exponent moves onto x_i)."""
    out = {}
    for (ex, ey), c in g.terms.items():
        key = (_add_exp(ex, i, ey[j]), ey[:j] + (0,) + ey[j + 1:])
        out[key] = out[key] + c if key in out else c
    return MVPoly(g.alg, out)


# -- super families -----------------------------------------------------------------


@dataclass
class SuperElement:
    kind: str
    label: Partition
    alg: SuperAlgebra
    poly: MVPoly
    kernel: bool  # label contains the cell (n+1, m+1); poly is then zero


def super_family(alg, kind, lam, **params):
    lam = Partition(lam)
    f = family(kind, lam, **params).value
    return SuperElement(kind, lam, alg, phi_nm(alg, f), alg.in_kernel(lam))


# -- deformed operators --------------------------------------------------------------


def _as_operator(which):
    if isinstance(which, tuple):
        name, k = which
        return E(k) if name == "E" else D(k)
    return which


def deformed_op_apply(alg, which, f):
    """E^l_{n,m} or D^k_{n,m} (``("E", l)`` / ``("D", k)``, or any operator
    expression) applied through the lift of f."""
    if f.lift is None or f.alg != alg:
        raise NotInDeformedAlgebra("no preimage under phi is known for this polynomial")
    op = _as_operator(which)
    return phi_nm(alg, op.apply(f.lift))


def _z_roles(alg, alpha, swap=False):
    """Variables with their rho weights (1 for the first family, -alpha for the second)."""
    first = [("x", i) for i in range(alg.n)]
    second = [("y", i) for i in range(alg.m)]
    if swap:
        first, second = second, first
    return [(v, Scalar(1)) for v in first] + [(v, -alpha) for v in second]


def _coord(point, var):
    xs, ys = point
    return Fraction((xs if var[0] == "x" else ys)[var[1]])


def explicit_E(alg, l, f, point):
    total = Scalar(0)
    for var in alg.variables():
        total = total + f.derivative(var).evaluate(point) * _coord(point, var) ** l
    return total


def explicit_D(alg, k, f, point, alpha=ALPHA, swap=False):
    """The deformed D^k written with rho weights, evaluated at a point.

    ``swap`` reads the y variables as the unweighted family (the algebra
    (m, n) in the variables (y, x)); ``alpha`` may be any Scalar, e.g. 1/alpha.
    """
    roles = _z_roles(alg, alpha, swap)
    coords = {v: _coord(point, v) for v, _ in roles}
    if len(set(coords.values())) < len(coords):
        raise SingularPoint(f"coincident coordinates at {point}")
    first = {v: f.derivative(v).evaluate(point) for v, _ in roles}
    total = Scalar(0)
    for v, rho in roles:
        z = coords[v]
        total = total + f.derivative(v, 2).evaluate(point) * z ** k / rho
        for w, rho_w in roles:
            if w != v:
                total = total + first[v] * rho_w * (2 * z ** k / (z - coords[w])) / alpha
        if k:
            total = total - first[v] * (1 - 1 / rho) * k * z ** (k - 1)
    return total


def deformed_op_point_check(alg, which, f, point):
    """Explicit differential form at the point against the lifted action."""
    name, k = which
    if name == "E":
        lhs = explicit_E(alg, k, f, point)
    else:
        lhs = explicit_D(alg, k, f, point)
    rhs = deformed_op_apply(alg, which, f).evaluate(point)
    return lhs == rhs


def dual_D_check(alg, k, f, point):
    """D^k_{n,m}(alpha) f = -(1/alpha)(D^k_{m,n}(1/alpha) + k(1+alpha)E^{k-1}) f at a point."""
    lhs = explicit_D(alg, k, f, point)
    rhs = explicit_D(alg, k, f, point, alpha=1 / ALPHA, swap=True)
    if k:
        rhs = rhs + k * (1 + ALPHA) * explicit_E(alg, k - 1, f, point)
    return lhs == -rhs / ALPHA


# -- dualities ---------------------------------------------------------------------------


def _invert_alpha(c):
    return c.substitute({"alpha": 1 / ALPHA})


def _dual_side(alg, kind, lam, params):
    """phi^{(1/alpha)}_{m,n} of the conjugate element, read back in (n, m)."""
    dual = alg.swapped()
    f = family(kind, conjugate(lam), **params).value
    return phi_nm(dual, f).map_coefficients(_invert_alpha).swap_variables()


def super_duality_check(kind, alg, lam, reading="printed"):
    """Super duality as a polynomial identity; returns (holds, lhs, rhs).

    Hermite: nu^2 -> -alpha nu^2.  Laguerre: a -> -alpha a and nu -> -alpha nu
    (``printed``) or nu -> +alpha nu (``sign-nu``).
    """
    lam = Partition(lam)
    if alg.in_kernel(lam):
        raise ValueError(f"{lam} lies in the kernel of phi_{alg.n},{alg.m}")
    nu = NU
    if kind == "jack":
        lhs_f, params = family("jack", lam).value, {}
    elif kind == "hermite":
        lhs_f = family("hermite", lam, nu2=nu * nu).value
        params = {"nu2": _invert_alpha(-ALPHA * nu * nu)}
    elif kind == "laguerre":
        lhs_f = family("laguerre", lam, a=A, nu=nu).value
        sign = -1 if reading == "printed" else 1
        params = {"a": _invert_alpha(-ALPHA * A), "nu": _invert_alpha(sign * ALPHA * nu)}
    else:
        raise ValueError(f"unknown kind {kind!r}")
    lhs = phi_nm(alg, lhs_f)
    rhs = _dual_side(alg, kind, lam, params)
    pref = b_coefficient(conjugate(lam), 1 / ALPHA) * (-1) ** lam.size
    rhs = rhs.scale(pref)
    return lhs == rhs, lhs, rhs


# -- super hypergeometric series -----------------------------------------------------------


def super_pFq(alg, a_list, b_list, degree):
    """Truncated sum of (1/h) prod[a]/prod[b] SP_lam over |lam| <= degree outside the kernel."""
    _check_poles(b_list, degree)
    out = MVPoly(alg, {}, lift=SymFunc(Basis.POWER))
    for lam in partitions_upto(degree):
        if alg.in_kernel(lam):
            continue
        c = hyper_coefficient(lam, a_list, b_list)
        out = out + phi_nm(alg, family("jack", lam).value).scale(c)
    return out


@dataclass
class SuperDualityReport:
    holds: bool
    lhs: MVPoly
    rhs: MVPoly


def super_pFq_duality(alg, a_list, b_list, degree):
    """pSFq(a; b; alpha; x, y) against pSFq(-alpha a; -alpha b; 1/alpha; y', x')
    with x' = (-alpha)^{1+q-p} x."""
    lhs = super_pFq(alg, a_list, b_list, degree)
    # parameters are written so that alpha -> 1/alpha turns them into -alpha a
    a2 = [_invert_alpha(-ALPHA * Scalar.coerce(a)) for a in a_list]
    b2 = [_invert_alpha(-ALPHA * Scalar.coerce(b)) for b in b_list]
    dual = alg.swapped()
    rhs = super_pFq(dual, a2, b2, degree).map_coefficients(_invert_alpha)
    rhs = rhs.scale_variables((-ALPHA) ** (1 + len(b_list) - len(a_list))).swap_variables()
    return SuperDualityReport(lhs == rhs, lhs, rhs)


# -- point sets and sweeps ----------------------------------------------------------------

_POINTS = [
    ((Fraction(2), Fraction(-3)), (Fraction(5), Fraction(7, 2))),
    ((Fraction(1, 3), Fraction(4)), (Fraction(-2), Fraction(9))),
    ((Fraction(-5, 2), Fraction(6)), (Fraction(3, 7), Fraction(-1))),
]


def sample_points(alg):
    return [(xs[:alg.n], ys[:alg.m]) for xs, ys in _POINTS]


def algebras(max_n=2, max_m=2):
    return [SuperAlgebra(n, m) for n, m in product(range(max_n + 1), range(max_m + 1))]


def power_sum_images(alg, max_degree):
    return {mu: phi_nm(alg, SymFunc(Basis.POWER, {mu: 1}))
            for d in range(max_degree + 1) for mu in partitions_of(d)}


def hermite_exp_check(alg, lam):
    """SH_lam = exp_L(-D^0_{n,m}/(4 nu^2)) SP_lam with L = |lam|//2, via the lift."""
    lam = Partition(lam)
    nu2 = NU * NU
    sp = family("jack", lam).value
    lifted = exp_truncated((-1 / (4 * nu2)) * D(0), lam.size // 2, to_p(sp))
    return phi_nm(alg, lifted) == super_family(alg, "hermite", lam, nu2=nu2).poly


def eigen_check(alg, kind, lam):
    """Deformed Hermite / Laguerre operator on SH / SL gives the eigenvalue."""
    from .families import family_eigenvalue, family_operator

    el = super_family(alg, kind, lam)
    got = deformed_op_apply(alg, family_operator(kind), el.poly)
    return got == el.poly.scale(family_eigenvalue(kind, lam).substitute({"p0": alg.p0}))
