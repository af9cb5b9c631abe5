"""Truncated hypergeometric series in one and two sets of Jack arguments.

A two-set series lives in the completed tensor square of the ring of
symmetric functions; here it is a :class:`TensorSeries`, a finite map
(left label, right label) -> Scalar in which each slot has degree at most
``max_deg``.  Applying an operator that lowers degree by k in a slot makes
the top k degrees incomplete, so every series also carries ``valid_to``:
coefficients whose slot degrees are both <= valid_to are exact.

Symbolic parameters default to the generators a, s (for b) and q (for c).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import factorial

from .families import family
from .operators import D, E, JackDiag
from .partitions import Partition, add_box, deformed_pochhammer, hook_product, partition_key, partitions_upto
from .scalars import A, ALPHA, P0, Q, S, Scalar
from .symfunc import Basis, SymFunc, apply_hom, convert, epsX_jack_product, multiply, p_power


class PochhammerPole(ValueError):
    def __init__(self, b, cell):
        super().__init__(f"[{b}] has a zero factor at cell {cell}")
        self.b = b
        self.cell = cell


# -- tensor series ---------------------------------------------------------------


def _slot_degree_ok(key, d):
    return key[0].size <= d and key[1].size <= d


@dataclass
class TensorSeries:
    max_deg: int
    terms: dict = field(default_factory=dict)
    bases: tuple = (Basis.JACK, Basis.JACK)
    valid_to: int | None = None

    def __post_init__(self):
        if self.valid_to is None:
            self.valid_to = self.max_deg
        self.terms = {(Partition(l), Partition(r)): Scalar.coerce(c) for (l, r), c in self.terms.items()}
        self.terms = {k: c for k, c in self.terms.items()
                      if not c.is_zero() and _slot_degree_ok(k, self.max_deg)}

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (partition_key(kv[0][0]), partition_key(kv[0][1])))

    def _like(self, terms, bases=None, valid_to=None):
        return TensorSeries(self.max_deg, terms, bases or self.bases,
                            self.valid_to if valid_to is None else valid_to)

    def slot_map(self, side, fn, basis):
        """Apply fn (SymFunc -> SymFunc in ``basis``) to one slot."""
        i = 0 if side == "left" else 1
        groups = defaultdict(dict)
        for key, c in self.terms.items():
            groups[key[1 - i]][key[i]] = c
        out = defaultdict(lambda: Scalar(0))
        for other, coeffs in groups.items():
            img = convert(fn(convert(SymFunc(self.bases[i], coeffs), basis)), basis)
            for lam, c in img.terms.items():
                key = (lam, other) if i == 0 else (other, lam)
                out[key] = out[key] + c
        bases = list(self.bases)
        bases[i] = basis
        return self._like(dict(out), tuple(bases))

    def convert(self, left=None, right=None):
        f = self
        if left is not None and left is not f.bases[0]:
            f = f.slot_map("left", lambda g: g, Basis.parse(left))
        if right is not None and right is not f.bases[1]:
            f = f.slot_map("right", lambda g: g, Basis.parse(right))
        return f

    def _aligned(self, other):
        other = other.convert(*self.bases)
        return other

    def __add__(self, other):
        other = self._aligned(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorSeries(min(self.max_deg, other.max_deg), out, self.bases,
                            min(self.valid_to, other.valid_to))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Scalar.coerce(c)
        return self._like({k: v * c for k, v in self.terms.items()})

    def restricted(self, d):
        return self._like({k: c for k, c in self.terms.items() if _slot_degree_ok(k, d)})

    def is_zero(self, upto=None):
        d = self.valid_to if upto is None else upto
        return not self.restricted(d).terms

    def nonzero_terms(self, upto=None):
        d = self.valid_to if upto is None else upto
        return [(l, r, c) for (l, r), c in self.restricted(d).items()]

    def equals(self, other, upto=None):
        diff = self.convert(Basis.JACK, Basis.JACK) - other.convert(Basis.JACK, Basis.JACK)
        return diff.is_zero(upto)


def tensor_op_apply(side, op, F):
    """op applied in one slot; valid_to drops by the largest degree decrease."""
    lo, _ = op.shift()
    out = F.slot_map(side, op.apply, Basis.POWER)
    out.valid_to = min(F.valid_to, F.max_deg - max(0, -lo))
    return out


def tensor_mul(side, g, F):
    """Multiply one slot by g."""
    g = convert(g, Basis.POWER)
    return F.slot_map(side, lambda f: multiply(f, g), Basis.POWER)


# -- series ------------------------------------------------------------------------


def _check_poles(b_list, degree):
    for b in b_list:
        b = Scalar.coerce(b)
        for i in range(1, max(degree, 1) + 1):
            v = (i - 1) / ALPHA - b
            if v.is_constant():
                x = v.to_fraction()
                # the zero factor sits in cell (i, x+1), first reached at size i*(x+1)
                if x.denominator == 1 and x >= 0 and i * (int(x) + 1) <= degree:
                    raise PochhammerPole(b, (i, int(x) + 1))


def hyper_coefficient(lam, a_list, b_list):
    """(1/h_lam) prod [a]_lam / prod [b]_lam."""
    c = 1 / hook_product(lam)
    for a in a_list:
        c = c * deformed_pochhammer(a, lam)
    for b in b_list:
        c = c / deformed_pochhammer(b, lam)
    return c


def pFq_two_set(a_list, b_list, degree):
    _check_poles(b_list, degree)
    terms = {}
    for lam in partitions_upto(degree):
        terms[(lam, lam)] = hyper_coefficient(lam, a_list, b_list) / epsX_jack_product(lam, P0)
    return TensorSeries(degree, terms)


def pFq_one_set(a_list, b_list, degree):
    _check_poles(b_list, degree)
    return SymFunc(Basis.JACK, {lam: hyper_coefficient(lam, a_list, b_list) for lam in partitions_upto(degree)})


def one_set_from_two_set(F):
    """Apply epsilon_{p0} in the right slot of a Jack-basis tensor series."""
    out = defaultdict(lambda: Scalar(0))
    F = F.convert(Basis.JACK, Basis.JACK)
    for (l, r), c in F.terms.items():
        out[l] = out[l] + c * epsX_jack_product(r, P0)
    return SymFunc(Basis.JACK, dict(out))


# -- differential equations --------------------------------------------------------

ODES = ("2F1_two_set", "1F1", "0F1", "0F0", "2F1_one_set")


@dataclass
class Residual:
    which: str
    degree: int
    valid_to: int
    nonzero_terms: list

    @property
    def zero(self):
        return not self.nonzero_terms


def _params(a, b, c):
    return (A if a is None else Scalar.coerce(a), S if b is None else Scalar.coerce(b),
            Q if c is None else Scalar.coerce(c))


def check_hyper_ode(which, degree, a=None, b=None, c=None):
    """Left minus right side of the differential equation, on the truncated series."""
    a, b, c = _params(a, b, c)
    shift = (P0 - 1) / ALPHA
    p1 = p_power(1)
    if which == "2F1_one_set":
        F = convert(pFq_one_set([a, b], [c], degree), Basis.POWER)
        op = D(1) - D(2) + (c - shift) * E(0) - (a + b + 1 - shift) * E(1)
        res = op.apply(F) - F.scale(a * b * P0)
        valid = degree - 1
        res = convert(res.truncate(valid), Basis.JACK)
        return Residual(which, degree, valid, list(res.items()))
    if which == "2F1_two_set":
        F = pFq_two_set([a, b], [c], degree)
        left = tensor_op_apply("left", D(1) + (c - shift) * E(0), F)
        right = tensor_op_apply("right", D(3) + (a + b + 1 - 2 * shift) * E(2), F)
        res = left - right - tensor_mul("right", p1, F).scale(a * b)
    elif which == "1F1":
        F = pFq_two_set([a], [c], degree)
        left = tensor_op_apply("left", D(1) + (c - shift) * E(0), F)
        right = tensor_op_apply("right", E(2), F)
        res = left - right - tensor_mul("right", p1, F).scale(a)
    elif which == "0F1":
        F = pFq_two_set([], [c], degree)
        res = tensor_op_apply("left", D(1) + (c - shift) * E(0), F) - tensor_mul("right", p1, F)
    elif which == "0F0":
        F = pFq_two_set([], [], degree)
        res = tensor_op_apply("left", E(0), F) - tensor_mul("right", p1, F)
    else:
        raise ValueError(f"unknown equation {which!r}")
    res = res.convert(Basis.JACK, Basis.JACK)
    return Residual(which, degree, res.valid_to, res.nonzero_terms())


def coefficient_recurrence(a, b, c, degree):
    """Solve (c + lam_i - (i-1)/alpha) A_{lam^(i)} = (a + ...)(b + ...) A_lam from A_0 = 1.

    Every way of reaching a partition must give the same value; the map
    label -> A is returned, or ValueError on an inconsistency.
    """
    A_ = {Partition(()): Scalar(1)}
    for lam in partitions_upto(degree - 1):
        for i in range(1, len(lam) + 2):
            big = add_box(lam, i)
            if big is None:
                continue
            x = lam.part(i) - Scalar(i - 1) / ALPHA
            v = (a + x) * (b + x) / (c + x) * A_[lam]
            if big in A_ and A_[big] != v:
                raise ValueError(f"inconsistent recurrence at {big}")
            A_[big] = v
    return A_


# -- operator identities on the series ------------------------------------------


def symmetric_eigenop_check(spec, degree):
    """(L_f x 1) 0F0 equals (1 x L_f) 0F0 up to the given degree."""
    F = pFq_two_set([], [], degree)
    op = JackDiag(spec)
    return tensor_op_apply("left", op, F).equals(tensor_op_apply("right", op, F))


def d0_p2_check(degree):
    """(D0 x 1) 0F0 equals (1 x p2) 0F0 on the exact range."""
    F = pFq_two_set([], [], degree)
    lhs = tensor_op_apply("left", D(0), F)
    return lhs.equals(tensor_mul("right", p_power(2), F), lhs.valid_to)


def confluent_limit_check(degree, a=None, c=None):
    """(1 x sigma_{1/b}) 2F1(a, b; c) tends to 1F1(a; c) coefficient-wise as b -> oo."""
    a, _, c = _params(a, None, c)
    F = pFq_two_set([a, S], [c], degree).convert(Basis.JACK, Basis.POWER)
    scaled = F.slot_map("right", lambda f: apply_hom("sigma", 1 / S, f), Basis.POWER)
    lim = scaled._like({k: v.limit_at_infinity("s") for k, v in scaled.terms.items()})
    return lim.equals(pFq_two_set([a], [c], degree))


# -- generating functions --------------------------------------------------------


def _exp_series(g, d):
    """exp(g) truncated at degree d, g homogeneous of positive degree."""
    out = SymFunc.const(1)
    power = SymFunc.const(1)
    deg = max(g.degrees() or [1])
    for n in range(1, d // deg + 1):
        power = multiply(power, g)
        out = out + power.scale(Scalar(1) / factorial(n))
    return out.truncate(d)


def generating_function_check(kind, degree):
    """Residual of the Hermite or Laguerre generating function, right-slot degree <= degree."""
    if kind == "hermite":
        base = pFq_two_set([], [], degree)
        g = p_power(2).scale(Scalar(-1) / 4)
    elif kind == "laguerre":
        qq = 1 + (P0 - 1) / ALPHA
        base = pFq_two_set([], [A + qq], degree)
        g = p_power(1).scale(-1)
    else:
        raise ValueError(f"no generating function for {kind!r}")
    rhs = tensor_mul("right", _exp_series(g, degree), base)
    terms = {}
    for lam in partitions_upto(degree):
        w = 1 / (hook_product(lam) * epsX_jack_product(lam, P0))
        if kind == "laguerre":
            w = w / deformed_pochhammer(A + qq, lam)
        val = convert(family(kind, lam).value, Basis.JACK)
        for mu, cf in val.terms.items():
            terms[(mu, lam)] = cf * w
    lhs = TensorSeries(degree, terms)
    res = (lhs - rhs).convert(Basis.JACK, Basis.JACK)
    return Residual(f"{kind}_generating_function", degree, degree, res.nonzero_terms(degree))
