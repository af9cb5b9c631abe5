"""Limit transitions between the families.

    jacobi_to_laguerre   (q/2)^|lam| sigma_{2/q} J_lam(p = -a-q-1/2, q),  q -> oo
    jacobi_to_hermite    s^|lam| (sigma_{1/s} o t_{-1}) J_lam(q = -s^2),  s -> oo
    laguerre_to_hermite  s^-|lam| (sigma_s o t_{s^2/(2 nu)}) L_lam(a = s^2/2, nu),  s -> oo

q = -s^2 and a = s^2/2 keep the square roots out of the coefficient field.
The last transition is conjectural; it is computed and reported only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .families import family
from .partitions import Partition
from .scalars import A, DivergentLimit, NU, Q, S, Scalar
from .symfunc import Basis, SymFunc, apply_hom

KINDS = ("jacobi_to_laguerre", "jacobi_to_hermite", "laguerre_to_hermite_conjecture")
CONJECTURAL = {"laguerre_to_hermite_conjecture"}


@dataclass
class LimitResult:
    kind: str
    label: Partition
    verdict: str  # equal, not-equal or divergent
    value: SymFunc | None = field(default=None, repr=False)
    target: SymFunc | None = field(default=None, repr=False)
    detail: str = ""

    @property
    def conjectural(self):
        return self.kind in CONJECTURAL


def _termwise_limit(f, var):
    return SymFunc(Basis.POWER, {mu: c.limit_at_infinity(var) for mu, c in f.terms.items()})


def pre_limit(kind, lam):
    """(expression before the limit, limit variable, target)."""
    lam = Partition(lam)
    n = lam.size
    if kind == "jacobi_to_laguerre":
        half = Scalar(Fraction(1, 2))
        f = family("jacobi", lam, p=-A - Q - half, q=Q).value
        f = apply_hom("sigma", 2 / Q, f).scale((Q * half) ** n)
        return f, "q", family("laguerre", lam, a=A, nu=1).value
    if kind == "jacobi_to_hermite":
        f = family("jacobi", lam, q=-S * S).value
        f = apply_hom("sigma", 1 / S, apply_hom("t", -1, f)).scale(S ** n)
        return f, "s", family("hermite", lam, nu2=1).value
    if kind == "laguerre_to_hermite_conjecture":
        f = family("laguerre", lam, a=S * S / 2, nu=NU).value
        f = apply_hom("sigma", S, apply_hom("t", S * S / (2 * NU), f)).scale(S ** -n)
        return f, "s", family("hermite", lam, nu2=NU * NU).value
    raise ValueError(f"unknown limit {kind!r}")


def limit_transition(kind, lam):
    lam = Partition(lam)
    f, var, target = pre_limit(kind, lam)
    try:
        value = _termwise_limit(f, var)
    except DivergentLimit as exc:
        return LimitResult(kind, lam, "divergent", None, target, str(exc))
    verdict = "equal" if value == target else "not-equal"
    return LimitResult(kind, lam, verdict, value, target)
