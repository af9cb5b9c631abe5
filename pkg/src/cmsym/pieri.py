"""Pieri expansions of the renormalised families.

The oracle multiplies a renormalised family element by e_r (E_r = 2^r e_r
for Jacobi) and re-expands the product in the same family.  The closed
forms below are compared against it coefficient by coefficient.

Normalisations used throughout:

    hermite, laguerre   c_lam * F_lam, c_lam = prod over cells (alpha*arm + leg + 1)
    jacobi              J_lam / eps0(J_lam)   (eps0 = constant term)

Hermite uses nu^2 = 1 and Laguerre nu = 1.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass, field

from .families import expand_in_family, family, jacobi_eps0, renorm_factor
from .partitions import Partition, partition_key
from .scalars import A, ALPHA, P, P0, Q, Scalar
from .symfunc import Basis, SymFunc, multiply, to_p


@dataclass
class PieriExpansion:
    kind: str
    r: int
    source: Partition
    terms: dict = field(default_factory=dict)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: partition_key(kv[0]))

    def __eq__(self, other):
        if not isinstance(other, PieriExpansion):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        zero = Scalar(0)
        return all(self.terms.get(k, zero) == other.terms.get(k, zero) for k in keys)


@dataclass
class ClosedFormReport:
    kind: str
    form: str
    r: int
    source: Partition
    matches: bool
    mismatches: dict = field(default_factory=dict)
    note: str = ""


# -- oracle ----------------------------------------------------------------------


def normalisation(kind, lam):
    if kind in ("hermite", "laguerre"):
        return renorm_factor(lam)
    if kind == "jacobi":
        return 1 / family("jacobi", lam).value.constant_term()
    raise ValueError(f"no Pieri normalisation for {kind!r}")


def multiplier(kind, r):
    """e_r for Hermite and Laguerre, E_r = 2^r e_r for Jacobi, in the p basis."""
    c = 2 ** r if kind == "jacobi" else 1
    return to_p(SymFunc(Basis.ELEMENTARY, {Partition((r,)): c}))


def pieri_oracle(kind, lam, r):
    lam = Partition(lam)
    f = family(kind, lam).value.scale(normalisation(kind, lam))
    coeffs = expand_in_family(multiply(multiplier(kind, r), f), kind)
    return PieriExpansion(kind, r, lam, {mu: c / normalisation(kind, mu) for mu, c in coeffs.items()})


# -- index sets -------------------------------------------------------------------


def _target(lam, signs):
    """lam + e_{eps(J)} as a Partition, or None."""
    n = max([len(lam), *signs]) if signs else len(lam)
    parts = [lam.part(i) for i in range(1, n + 1)]
    for j, e in signs.items():
        parts[j - 1] += e
    if any(x < 0 for x in parts) or any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        return None
    return Partition(tuple(x for x in parts if x))


def _signed(rows, size):
    for idx in itertools.combinations(rows, size):
        for s in itertools.product((1, -1), repeat=size):
            yield dict(zip(idx, s))


def _gap(lam, j, i, shift=0):
    """j - i + alpha(lam_i - lam_j + shift)."""
    return j - i + ALPHA * (lam.part(i) - lam.part(j) + shift)


def _cross(lam, signs, rows):
    out = Scalar(1)
    for j, e in signs.items():
        for i in rows:
            if i not in signs:
                out = out * (1 - Scalar(e) / _gap(lam, j, i))
    return out


def _mixed_pairs(lam, signs, second):
    """Product over j in J+, j' in J- of (1 + 1/g(0)) (1 + second/g(1)), g(s) = j'-j+alpha(lam_j-lam_j'+s)."""
    out = Scalar(1)
    for j, e in signs.items():
        if e < 0:
            continue
        for jp, f in signs.items():
            if f > 0:
                continue
            out = out * (1 + 1 / _gap(lam, jp, j)) * (1 + Scalar(second) / _gap(lam, jp, j, 1))
    return out


def _add(out, mu, c):
    if mu is not None and not c.is_zero():
        out[mu] = out[mu] + c if mu in out else c


def _clean(terms):
    return {k: v for k, v in terms.items() if not v.is_zero()}


# -- Hermite ----------------------------------------------------------------------


def hermite_pieri_e1(lam):
    """Closed-form coefficients of e_1 times the renormalised Hermite function."""
    lam = Partition(lam)
    n = len(lam) + 1
    rows = range(1, n + 1)
    out = {}
    for j in rows:
        lj = lam.part(j)
        up = Scalar(1) / (n + 1 - j + ALPHA * lj)
        down = ((P0 - j + 1) / ALPHA + lj - 1) * (n - j + ALPHA * lj) / 2
        for i in rows:
            if i != j:
                up = up * (1 - 1 / _gap(lam, j, i))
                down = down * (1 + 1 / _gap(lam, j, i))
        _add(out, _target(lam, {j: 1}), up)
        _add(out, _target(lam, {j: -1}), down)
    return PieriExpansion("hermite", 1, lam, _clean(out))


def hermite_top_coefficient(lam, signs, r):
    """W for |J+| + |J-| = r: the J- prefactor times U-hat."""
    lam = Partition(lam)
    n = len(lam) + r
    rows = range(1, n + 1)
    u = _mixed_pairs(lam, signs, 1) * _cross(lam, signs, rows)
    pre = Scalar(1)
    for j, e in signs.items():
        lj = lam.part(j)
        if e < 0:
            u = u * (n - j + ALPHA * lj)
            pre = pre * ((P0 - j + 1) / ALPHA + lj - 1) / 2
        else:
            u = u / (n + 1 - j + ALPHA * lj)
    return pre * u


def hermite_pieri_top(lam, r):
    """Coefficients with |J+| + |J-| = r, keyed by target partition."""
    lam = Partition(lam)
    out = {}
    for signs in _signed(range(1, len(lam) + r + 1), r):
        _add(out, _target(lam, signs), hermite_top_coefficient(lam, signs, r))
    return _clean(out)


def _moves(lam, mu):
    """Signed row moves taking lam to mu (one box per row), or None."""
    n = max(len(lam), len(mu))
    diff = {i: mu.part(i) - lam.part(i) for i in range(1, n + 1)}
    if any(abs(d) > 1 for d in diff.values()):
        return None
    return {i: d for i, d in diff.items() if d}


def hermite_structure(lam, r, oracle=None):
    """Structural checks on the oracle coefficients of e_r times the renormalised Hermite function.

    Returns a list of (name, passed) pairs: one-box-per-row support, parity
    of r - |J|, and polynomiality in p0 of the coefficient divided by
    2^-|J-| prod_{J-} ((p0-j+1)/alpha + lam_j - 1).
    """
    lam = Partition(lam)
    exp = oracle or pieri_oracle("hermite", lam, r)
    out = []
    for mu, c in exp.items():
        moves = _moves(lam, mu)
        out.append((f"{mu}: one box per row", moves is not None))
        if moves is None:
            continue
        out.append((f"{mu}: r - |J| even", (r - len(moves)) % 2 == 0))
        pre = Scalar(1)
        for j, e in moves.items():
            if e < 0:
                pre = pre * ((P0 - j + 1) / ALPHA + lam.part(j) - 1) / 2
        u = c / pre
        out.append((f"{mu}: polynomial in p0", u.degree("p0")[1] == 0))
    return out


# -- Laguerre ----------------------------------------------------------------------


def _laguerre_v(lam, signs, rows, r):
    """The V-hat factor of the Laguerre expansion for one signed index set."""
    n = len(lam) + r
    out = _mixed_pairs(lam, signs, 1) * _cross(lam, signs, rows)
    for j, e in signs.items():
        lj = lam.part(j)
        if e < 0:
            out = out * ((P0 - j + 1) / ALPHA + lj - 1) * ((P0 - j) / ALPHA + lj + A) * (n - j + ALPHA * lj)
        else:
            out = out / (n + 1 - j + ALPHA * lj)
    return out


def _laguerre_k(lam, signs, rows, r):
    """Factor contributed by the rows that are moved and moved back (the K-sum)."""
    m = len(lam) + r + 1
    out = _mixed_pairs(lam, signs, -1) * _cross(lam, signs, rows)
    for k, e in signs.items():
        lk = lam.part(k)
        if e > 0:
            out = out * ((P0 - k) / ALPHA + lk + A + 1) * (P0 - k + 1 + ALPHA * lk) / (m - k + ALPHA * lk)
        else:
            out = out * (m - k - 1 + ALPHA * lk) / ALPHA
    return out


LAGUERRE_FORMS = ("printed", "printed-sign-jplus", "corrected")


def laguerre_pieri(lam, r, form="corrected"):
    """Closed-form Laguerre Pieri coefficients.

    ``corrected`` gives e_r times the renormalised Laguerre function; the
    ``printed`` forms give (-1/2)^r e_r times it with the K-sum built from the
    same V-hat as the J part and the sign (-1)^(r-p), p read as |J| or |J+|.
    """
    if form not in LAGUERRE_FORMS:
        raise ValueError(f"unknown form {form!r}")
    lam = Partition(lam)
    rows = list(range(1, len(lam) + r + 1))
    out = {}
    for size in range(r + 1):
        for signs in _signed(rows, size):
            mu = _target(lam, signs)
            if mu is None:
                continue
            rest = [i for i in rows if i not in signs]
            v = _laguerre_v(lam, signs, rows, r)
            if form == "corrected":
                ksum = sum((_laguerre_k(lam, ks, rest, r) for ks in _signed(rest, r - size)), Scalar(0))
                _add(out, mu, v * ksum)
                continue
            ksum = sum((_laguerre_v(lam, ks, rest, r) for ks in _signed(rest, r - size)), Scalar(0))
            p = size if form == "printed" else sum(1 for e in signs.values() if e > 0)
            _add(out, mu, (-1) ** ((r - p) % 2) * v * ksum)
    return PieriExpansion("laguerre", r, lam, _clean(out))


def laguerre_pieri_e1(lam, form="printed"):
    """The r = 1 Laguerre coefficients.

    ``printed``: (-1/2) e_1 expansion with raising/lowering terms only.
    ``corrected``: e_1 expansion, same raising/lowering terms plus the diagonal
    term sum_k of the moved-and-back factors.
    """
    lam = Partition(lam)
    n = len(lam) + 1
    rows = range(1, n + 1)
    out = {}
    for j in rows:
        lj = lam.part(j)
        up = Scalar(1) / (n + 1 - j + ALPHA * lj)
        down = ((P0 - j + 1) / ALPHA + lj - 1) * ((P0 - j) / ALPHA + lj + A) * (n - j + ALPHA * lj)
        for i in rows:
            if i != j:
                up = up * (1 - 1 / _gap(lam, j, i))
                down = down * (1 + 1 / _gap(lam, j, i))
        _add(out, _target(lam, {j: 1}), up)
        _add(out, _target(lam, {j: -1}), down)
    if form == "corrected":
        diag = sum((_laguerre_k(lam, {k: e}, rows, 1) for k in rows for e in (1, -1)), Scalar(0))
        _add(out, lam, diag)
    elif form != "printed":
        raise ValueError(f"unknown form {form!r}")
    return PieriExpansion("laguerre", 1, lam, _clean(out))


# -- Jacobi ------------------------------------------------------------------------


def _vhat(z):
    return (z + 1 / ALPHA) / z


def _what(z, p, q):
    return (z - p / 2 - q) * (z + (1 - p) / 2) / (z * (z + Scalar(1) / 2))


def _jacobi_V(sign, rows, signs, z, p, q):
    out = Scalar(1)
    for j, e in signs.items():
        out = out * _what(e * z[j], p, q)
    for (j, e), (jp, f) in itertools.combinations(sorted(signs.items()), 2):
        s = e * z[j] + f * z[jp]
        out = out * _vhat(s) * (_vhat(s + 1) if sign > 0 else _vhat(-s - 1))
    for j, e in signs.items():
        for i in rows:
            if i not in signs:
                out = out * _vhat(e * z[j] + z[i]) * _vhat(e * z[j] - z[i])
    return out


def _jacobi_R(signs, z, m, p, q):
    out = Scalar(1)
    ia = 1 / ALPHA
    for j, e in signs.items():
        w = e * z[j]
        out = out * (w + z[m] + ia) * (w + p / 2 + q + ia) / ((w - p / 2 - q) * (w - z[m]))
    return out


def jacobi_pieri(lam, r, p=P, q=Q):
    """Closed-form coefficients of E_r J_lam/eps0 in the J_mu/eps0 basis."""
    lam = Partition(lam)
    p, q = Scalar.coerce(p), Scalar.coerce(q)
    n = len(lam) + r
    m = n + 1
    rows = list(range(1, n + 1))
    z = {i: (P0 - i) / ALPHA - p / 2 - q + lam.part(i) for i in range(1, m + 1)}
    out = {}
    for size in range(r + 1):
        for js in _signed(rows, size):
            mu = _target(lam, js)
            if mu is None:
                continue
            rest = [i for i in rows if i not in js]
            head = _jacobi_V(1, rows, js, z, p, q) * _jacobi_R(js, z, m, p, q)
            for ks in _signed(rest, r - size):
                c = _jacobi_V(-1, rest, ks, z, p, q) * _jacobi_R(ks, z, m, p, q)
                _add(out, mu, head * c * (-1) ** len(ks))
    return PieriExpansion("jacobi", r, lam, _clean(out))


def jacobi_normalisation_check(lam):
    """The closed form for eps0 agrees with the constant term used by the oracle."""
    return jacobi_eps0(lam) == family("jacobi", lam).value.constant_term()


# -- reports -----------------------------------------------------------------------


def compare(oracle, closed, form, note=""):
    keys = set(oracle.terms) | set(closed.terms)
    zero = Scalar(0)
    bad = {}
    for k in sorted(keys, key=partition_key):
        a, b = oracle.terms.get(k, zero), closed.terms.get(k, zero)
        if a != b:
            bad[k] = (a, b)
    return ClosedFormReport(oracle.kind, form, oracle.r, oracle.source, not bad, bad, note)


def _scaled(exp, c):
    return PieriExpansion(exp.kind, exp.r, exp.source, {k: v * c for k, v in exp.terms.items()})


def pieri_general(kind, lam, r):
    """Oracle expansion plus closed-form reports for one (kind, lam, r)."""
    lam = Partition(lam)
    oracle = pieri_oracle(kind, lam, r)
    reports = []
    if kind == "hermite":
        if r == 1:
            reports.append(compare(oracle, hermite_pieri_e1(lam), "e1"))
        top = hermite_pieri_top(lam, r)
        sub = PieriExpansion(kind, r, lam, {k: v for k, v in oracle.terms.items()
                                            if len(_moves(lam, k) or {}) == r})
        reports.append(compare(sub, PieriExpansion(kind, r, lam, top), "top",
                               "coefficients with |J+|+|J-| = r"))
        checks = hermite_structure(lam, r, oracle)
        bad = {name: ok for name, ok in checks if not ok}
        reports.append(ClosedFormReport(kind, "structure", r, lam, not bad, bad))
    elif kind == "laguerre":
        half = _scaled(oracle, Scalar(Fraction(-1, 2)) ** r)
        for form in ("printed", "printed-sign-jplus"):
            reports.append(compare(half, laguerre_pieri(lam, r, form), form))
        reports.append(compare(oracle, laguerre_pieri(lam, r, "corrected"), "corrected"))
        if r == 1:
            reports.append(compare(_scaled(oracle, Scalar(Fraction(-1, 2))), laguerre_pieri_e1(lam, "printed"),
                                   "e1-printed"))
            reports.append(compare(oracle, laguerre_pieri_e1(lam, "corrected"), "e1-corrected"))
    elif kind == "jacobi":
        reports.append(compare(oracle, jacobi_pieri(lam, r), "closed"))
    else:
        raise ValueError(f"no Pieri formulas for {kind!r}")
    return oracle, reports
