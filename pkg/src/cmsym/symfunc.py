"""Symmetric functions with parameter-valued coefficients.

A :class:`SymFunc` is a finite sum of basis elements indexed by partitions,
tagged with one basis.  The power sums are the working basis: operators,
products and homomorphisms act there, and other bases are reached through
per-degree transition tables that are built once and cached.  The Jack
basis is supplied by :mod:`cmsym.jack` through :func:`register_jack_provider`.
"""

from __future__ import annotations

import json
import re
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .partitions import Partition, parse_partition, partition_key, partitions_of
from .scalars import P0, Scalar, parse_scalar


class Basis(Enum):
    POWER = "p"
    MONOMIAL = "m"
    ELEMENTARY = "e"
    JACK = "P"

    @classmethod
    def parse(cls, text):
        aliases = {"p": cls.POWER, "power": cls.POWER, "powersum": cls.POWER,
                   "m": cls.MONOMIAL, "monomial": cls.MONOMIAL,
                   "e": cls.ELEMENTARY, "elementary": cls.ELEMENTARY,
                   "P": cls.JACK, "jack": cls.JACK, "J": cls.JACK}
        if isinstance(text, Basis):
            return text
        if text in aliases:
            return aliases[text]
        if text.lower() in aliases:
            return aliases[text.lower()]
        raise ValueError(f"unknown basis {text!r}")


class BasisMismatch(TypeError):
    pass


class NoJackProvider(RuntimeError):
    pass


class SymFunc:
    __slots__ = ("basis", "terms")

    def __init__(self, basis=Basis.POWER, terms=None):
        self.basis = Basis.parse(basis)
        self.terms = {}
        if terms:
            for lam, c in terms.items():
                c = Scalar.coerce(c)
                if not c.is_zero():
                    self.terms[Partition(lam)] = c

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, basis=Basis.POWER):
        return cls(basis)

    @classmethod
    def const(cls, c, basis=Basis.POWER):
        return cls(basis, {Partition(): c})

    @classmethod
    def basis_element(cls, basis, lam, coeff=1):
        return cls(basis, {Partition(lam): coeff})

    @classmethod
    def p(cls, *parts):
        return cls(Basis.POWER, {Partition(sorted(parts, reverse=True)): 1})

    # -- inspection -------------------------------------------------------

    def coefficient(self, lam):
        return self.terms.get(Partition(lam), Scalar(0))

    def is_zero(self):
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: partition_key(kv[0]))

    def degrees(self):
        return sorted({lam.size for lam in self.terms})

    def max_degree(self):
        return max((lam.size for lam in self.terms), default=-1)

    def homogeneous_part(self, d):
        return SymFunc(self.basis, {lam: c for lam, c in self.terms.items() if lam.size == d})

    def truncate(self, d):
        return SymFunc(self.basis, {lam: c for lam, c in self.terms.items() if lam.size <= d})

    def map_coefficients(self, fn):
        return SymFunc(self.basis, {lam: fn(c) for lam, c in self.terms.items()})

    def substitute(self, bindings):
        return self.map_coefficients(lambda c: c.substitute(bindings))

    def constant_term(self):
        return self.coefficient(())

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if self.basis is not other.basis:
            raise BasisMismatch(f"cannot combine {self.basis.name} with {other.basis.name}; convert first")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = SymFunc.const(other, self.basis)
        if not isinstance(other, SymFunc):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            v = out.get(lam)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(lam, None)
            else:
                out[lam] = v
        res = SymFunc(self.basis)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = SymFunc(self.basis)
        res.terms = {lam: -c for lam, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = SymFunc.const(other, self.basis)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Scalar.coerce(c)
        if c.is_zero():
            return SymFunc(self.basis)
        res = SymFunc(self.basis)
        res.terms = {lam: v * c for lam, v in self.terms.items()}
        return res

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if isinstance(other, SymFunc):
            return multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        return self.scale(Scalar.coerce(other).inverse())

    def __pow__(self, k):
        out = SymFunc.const(1, self.basis)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = SymFunc.const(other, self.basis)
        if not isinstance(other, SymFunc):
            return NotImplemented
        if other.basis is not self.basis:
            other = convert(other, self.basis)
        keys = set(self.terms) | set(other.terms)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    # -- text -------------------------------------------------------------

    def to_text(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c} * {self.basis.value}{lam}" for lam, c in self.items())

    __str__ = to_text

    def __repr__(self):
        return f"SymFunc({self.to_text()})"

    def to_latex(self):
        if not self.terms:
            return "0"
        sym = {"p": "p", "m": "m", "e": "e", "P": "P"}[self.basis.value]
        parts = []
        for lam, c in self.items():
            label = ",".join(map(str, lam)) or r"\emptyset"
            parts.append(rf"\left({c.latex()}\right) {sym}_{{{label}}}")
        return " + ".join(parts)

    def to_json(self):
        return {
            "basis": self.basis.value,
            "terms": [{"partition": list(lam), "num": _text(c, "n"), "den": _text(c, "d")}
                      for lam, c in self.items()],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for t in data["terms"]:
            terms[Partition(t["partition"])] = parse_scalar(t["num"]) / parse_scalar(t["den"])
        return cls(Basis.parse(data["basis"]), terms)


def _text(c, which):
    return str(c.num) if which == "n" else str(c.den)


_TERM = re.compile(r"^(?:(.*)\*\s*)?([pmeP])(\[[0-9,\s]*\])$", re.S)


def parse_symfunc(text):
    """Inverse of :meth:`SymFunc.to_text`."""
    text = text.strip()
    if text == "0":
        return SymFunc(Basis.POWER)
    pieces, depth, start = [], 0, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and text.startswith(" + ", i):
            pieces.append(text[start:i])
            start = i + 3
            i += 2
        i += 1
    pieces.append(text[start:])
    basis, terms = None, {}
    for piece in pieces:
        m = _TERM.match(piece.strip())
        if not m:
            raise ValueError(f"cannot parse term {piece!r}")
        coeff, tag, lam = m.groups()
        b = Basis.parse(tag)
        if basis is not None and b is not basis:
            raise BasisMismatch("mixed bases in one literal")
        basis = b
        lam = parse_partition(lam)
        terms[lam] = terms.get(lam, Scalar(0)) + (parse_scalar(coeff) if coeff else Scalar(1))
    return SymFunc(basis, terms)


# -- transition tables -----------------------------------------------------


def _p_times_m(r, nu):
    """p_r * m_nu in the monomial basis."""
    out = {}
    for u in sorted(set(nu) | {0}):
        parts = list(nu)
        if u == 0:
            parts.append(r)
        else:
            parts[parts.index(u)] = u + r
        kappa = Partition(sorted(parts, reverse=True))
        out[kappa] = out.get(kappa, 0) + kappa.count(u + r)
    return out


@lru_cache(maxsize=None)
def p_in_m(lam):
    """p_lam expanded in monomials (integer coefficients)."""
    lam = Partition(lam)
    if not lam:
        return {Partition(): Fraction(1)}
    rest = p_in_m(Partition(lam[1:]))
    out = {}
    for nu, c in rest.items():
        for kappa, k in _p_times_m(lam[0], nu).items():
            out[kappa] = out.get(kappa, 0) + c * k
    return {k: Fraction(v) for k, v in out.items() if v}


def _invert(rows, d):
    """Given b_k = sum_c rows[k][c] x_c over the partitions of d, return x_c in terms of b."""
    keys = list(partitions_of(d))
    n = len(keys)
    pos = {k: i for i, k in enumerate(keys)}
    mat = [[Fraction(0)] * n + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k, row in rows.items():
        for col, v in row.items():
            mat[pos[k]][pos[col]] = Fraction(v)
    for c in range(n):
        piv = next(r for r in range(c, n) if mat[r][c] != 0)
        mat[c], mat[piv] = mat[piv], mat[c]
        inv = 1 / mat[c][c]
        mat[c] = [x * inv for x in mat[c]]
        for r in range(n):
            if r != c and mat[r][c] != 0:
                f = mat[r][c]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
    return {k: {keys[j]: mat[i][n + j] for j in range(n) if mat[i][n + j] != 0}
            for i, k in enumerate(keys)}


@lru_cache(maxsize=None)
def _m_in_p_degree(d):
    return _invert({lam: p_in_m(lam) for lam in partitions_of(d)}, d)


def m_in_p(lam):
    lam = Partition(lam)
    return _m_in_p_degree(lam.size)[lam]


def _z(lam):
    out = 1
    for part, mult in Partition(lam).multiplicities().items():
        out *= part ** mult * factorial(mult)
    return out


@lru_cache(maxsize=None)
def _e_single(r):
    out = {}
    for mu in partitions_of(r):
        sign = -1 if (r - len(mu)) % 2 else 1
        out[mu] = Fraction(sign, _z(mu))
    return out


@lru_cache(maxsize=None)
def e_in_p(lam):
    lam = Partition(lam)
    out = {Partition(): Fraction(1)}
    for r in lam:
        nxt = {}
        for mu, c in out.items():
            for nu, k in _e_single(r).items():
                key = Partition(sorted(mu + nu, reverse=True))
                nxt[key] = nxt.get(key, 0) + c * k
        out = {k: v for k, v in nxt.items() if v}
    return out


@lru_cache(maxsize=None)
def _p_in_e_degree(d):
    return _invert({lam: e_in_p(lam) for lam in partitions_of(d)}, d)


def p_in_e(lam):
    lam = Partition(lam)
    return _p_in_e_degree(lam.size)[lam]


# -- Jack provider -----------------------------------------------------------

_JACK = {"provider": None}


def register_jack_provider(provider):
    """provider exposes jack_in_p(lam) and p_in_jack(mu) returning {partition: Scalar}."""
    _JACK["provider"] = provider


def jack_provider():
    prov = _JACK["provider"]
    if prov is None:
        raise NoJackProvider("no Jack basis provider is registered")
    return prov


def _expand(f, table, target):
    out = {}
    for lam, c in f.terms.items():
        for mu, k in table(lam).items():
            v = c * k
            out[mu] = out[mu] + v if mu in out else v
    return SymFunc(target, out)


def _to_p(f):
    b = f.basis
    if b is Basis.POWER:
        return f
    if b is Basis.MONOMIAL:
        return _expand(f, m_in_p, Basis.POWER)
    if b is Basis.ELEMENTARY:
        return _expand(f, e_in_p, Basis.POWER)
    return _expand(f, jack_provider().jack_in_p, Basis.POWER)


def _from_p(f, target):
    if target is Basis.POWER:
        return f
    if target is Basis.MONOMIAL:
        return _expand(f, p_in_m, Basis.MONOMIAL)
    if target is Basis.ELEMENTARY:
        return _expand(f, p_in_e, Basis.ELEMENTARY)
    return _expand(f, jack_provider().p_in_jack, Basis.JACK)


def convert(f, target):
    target = Basis.parse(target)
    if f.basis is target:
        return f
    return _from_p(_to_p(f), target)


def to_p(f):
    return convert(f, Basis.POWER)


def multiply(f, g):
    """Product of two symmetric functions, returned in the basis of ``f``."""
    if f.basis is not g.basis:
        raise BasisMismatch(f"cannot multiply {f.basis.name} by {g.basis.name}; convert first")
    basis = f.basis
    if basis in (Basis.POWER, Basis.ELEMENTARY):
        a, b = f, g
    else:
        a, b = to_p(f), to_p(g)
    out = {}
    for lam, c in a.terms.items():
        for mu, k in b.terms.items():
            key = Partition(sorted(lam + mu, reverse=True))
            v = c * k
            out[key] = out[key] + v if key in out else v
    res = SymFunc(a.basis, out)
    return res if res.basis is basis else convert(res, basis)


# -- homomorphisms -----------------------------------------------------------


def p_power(r):
    """p_r as a SymFunc, with p_0 the scalar p0 and negative indices zero."""
    if r < 0:
        return SymFunc(Basis.POWER)
    if r == 0:
        return SymFunc.const(P0)
    return SymFunc(Basis.POWER, {Partition([r]): 1})


def _product_of(images, lam):
    out = SymFunc.const(1)
    for r in lam:
        out = multiply(out, images(r))
    return out


def apply_hom(kind, gamma, f):
    """Apply sigma, omega, t (each with parameter gamma) or epsX (returns a Scalar).

    omega also sends the scalar p0 to -gamma*p0 inside the coefficients.
    """
    gamma = Scalar.coerce(gamma)
    f = to_p(f)
    if kind == "sigma":
        return SymFunc(Basis.POWER, {lam: c * gamma ** lam.size for lam, c in f.terms.items()})
    if kind == "omega":
        out = {}
        for lam, c in f.terms.items():
            sign = -1 if (lam.size - len(lam)) % 2 else 1
            out[lam] = c.substitute({"p0": -gamma * P0}) * sign * gamma ** len(lam)
        return SymFunc(Basis.POWER, out)
    if kind == "t":
        cache = {}

        def image(r):
            if r not in cache:
                acc = SymFunc.const(gamma ** r * P0)
                for m in range(1, r + 1):
                    acc = acc + p_power(m).scale(gamma ** (r - m) * comb(r, m))
                cache[r] = acc
            return cache[r]

        out = SymFunc(Basis.POWER)
        for lam, c in f.terms.items():
            out = out + _product_of(image, lam).scale(c)
        return out
    if kind == "epsX":
        total = Scalar(0)
        for lam, c in f.terms.items():
            total = total + c * gamma ** len(lam)
        return total
    raise ValueError(f"unknown homomorphism {kind!r}")


def epsX_jack_product(lam, X, alpha=None):
    """prod over cells of (X + alpha*coarm - coleg)/(alpha*arm + leg + 1)."""
    from .partitions import arm_leg
    from .scalars import ALPHA

    alpha = ALPHA if alpha is None else Scalar.coerce(alpha)
    X = Scalar.coerce(X)
    lam = Partition(lam)
    out = Scalar(1)
    for i, j in lam.cells():
        a, l, _, _ = arm_leg(lam, (i, j))
        out = out * (X + alpha * (j - 1) - (i - 1)) / (alpha * a + l + 1)
    return out


def power_sum_basis(d):
    """All p_mu with |mu| <= d, as single-term SymFuncs keyed by mu."""
    return {mu: SymFunc(Basis.POWER, {mu: 1}) for k in range(d + 1) for mu in partitions_of(k)}
