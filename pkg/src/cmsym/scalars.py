"""Exact rational functions in a fixed list of parameters.

Every coefficient in the library is a :class:`Scalar`: a quotient of two
integer polynomials in the generators ``alpha, p0, a, nu, p, q, s, X``
(lex order in that sequence).  Values are kept GCD-reduced with a
positive leading denominator coefficient, so the printed form is canonical.
The polynomial arithmetic itself is delegated to python-flint.
"""

from __future__ import annotations

import re
from fractions import Fraction

import flint

Rat = Fraction

GENERATORS = ("alpha", "p0", "a", "nu", "p", "q", "s", "X")
_INDEX = {name: i for i, name in enumerate(GENERATORS)}
_CTX = flint.fmpz_mpoly_ctx.get(GENERATORS, "lex")
_ZERO = _CTX.from_dict({})
_ONE = _CTX.constant(1)
_GENS = _CTX.gens()
_NVARS = len(GENERATORS)


class ScalarError(ArithmeticError):
    pass


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class DenominatorVanishes(ScalarError):
    def __init__(self, scalar, bindings):
        self.scalar = scalar
        self.bindings = bindings
        shown = ", ".join(f"{k}={v}" for k, v in sorted(bindings.items()))
        super().__init__(f"denominator of {scalar} vanishes under {shown}")


class DivergentLimit(ScalarError):
    def __init__(self, scalar, var):
        self.scalar = scalar
        self.var = var
        super().__init__(f"{scalar} diverges as {var} -> infinity")


class ParseError(ValueError):
    pass


class MPoly:
    """Sparse polynomial with integer coefficients over the generator list.

    Thin read-only view on a flint polynomial; ``terms`` maps exponent
    vectors to :class:`fractions.Fraction` coefficients.
    """

    __slots__ = ("raw",)

    def __init__(self, raw=None):
        self.raw = _ZERO if raw is None else raw

    @classmethod
    def from_terms(cls, terms):
        data = {}
        for exps, c in terms.items():
            c = Fraction(c)
            if c.denominator != 1:
                raise ValueError("MPoly coefficients must be integers; use Scalar for quotients")
            if c:
                data[tuple(exps)] = int(c)
        return cls(_CTX.from_dict(data))

    @property
    def terms(self):
        return {tuple(e): Fraction(int(c)) for e, c in self.raw.terms()}

    def degree(self, var):
        return self.raw.degrees()[_INDEX[var]]

    def total_degree(self):
        return self.raw.total_degree() if not self.raw.is_zero() else -1

    def is_zero(self):
        return self.raw.is_zero()

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.raw == other.raw
        return NotImplemented

    def __hash__(self):
        return hash(str(self.raw))

    def __str__(self):
        return str(self.raw)

    __repr__ = __str__


def _reduce(n, d):
    if d.is_zero():
        raise DivisionByZero("division by zero")
    if n.is_zero():
        return _ZERO, _ONE
    if d == _ONE:
        return n, d
    g = n.gcd(d)
    if g != _ONE:
        n = n / g
        d = d / g
    if d.leading_coefficient() < 0:
        n, d = -n, -d
    return n, d


class Scalar:
    """Element of Q(alpha, p0, a, nu, p, q, s, X)."""

    __slots__ = ("n", "d")

    def __init__(self, value=0, _den=None):
        if _den is not None:
            self.n, self.d = value, _den
            return
        if isinstance(value, Scalar):
            self.n, self.d = value.n, value.d
        elif isinstance(value, bool):
            self.n, self.d = _CTX.constant(int(value)), _ONE
        elif isinstance(value, int):
            self.n, self.d = _CTX.constant(value), _ONE
        elif isinstance(value, Fraction):
            self.n, self.d = _CTX.constant(value.numerator), _CTX.constant(value.denominator)
        elif isinstance(value, str):
            s = parse_scalar(value)
            self.n, self.d = s.n, s.d
        elif isinstance(value, MPoly):
            self.n, self.d = value.raw, _ONE
        else:
            raise TypeError(f"cannot make a Scalar from {type(value).__name__}")

    @classmethod
    def _make(cls, n, d):
        n, d = _reduce(n, d)
        return cls(n, d)

    @classmethod
    def gen(cls, name):
        return cls(_GENS[_INDEX[name]], _ONE)

    @staticmethod
    def coerce(value):
        return value if isinstance(value, Scalar) else Scalar(value)

    # -- inspection -------------------------------------------------------

    @property
    def num(self):
        return MPoly(self.n)

    @property
    def den(self):
        return MPoly(self.d)

    def is_zero(self):
        return self.n.is_zero()

    def is_polynomial(self):
        return self.d == _ONE

    def is_constant(self):
        return self.n.total_degree() <= 0 and self.d.total_degree() <= 0

    def to_fraction(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        if self.n.is_zero():
            return Fraction(0)
        return Fraction(int(self.n.leading_coefficient()), int(self.d.leading_coefficient()))

    def variables(self):
        dn, dd = self.n.degrees(), self.d.degrees()
        return tuple(GENERATORS[i] for i in range(_NVARS) if dn[i] or dd[i])

    def degree(self, var):
        """(numerator degree, denominator degree) in ``var``."""
        i = _INDEX[var]
        return self.n.degrees()[i], self.d.degrees()[i]

    def depends_on(self, var):
        return any(self.degree(var))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        if other.n.is_zero():
            return self
        if self.n.is_zero():
            return other
        if self.d == other.d:
            return Scalar._make(self.n + other.n, self.d)
        if self.d == _ONE:
            return Scalar(self.n * other.d + other.n, other.d)
        if other.d == _ONE:
            return Scalar(self.n + other.n * self.d, self.d)
        g = self.d.gcd(other.d)
        if g == _ONE:
            return Scalar._make(self.n * other.d + other.n * self.d, self.d * other.d)
        b1 = self.d / g
        d1 = other.d / g
        return Scalar._make(self.n * d1 + other.n * b1, self.d * d1)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.n, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                if other == 0:
                    return Scalar()
                if self.d == _ONE:
                    return Scalar(self.n * other, _ONE)
                other = Scalar(other)
            elif isinstance(other, Fraction):
                other = Scalar(other)
            else:
                return NotImplemented
        if self.n.is_zero() or other.n.is_zero():
            return Scalar()
        if self.d == _ONE and other.d == _ONE:
            return Scalar(self.n * other.n, _ONE)
        a, b, c, d = self.n, self.d, other.n, other.d
        g1 = a.gcd(d)
        if g1 != _ONE:
            a = a / g1
            d = d / g1
        g2 = c.gcd(b)
        if g2 != _ONE:
            c = c / g2
            b = b / g2
        n, den = a * c, b * d
        if den.leading_coefficient() < 0:
            n, den = -n, -den
        return Scalar(n, den)

    __rmul__ = __mul__

    def inverse(self):
        if self.n.is_zero():
            raise DivisionByZero(f"cannot invert zero")
        n, d = self.d, self.n
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return Scalar(n, d)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return Scalar(1)
        return Scalar(self.n ** k, self.d ** k)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        return self.n * other.d == other.n * self.d

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __reduce__(self):
        # flint polynomials do not pickle; the text form round-trips exactly
        return (parse_scalar, (str(self),))

    def __hash__(self):
        return hash((str(self.n), str(self.d)))

    def __bool__(self):
        return not self.n.is_zero()

    # -- substitution and limits -----------------------------------------

    def substitute(self, bindings):
        """Simultaneous substitution ``{generator name: value}``."""
        if not bindings:
            return self
        idx = {}
        for name, v in bindings.items():
            if name not in _INDEX:
                raise KeyError(f"unknown generator {name!r}")
            idx[_INDEX[name]] = Scalar.coerce(v)
        dn, dd = self.n.degrees(), self.d.degrees()
        idx = {i: v for i, v in idx.items() if dn[i] or dd[i]}
        if not idx:
            return self
        if all(v.d == _ONE for v in idx.values()):
            images = [idx[i].n if i in idx else _GENS[i] for i in range(_NVARS)]
            n = self.n.compose(*images)
            d = self.d.compose(*images)
        else:
            degs = {i: max(dn[i], dd[i]) for i in idx}
            n = _homogenized(self.n, idx, degs)
            d = _homogenized(self.d, idx, degs)
        if d.is_zero():
            raise DenominatorVanishes(self, {k: str(v) for k, v in bindings.items()})
        return Scalar._make(n, d)

    def evaluate(self, values):
        """Substitute numbers for every generator present; returns a Fraction."""
        out = self.substitute(values)
        return out.to_fraction()

    def limit_at_infinity(self, var):
        i = _INDEX[var]
        dn, dd = self.n.degrees()[i], self.d.degrees()[i]
        if self.n.is_zero() or dn < dd:
            return Scalar()
        if dn > dd:
            raise DivergentLimit(self, var)
        return Scalar._make(_leading_in(self.n, i, dn), _leading_in(self.d, i, dd))

    def derivative(self, var):
        n, d = self.n, self.d
        num = n.derivative(var) * d - n * d.derivative(var)
        return Scalar._make(num, d * d)

    # -- text -------------------------------------------------------------

    def __str__(self):
        if self.d == _ONE:
            return _wrap(str(self.n))
        den = str(self.d)
        if not re.fullmatch(r"\w+", den):
            den = f"({den})"
        return f"{_wrap(str(self.n))}/{den}"

    def __repr__(self):
        return f"Scalar('{self}')"

    def latex(self):
        if self.d == _ONE:
            return _latex_poly(self.n)
        return r"\frac{%s}{%s}" % (_latex_poly(self.n), _latex_poly(self.d))


def _wrap(text):
    if re.fullmatch(r"-?[\w^*]+", text):
        return text
    return f"({text})"


def _homogenized(poly, idx, degs):
    """Clear the binding denominators: sum c * prod P^e * Q^(deg-e)."""
    powers = {}

    def pw(i, which, k):
        key = (i, which, k)
        if key not in powers:
            base = idx[i].n if which == 0 else idx[i].d
            powers[key] = base ** k
        return powers[key]

    out = _ZERO
    for exps, c in poly.terms():
        rest = tuple(0 if i in idx else e for i, e in enumerate(exps))
        term = _CTX.from_dict({rest: c})
        for i in idx:
            e = exps[i]
            if e:
                term = term * pw(i, 0, e)
            if degs[i] - e:
                term = term * pw(i, 1, degs[i] - e)
        out = out + term
    return out


def _leading_in(poly, i, deg):
    data = {}
    for exps, c in poly.terms():
        if exps[i] == deg:
            e = list(exps)
            e[i] = 0
            data[tuple(e)] = c
    return _CTX.from_dict(data)


_LATEX_NAMES = {"alpha": r"\alpha", "p0": "p_0", "nu": r"\nu"}


def _latex_poly(poly):
    text = str(poly)
    text = re.sub(r"\^(\d+)", r"^{\1}", text)
    for k, v in _LATEX_NAMES.items():
        text = re.sub(rf"\b{k}\b", v.replace("\\", "\\\\"), text)
    return text.replace("*", " ")


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokens(text):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif op is not None and not op.isspace():
            out.append(("op", op))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if (kind, val) in (("op", "-"), ("op", "+")):
            self.take()
            sign = -1 if val == "-" else 1
        out = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self):
        out = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            f = self.factor()
            out = out * f if op == "*" else out / f
        return out

    def factor(self):
        base = self.atom()
        if self.peek() in (("op", "^"),):
            self.take()
            kind, val = self.peek()
            neg = False
            if (kind, val) == ("op", "-"):
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            base = base ** (-val if neg else val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Scalar(val)
        if kind == "name":
            if val not in _INDEX:
                raise ParseError(f"unknown generator {val!r}")
            return Scalar.gen(val)
        if (kind, val) == ("op", "("):
            out = self.expr()
            self.expect(")")
            return out
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_scalar(text):
    p = _Parser(text)
    if not p.toks:
        raise ParseError("empty scalar")
    out = p.expr()
    if p.i != len(p.toks):
        raise ParseError(f"trailing input in {text!r}")
    return out


ALPHA = Scalar.gen("alpha")
P0 = Scalar.gen("p0")
A = Scalar.gen("a")
NU = Scalar.gen("nu")
P = Scalar.gen("p")
Q = Scalar.gen("q")
S = Scalar.gen("s")
X = Scalar.gen("X")
ZERO = Scalar(0)
ONE = Scalar(1)


def gen(name):
    return Scalar.gen(name)


def scalar_eq(x, y):
    return Scalar.coerce(x) == Scalar.coerce(y)


def substitute(x, bindings):
    return Scalar.coerce(x).substitute(bindings)


def limit_at_infinity(x, var):
    return Scalar.coerce(x).limit_at_infinity(var)
