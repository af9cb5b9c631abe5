"""Differential operators on symmetric functions in the power-sum basis.

The primitives are ``PD[r]`` (derivative in p_r), ``E[l]``, ``D[k]``,
multiplication by a fixed function and Jack-diagonal operators built from
shifted power sums.  Expressions are trees of sums, compositions and
scalar multiples; every node knows its degree-shift interval.

    E[l] = sum_r r p_{r+l-1} d/dp_r
    D[k] = sum_{r,q} r q p_{r+q+k-2} d2/dp_r dp_q
           + sum_{r>=2} r (r-1) p_{r+k-2} d/dp_r
           + (1/alpha) sum_r r sum_{m=0}^{r+k-2} (p_{r+k-2-m} p_m - p_{r+k-2}) d/dp_r

Any p_0 produced becomes the scalar p0; negative indices give zero.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import factorial

from .partitions import (Partition, partition_key, partitions_of, shifted_power_sum_eval,
                         subpartitions)
from .scalars import ALPHA, P0, Scalar, parse_scalar
from .symfunc import Basis, SymFunc, convert, multiply, parse_symfunc, to_p


class DegenerateEigenvalue(ArithmeticError):
    pass


class OperatorParseError(ValueError):
    pass


_INV_ALPHA = 1 / ALPHA


def _mono(indices, coeff, rest, out):
    """Add coeff * p_rest * prod p_i to ``out``, with p_0 -> p0."""
    parts = list(rest)
    for i in indices:
        if i < 0:
            return
        if i == 0:
            coeff = coeff * P0
        else:
            parts.append(i)
    key = Partition(sorted(parts, reverse=True))
    out[key] = out[key] + coeff if key in out else coeff


def _without(lam, *removed):
    parts = list(lam)
    for r in removed:
        parts.remove(r)
    return parts


@lru_cache(maxsize=None)
def _pd_on(r, lam):
    m = lam.count(r)
    if not m:
        return {}
    return {Partition(_without(lam, r)): Scalar(m)}


@lru_cache(maxsize=None)
def _E_on(l, lam):
    out = {}
    for r, m in Partition(lam).multiplicities().items():
        _mono([r + l - 1], Scalar(r * m), _without(lam, r), out)
    return {k: v for k, v in out.items() if not v.is_zero()}


@lru_cache(maxsize=None)
def _D_on(k, lam):
    lam = Partition(lam)
    out = {}
    mult = lam.multiplicities()
    parts = sorted(mult)
    for x, r in enumerate(parts):
        for q in parts[x:]:
            if r == q:
                if mult[r] < 2:
                    continue
                c = r * r * mult[r] * (mult[r] - 1)
                rest = _without(lam, r, r)
            else:
                c = 2 * r * q * mult[r] * mult[q]
                rest = _without(lam, r, q)
            _mono([r + q + k - 2], Scalar(c), rest, out)
    for r in parts:
        rest = _without(lam, r)
        m = mult[r]
        if r >= 2:
            _mono([r + k - 2], Scalar(r * (r - 1) * m), rest, out)
        s = r + k - 2
        if s >= 0:
            c = _INV_ALPHA * (r * m)
            for j in range(s + 1):
                _mono([s - j, j], c, rest, out)
            _mono([s], -c * (s + 1), rest, out)
    return {key: v for key, v in out.items() if not v.is_zero()}


def _apply_table(table, f):
    f = to_p(f)
    out = {}
    for lam, c in f.terms.items():
        for mu, k in table(lam).items():
            v = c * k
            out[mu] = out[mu] + v if mu in out else v
    return SymFunc(Basis.POWER, out)


def pd_apply(r, f):
    return _apply_table(lambda lam: _pd_on(r, lam), f)


def E_apply(l, f):
    return _apply_table(lambda lam: _E_on(l, lam), f)


def D_apply(k, f):
    return _apply_table(lambda lam: _D_on(k, lam), f)


# -- shifted symmetric functions ------------------------------------------------


class ShiftedSymSpec:
    """Polynomial in the shifted power sums pi_1, pi_2, ... with Scalar coefficients.

    Keys are exponent tuples (e_1, e_2, ...) for prod pi_r^{e_r}.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            while e and e[-1] == 0:
                e = e[:-1]
            c = Scalar.coerce(c)
            if not c.is_zero():
                self.terms[e] = self.terms.get(e, Scalar(0)) + c

    @classmethod
    def pi(cls, r):
        return cls({(0,) * (r - 1) + (1,): 1})

    @classmethod
    def const(cls, c):
        return cls({(): c})

    def degree(self):
        return max((sum((i + 1) * e for i, e in enumerate(k)) for k in self.terms), default=0)

    def evaluate(self, lam):
        lam = Partition(lam)
        total = Scalar(0)
        cache = {}
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    r = i + 1
                    if r not in cache:
                        cache[r] = shifted_power_sum_eval(r, lam)
                    term = term * cache[r] ** k
            total = total + term
        return total

    def __add__(self, other):
        other = other if isinstance(other, ShiftedSymSpec) else ShiftedSymSpec.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Scalar(0)) + c
        return ShiftedSymSpec(out)

    __radd__ = __add__

    def __neg__(self):
        return ShiftedSymSpec({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, ShiftedSymSpec) else ShiftedSymSpec.const(-Scalar.coerce(other)))

    def __mul__(self, other):
        if not isinstance(other, ShiftedSymSpec):
            c = Scalar.coerce(other)
            return ShiftedSymSpec({e: v * c for e, v in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                n = max(len(e1), len(e2))
                e = tuple((e1[i] if i < len(e1) else 0) + (e2[i] if i < len(e2) else 0) for i in range(n))
                out[e] = out.get(e, Scalar(0)) + c1 * c2
        return ShiftedSymSpec(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = ShiftedSymSpec.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mon = "*".join(f"pi{i + 1}^{k}" if k > 1 else f"pi{i + 1}" for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mon}" if mon else str(c))
        return " + ".join(parts)


# -- operator expressions --------------------------------------------------------


class OpExpr:
    """Base class for operator expressions acting on power-sum SymFuncs."""

    def apply(self, f):
        raise NotImplementedError

    def shift(self):
        """(lowest, highest) change of degree produced by the operator."""
        raise NotImplementedError

    def __call__(self, f):
        return self.apply(f)

    def __add__(self, other):
        if not isinstance(other, OpExpr):
            return NotImplemented
        return Sum([self, other])

    def __sub__(self, other):
        if not isinstance(other, OpExpr):
            return NotImplemented
        return Sum([self, Scale(-1, other)])

    def __neg__(self):
        return Scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, OpExpr):
            return Compose([self, other])
        return Scale(other, self)

    def __rmul__(self, other):
        return Scale(other, self)


class PD(OpExpr):
    def __init__(self, r):
        self.r = r

    def apply(self, f):
        return pd_apply(self.r, f)

    def shift(self):
        return (-self.r, -self.r)

    def __repr__(self):
        return f"PD[{self.r}]"


class E(OpExpr):
    def __init__(self, l):
        self.l = l

    def apply(self, f):
        return E_apply(self.l, f)

    def shift(self):
        return (self.l - 1, self.l - 1)

    def __repr__(self):
        return f"E[{self.l}]"


class D(OpExpr):
    def __init__(self, k):
        self.k = k

    def apply(self, f):
        return D_apply(self.k, f)

    def shift(self):
        return (self.k - 2, self.k - 2)

    def __repr__(self):
        return f"D[{self.k}]"


class Mul(OpExpr):
    def __init__(self, g):
        self.g = to_p(g)

    def apply(self, f):
        return multiply(to_p(f), self.g)

    def shift(self):
        degs = self.g.degrees() or [0]
        return (min(degs), max(degs))

    def __repr__(self):
        return f"mul({self.g})"


class JackDiag(OpExpr):
    """Acts on P_lam by the shifted symmetric function evaluated at lam."""

    def __init__(self, spec):
        self.spec = spec

    def apply(self, f):
        fj = convert(f, Basis.JACK)
        out = SymFunc(Basis.JACK, {lam: c * self.spec.evaluate(lam) for lam, c in fj.terms.items()})
        return to_p(out)

    def shift(self):
        return (0, 0)

    def __repr__(self):
        return f"J[{self.spec}]"


class Scale(OpExpr):
    def __init__(self, c, op):
        self.c = Scalar.coerce(c)
        self.op = op

    def apply(self, f):
        return self.op.apply(f).scale(self.c)

    def shift(self):
        return self.op.shift()

    def __repr__(self):
        return f"({self.c})*{self.op!r}"


class Sum(OpExpr):
    def __init__(self, ops):
        flat = []
        for op in ops:
            flat.extend(op.ops if isinstance(op, Sum) else [op])
        self.ops = flat

    def apply(self, f):
        out = SymFunc(Basis.POWER)
        for op in self.ops:
            out = out + op.apply(f)
        return out

    def shift(self):
        if not self.ops:
            return (0, 0)
        lo = min(op.shift()[0] for op in self.ops)
        hi = max(op.shift()[1] for op in self.ops)
        return (lo, hi)

    def __repr__(self):
        return " + ".join(map(repr, self.ops)) if self.ops else "0"


class Compose(OpExpr):
    """ops[0] o ops[1] o ... (the last one acts first)."""

    def __init__(self, ops):
        flat = []
        for op in ops:
            flat.extend(op.ops if isinstance(op, Compose) else [op])
        self.ops = flat

    def apply(self, f):
        out = to_p(f)
        for op in reversed(self.ops):
            out = op.apply(out)
        return out

    def shift(self):
        lo = sum(op.shift()[0] for op in self.ops)
        hi = sum(op.shift()[1] for op in self.ops)
        return (lo, hi)

    def __repr__(self):
        return "(" + " * ".join(map(repr, self.ops)) + ")"


class Identity(OpExpr):
    def apply(self, f):
        return to_p(f)

    def shift(self):
        return (0, 0)

    def __repr__(self):
        return "1"


def op_apply(op, f):
    return op.apply(f)


def commutator(a, b):
    return a * b - b * a


def commutator_eval(a, b, d):
    """[a, b] applied to every p_mu with |mu| <= d, as {mu: SymFunc}."""
    out = {}
    for n in range(d + 1):
        for mu in partitions_of(n):
            pm = SymFunc(Basis.POWER, {mu: 1})
            out[mu] = a.apply(b.apply(pm)) - b.apply(a.apply(pm))
    return out


def operator_matrix(op, d):
    """op applied to every p_mu with |mu| <= d."""
    out = {}
    for n in range(d + 1):
        for mu in partitions_of(n):
            out[mu] = op.apply(SymFunc(Basis.POWER, {mu: 1}))
    return out


def exp_truncated(op, order, f):
    """sum_{k <= order} op^k f / k!."""
    term = to_p(f)
    out = term
    for k in range(1, order + 1):
        term = op.apply(term)
        if term.is_zero():
            break
        out = out + term.scale(Scalar(1) / factorial(k))
    return out


# -- triangular eigenfunctions ----------------------------------------------------


def _jack_p(lam):
    return to_p(SymFunc(Basis.JACK, {Partition(lam): 1}))


def triangular_eigenfunction(op, eig, lam):
    """Eigenfunction P_lam + sum_{mu < lam} u_mu P_mu of ``op`` (Jack basis).

    ``eig`` maps a partition to its eigenvalue.  Uses
    (e_lam - e_mu) u_mu = sum_{mu < nu <= lam} u_nu c_{nu mu}
    with op P_nu = sum_mu c_{nu mu} P_mu, for mu running down the proper
    subdiagrams of lam.
    """
    lam = Partition(lam)
    subs = subpartitions(lam)
    actions = {nu: convert(op.apply(_jack_p(nu)), Basis.JACK) for nu in subs}
    e_lam = eig(lam)
    u = {lam: Scalar(1)}
    for mu in reversed(subs[:-1]):
        rhs = Scalar(0)
        for nu, c_nu in u.items():
            c = actions[nu].terms.get(mu)
            if c is not None:
                rhs = rhs + c_nu * c
        gap = e_lam - eig(mu)
        if gap.is_zero():
            raise DegenerateEigenvalue(f"eigenvalues of {lam} and {mu} coincide")
        if not rhs.is_zero():
            u[mu] = rhs / gap
    return SymFunc(Basis.JACK, u)


def product_eigenfunction(op, eig, lam):
    """prod over proper subdiagrams mu of (op - e_mu)/(e_lam - e_mu), applied to P_lam."""
    lam = Partition(lam)
    e_lam = eig(lam)
    out = _jack_p(lam)
    for mu in subpartitions(lam)[:-1]:
        e_mu = eig(mu)
        gap = e_lam - e_mu
        if gap.is_zero():
            raise DegenerateEigenvalue(f"eigenvalues of {lam} and {mu} coincide")
        out = (op.apply(out) - out.scale(e_mu)).scale(gap.inverse())
    return out


def ad_power(a, b, j):
    out = b
    for _ in range(j):
        out = commutator(a, out)
    return out


def bch_eigenop(kind, spec, nu=None, a=None):
    """Operator whose eigenfunctions are the Hermite or Laguerre functions, built from J[spec].

    hermite:  sum_j (-1)^j / (4^j j!) ad_{D[0]}^j J[spec]
    laguerre: sum_j (-1)^j / j! ad_{D[1] + (a+1) E[0]}^j J[spec]
    The series stops at the degree of ``spec``.
    """
    base = JackDiag(spec)
    top = spec.degree()
    if kind == "hermite":
        gen = D(0)
        weight = Scalar(-1) / 4
    elif kind == "laguerre":
        a = Scalar.gen("a") if a is None else Scalar.coerce(a)
        gen = D(1) + (a + 1) * E(0)
        weight = Scalar(-1)
    else:
        raise ValueError(f"no BCH construction for {kind!r}")
    terms = []
    for j in range(top + 1):
        terms.append(Scale(weight ** j / factorial(j), ad_power(gen, base, j)))
    return Sum(terms)


# -- text literals ---------------------------------------------------------------

_OP_TOKEN = re.compile(r"\s*(PD\[\d+\]|E\[\d+\]|D\[\d+\]|mul\(|pi\d+|[()+\-*/^]|\d+|[A-Za-z_]\w*)")


def parse_operator(text):
    """Read literals like ``D[2] - (2/alpha)*(p0-1)*E[1]`` or ``mul(1 * p[2,1])``."""
    parser = _OpParser(text)
    out = parser.expr()
    if parser.rest().strip():
        raise OperatorParseError(f"trailing input {parser.rest()!r}")
    return out


class _OpParser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def rest(self):
        return self.text[self.pos:]

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s):
        self.skip()
        return self.text.startswith(s, self.pos)

    def expr(self):
        terms = [self.term()]
        while True:
            if self.peek("+"):
                self.pos += 1
                terms.append(self.term())
            elif self.peek("-"):
                self.pos += 1
                terms.append(Scale(-1, self.term()))
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(terms)

    def term(self):
        scalar = Scalar(1)
        ops = []
        while True:
            item = self.factor()
            if isinstance(item, OpExpr):
                ops.append(item)
            else:
                scalar = scalar * item
            if self.peek("*"):
                self.pos += 1
                continue
            break
        if not ops:
            raise OperatorParseError(f"no operator in term near {self.rest()!r}")
        op = ops[0] if len(ops) == 1 else Compose(ops)
        return op if scalar == 1 else Scale(scalar, op)

    def factor(self):
        self.skip()
        m = re.match(r"(PD|E|D)\[(\d+)\]", self.text[self.pos:])
        if m:
            self.pos += m.end()
            kind, n = m.group(1), int(m.group(2))
            return {"PD": PD, "E": E, "D": D}[kind](n)
        if self.peek("mul("):
            self.pos += 4
            body = self._balanced()
            return Mul(parse_symfunc(body))
        if self.peek("("):
            start = self.pos
            self.pos += 1
            body = self._balanced()
            if re.search(r"(PD|E|D)\[|mul\(", body):
                return parse_operator(body)
            return parse_scalar(body)
        m = re.match(r"-?\d+(?:/\d+)?|[A-Za-z_]\w*", self.text[self.pos:])
        if m:
            self.pos += m.end()
            return parse_scalar(m.group(0))
        raise OperatorParseError(f"cannot read operator near {self.rest()!r}")

    def _balanced(self):
        depth = 1
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    body = self.text[start:self.pos]
                    self.pos += 1
                    return body
            self.pos += 1
        raise OperatorParseError("unbalanced parentheses")
