"""Independent reference computations in sympy.

Everything here works with explicit polynomials in finitely many variables
and the finite-variable operators, so it shares no code path with the
power-sum machinery under test.
"""

from functools import lru_cache
from itertools import permutations

import sympy as sp

from cmsym.symfunc import to_p

alpha, p0, a, nu, p, q, s, X = sp.symbols("alpha p0 a nu p q s X")
NAMES = {"alpha": alpha, "p0": p0, "a": a, "nu": nu, "p": p, "q": q, "s": s, "X": X}


def xs(n):
    return sp.symbols(f"x1:{n + 1}")


def to_sympy(scalar):
    return sp.sympify(str(scalar).replace("^", "**"), locals=NAMES)


def same(u, v):
    num, _ = sp.fraction(sp.together(sp.sympify(u) - v))
    return sp.expand(num) == 0


def power_sum(r, vars_):
    return sum(v ** r for v in vars_) if r else sp.Integer(len(vars_))


def restrict(f, n, **subs):
    """Image of a SymFunc in n variables (p0 = n), as a sympy expression."""
    vars_ = xs(n)
    out = sp.Integer(0)
    for mu, c in to_p(f).terms.items():
        term = to_sympy(c).subs(p0, n)
        for r in mu:
            term *= power_sum(r, vars_)
        out += term
    return sp.expand(out.subs(subs))


def monomial(lam, n):
    vars_ = xs(n)
    if len(lam) > n:
        return sp.Integer(0)
    exps = tuple(lam) + (0,) * (n - len(lam))
    return sp.Add(*[sp.Mul(*[v ** e for v, e in zip(vars_, perm)]) for perm in set(permutations(exps))])


def finite_E(f, l, n):
    return sp.expand(sum(v ** l * sp.diff(f, v) for v in xs(n)))


def finite_D(f, k, n, al=alpha):
    vars_ = xs(n)
    out = sum(v ** k * sp.diff(f, v, 2) for v in vars_)
    for i, vi in enumerate(vars_):
        for j, vj in enumerate(vars_):
            if i != j:
                out += 2 / al * vi ** k / (vi - vj) * sp.diff(f, vi)
    return sp.expand(sp.cancel(sp.together(out)))


def _partitions(n):
    if n == 0:
        return [()]
    out = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for k in range(min(rest, cap), 0, -1):
            rec(rest - k, k, acc + [k])

    rec(n, n, [])
    return out


def _dominated(lam, mu):
    """mu <= lam in dominance order."""
    s1 = s2 = 0
    for i in range(max(len(lam), len(mu))):
        s1 += lam[i] if i < len(lam) else 0
        s2 += mu[i] if i < len(mu) else 0
        if s2 > s1:
            return False
    return True


@lru_cache(maxsize=None)
def jack_oracle(lam, n):
    """P_lam(x_1..x_n) by solving the finite Jack eigenproblem in the monomial basis."""
    lam = tuple(lam)
    lower = [mu for mu in _partitions(sum(lam)) if mu != lam and _dominated(lam, mu) and len(mu) <= n]
    cs = sp.symbols(f"c0:{len(lower)}")
    f = monomial(lam, n) + sum(c * monomial(mu, n) for c, mu in zip(cs, lower))
    ev = sum(part * (part - 1 - 2 * i / alpha) for i, part in enumerate(lam))
    op_f = finite_D(f, 2, n) - 2 / alpha * (n - 1) * finite_E(f, 1, n)
    resid = sp.expand(op_f - ev * f)
    if not cs:
        return f
    (sol,) = sp.linsolve(sp.Poly(resid, *xs(n)).coeffs(), cs)
    return sp.expand(f.subs(dict(zip(cs, sol))))


def hermite_1var(k):
    x = xs(1)[0]
    return sp.expand(sp.hermite(k, x) / 2 ** k)


def laguerre_1var(k, par=a):
    x = xs(1)[0]
    return sp.expand((-1) ** k * sp.factorial(k) * sp.assoc_laguerre(k, par, x))


def jacobi_1var(k, pp=p, qq=q):
    """Monic polynomial eigenfunction of (x^2+2x)f'' - ((p+2q-1)x + 2p+2q-1) f'."""
    x = xs(1)[0]
    cs = sp.symbols(f"c0:{k}")
    f = x ** k + sum(c * x ** j for j, c in enumerate(cs))
    ev = k * (k - 1) - (pp + 2 * qq - 1) * k
    lhs = (x ** 2 + 2 * x) * sp.diff(f, x, 2) - ((pp + 2 * qq - 1) * x + 2 * pp + 2 * qq - 1) * sp.diff(f, x)
    resid = sp.expand(lhs - ev * f)
    if not cs:
        return f
    (sol,) = sp.linsolve(sp.Poly(resid, x).coeffs(), cs)
    return sp.expand(f.subs(dict(zip(cs, sol))))
