"""Integer partitions and the products over their Young diagrams.

Cells are 1-based ``(row, column)`` pairs.  Arm, leg, co-arm and co-leg of
a cell ``(i, j)`` are ``lambda_i - j``, ``lambda'_j - i``, ``j - 1`` and
``i - 1``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations

from .scalars import ALPHA, P0, Scalar


class NotAPartition(ValueError):
    pass


class CellOutsideDiagram(ValueError):
    pass


class Partition(tuple):
    """Weakly decreasing tuple of positive integers (trailing zeros dropped)."""

    def __new__(cls, parts=()):
        if isinstance(parts, Partition):
            return parts
        parts = tuple(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise NotAPartition(f"{parts} is not weakly decreasing")
        if parts and parts[-1] < 0:
            raise NotAPartition(f"{parts} has negative parts")
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    def length(self):
        return len(self)

    def part(self, i):
        """lambda_i with 1-based i; zero past the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self):
        return conjugate(self)

    def cells(self):
        return [(i + 1, j + 1) for i, row in enumerate(self) for j in range(row)]

    def multiplicities(self):
        out = {}
        for x in self:
            out[x] = out.get(x, 0) + 1
        return out

    def contains(self, other):
        """True when ``other`` fits inside this diagram."""
        other = Partition(other)
        return len(other) <= len(self) and all(o <= s for o, s in zip(other, self))

    def __repr__(self):
        return "[" + ",".join(map(str, self)) + "]"

    __str__ = __repr__


def partition_key(lam):
    """Total order: weight first, then lexicographic on parts.

    Within one weight this refines dominance, and across weights it
    refines diagram inclusion.
    """
    return (sum(lam), tuple(lam))


def parse_partition(text):
    """Read the ``[3,1]`` literal (``[]`` or ``[0]`` is the empty partition)."""
    text = text.strip()
    m = re.fullmatch(r"\[\s*([0-9,\s]*)\]", text)
    if not m:
        raise NotAPartition(f"bad partition literal {text!r}")
    body = m.group(1).strip()
    parts = [int(x) for x in body.split(",") if x.strip()] if body else []
    return Partition(parts)


@lru_cache(maxsize=None)
def partitions_of(n):
    """All partitions of n in the total order."""
    out = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(Partition(acc))
            return
        for k in range(min(rest, cap), 0, -1):
            rec(rest - k, k, acc + [k])

    rec(n, n, [])
    return tuple(sorted(out, key=partition_key))


def partitions_upto(n):
    return [lam for k in range(n + 1) for lam in partitions_of(k)]


def conjugate(lam):
    lam = Partition(lam)
    if not lam:
        return lam
    return Partition([sum(1 for x in lam if x > j) for j in range(lam[0])])


def dominates(lam, mu):
    """lam >= mu in dominance order (same weight assumed)."""
    s = t = 0
    for i in range(max(len(lam), len(mu))):
        s += lam[i] if i < len(lam) else 0
        t += mu[i] if i < len(mu) else 0
        if s < t:
            return False
    return True


def subpartitions(lam):
    """Every mu contained in lam (including lam), in the total order."""
    lam = Partition(lam)
    out = []

    def rec(i, cap, acc):
        if i == len(lam):
            out.append(Partition(acc))
            return
        for k in range(min(cap, lam[i]), -1, -1):
            rec(i + 1, k, acc + [k])

    rec(0, lam[0] if lam else 0, [])
    return sorted(set(out), key=partition_key)


def arm_leg(lam, cell):
    """(arm, leg, co-arm, co-leg) of a cell (row, column), 1-indexed."""
    lam = Partition(lam)
    i, j = cell
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise CellOutsideDiagram(f"cell {cell} is outside {lam}")
    conj = conjugate(lam)
    return lam[i - 1] - j, conj[j - 1] - i, j - 1, i - 1


def add_box(lam, i):
    """lam with a box added in row i, or None if that is not a partition."""
    parts = list(lam) + [0]
    if i < 1 or i > len(lam) + 1:
        return None
    parts[i - 1] += 1
    if i >= 2 and parts[i - 1] > parts[i - 2]:
        return None
    return Partition(parts)


def remove_box(lam, i):
    parts = list(lam)
    if i < 1 or i > len(parts):
        return None
    parts[i - 1] -= 1
    if i < len(parts) and parts[i - 1] < parts[i]:
        return None
    return Partition(parts)


def _inv(alpha):
    return Scalar.coerce(alpha).inverse()


def hook_product(lam, alpha=ALPHA):
    """prod over cells of (1 + arm + leg/alpha)."""
    out = Scalar(1)
    ia = _inv(alpha)
    for c in Partition(lam).cells():
        a, l, _, _ = arm_leg(lam, c)
        out = out * (1 + a + l * ia)
    return out


def deformed_pochhammer(x, lam, alpha=ALPHA):
    """prod over cells of (x + coarm - coleg/alpha)."""
    x = Scalar.coerce(x)
    ia = _inv(alpha)
    out = Scalar(1)
    for i, j in Partition(lam).cells():
        out = out * (x + (j - 1) - (i - 1) * ia)
    return out


def b_coefficient(lam, alpha=ALPHA):
    """prod over cells of (l + 1 + alpha*a)/(l + alpha + alpha*a)."""
    alpha = Scalar.coerce(alpha)
    out = Scalar(1)
    for c in Partition(lam).cells():
        a, l, _, _ = arm_leg(lam, c)
        out = out * ((l + 1 + alpha * a) / (l + alpha + alpha * a))
    return out


def c_factors(lam, z, kind, alpha=ALPHA):
    """The three cell products C+, C-, C0 evaluated at z.

    ``+``: (lambda_i + j - (lambda'_j + i)/alpha + z)
    ``-``: (lambda_i - j + (lambda'_j - i)/alpha + z)
    ``0``: (j - 1 - (i - 1)/alpha + z)
    """
    lam = Partition(lam)
    z = Scalar.coerce(z)
    ia = _inv(alpha)
    conj = conjugate(lam)
    out = Scalar(1)
    for i, j in lam.cells():
        li, cj = lam[i - 1], conj[j - 1]
        if kind == "+":
            f = li + j - (cj + i) * ia + z
        elif kind == "-":
            f = li - j + (cj - i) * ia + z
        elif kind == "0":
            f = (j - 1) - (i - 1) * ia + z
        else:
            raise ValueError(f"unknown C-factor kind {kind!r}")
        out = out * f
    return out


def integral_norm(lam, alpha=ALPHA):
    """prod over cells of (alpha*a + l + 1), i.e. alpha^|lam| * C-(1/alpha)."""
    alpha = Scalar.coerce(alpha)
    out = Scalar(1)
    for c in Partition(lam).cells():
        a, l, _, _ = arm_leg(lam, c)
        out = out * (alpha * a + l + 1)
    return out


def binomial_one_box(lam, i, alpha=ALPHA):
    """Generalized binomial coefficient of lam^(i) over lam.

    Row i may be len(lam) + 1.  Raises NotAPartition when adding the box
    does not give a partition.
    """
    lam = Partition(lam)
    alpha = Scalar.coerce(alpha)
    big = add_box(lam, i)
    if big is None:
        raise NotAPartition(f"adding a box to row {i} of {lam} is not a partition")
    li = lam.part(i)
    ia = _inv(alpha)
    out = (li + 1) + (len(big) - i) * ia
    for j in range(1, len(big) + 1):
        if j == i:
            continue
        x = alpha * (li + 1 - lam.part(j))
        out = out * ((x + j - i - 1) / (x + j - i))
    return out


def shifted_power_sum_eval(r, lam, alpha=ALPHA):
    """pi_r(lam) = sum_i ((lam_i - i/alpha)^r - (-i/alpha)^r)."""
    ia = _inv(alpha)
    out = Scalar(0)
    for i, li in enumerate(Partition(lam), start=1):
        out = out + ((li - i * ia) ** r - (-i * ia) ** r)
    return out


def d_eigenvalue(lam, alpha=ALPHA, p0=P0):
    """Eigenvalue of the second-order operator D^2 on P_lam."""
    ia = _inv(alpha)
    out = Scalar(0)
    for i, li in enumerate(Partition(lam), start=1):
        out = out + li * (li - 1 + 2 * ia * (p0 - i))
    return out


def jack_eigenvalue(lam, alpha=ALPHA):
    ia = _inv(alpha)
    out = Scalar(0)
    for i, li in enumerate(Partition(lam), start=1):
        out = out + li * (li - 1 - 2 * (i - 1) * ia)
    return out


def eigenvalue(kind, lam, a2=None, b1=None, **params):
    """Eigenvalue of a family's defining operator on the label lam.

    kind is one of ``generic`` (needs a2, b1), ``jack``, ``d2``, ``hermite``,
    ``laguerre`` or ``jacobi``.
    """
    lam = Partition(lam)
    n = lam.size
    if kind == "generic":
        return Scalar.coerce(a2) * d_eigenvalue(lam) + Scalar.coerce(b1) * n
    if kind == "jack":
        return jack_eigenvalue(lam)
    if kind == "d2":
        return d_eigenvalue(lam)
    if kind == "hermite":
        nu = Scalar.coerce(params.get("nu", 1))
        return -2 * nu * nu * n
    if kind == "laguerre":
        return -Scalar.coerce(params.get("nu", 1)) * n
    if kind == "jacobi":
        p = Scalar.coerce(params.get("p", Scalar.gen("p")))
        q = Scalar.coerce(params.get("q", Scalar.gen("q")))
        return d_eigenvalue(lam) - (p + 2 * q - 1) * n
    raise ValueError(f"unknown eigenvalue kind {kind!r}")


class SignedIndexSet:
    """Disjoint row sets J+ (add a box) and J- (remove a box)."""

    __slots__ = ("plus", "minus")

    def __init__(self, plus=(), minus=()):
        self.plus = frozenset(plus)
        self.minus = frozenset(minus)
        if self.plus & self.minus:
            raise ValueError("J+ and J- must be disjoint")

    def __len__(self):
        return len(self.plus) + len(self.minus)

    def apply(self, lam):
        """lam + e_{J+} - e_{J-}, or None if that is not a partition."""
        lam = Partition(lam)
        top = max(self.plus | self.minus | {len(lam)})
        parts = [lam.part(i) for i in range(1, top + 1)]
        for j in self.plus:
            parts[j - 1] += 1
        for j in self.minus:
            parts[j - 1] -= 1
        if any(x < 0 for x in parts):
            return None
        if any(a < b for a, b in zip(parts, parts[1:])):
            return None
        return Partition(parts)

    def __eq__(self, other):
        return isinstance(other, SignedIndexSet) and (self.plus, self.minus) == (other.plus, other.minus)

    def __hash__(self):
        return hash((self.plus, self.minus))

    def __repr__(self):
        return f"J+={sorted(self.plus)} J-={sorted(self.minus)}"


def signed_subsets(rows, size):
    """All signed index sets on ``rows`` with exactly ``size`` elements."""
    rows = list(rows)
    for chosen in combinations(rows, size):
        for mask in range(1 << size):
            plus = [j for k, j in enumerate(chosen) if not mask >> k & 1]
            minus = [j for k, j in enumerate(chosen) if mask >> k & 1]
            yield SignedIndexSet(plus, minus)
