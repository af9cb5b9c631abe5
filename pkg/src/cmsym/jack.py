"""Jack symmetric functions P_lam(alpha) and the Jack basis provider.

P_lam is the eigenfunction of D[2] - (2/alpha)(p0 - 1) E[1] that is
m_lam plus dominance-lower monomials.  The operator is independent of p0;
it is assembled in the monomial basis one degree at a time and the
triangular system is solved from the top.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from pathlib import Path

from .operators import D_apply, E_apply
from .partitions import Partition, dominates, jack_eigenvalue, partition_key, partitions_of
from .scalars import ALPHA, P0, Scalar, parse_scalar
from .symfunc import (Basis, SymFunc, m_in_p, p_in_m, register_jack_provider, _expand)

CACHE_SCHEMA = 1


def jack_operator_on_p(f):
    return D_apply(2, f) - E_apply(1, f).scale(2 / ALPHA * (P0 - 1))


@lru_cache(maxsize=None)
def _operator_in_m(d):
    """{nu: {kappa: coeff}} with the Jack operator applied to m_nu."""
    out = {}
    for nu in partitions_of(d):
        img = jack_operator_on_p(_expand(SymFunc(Basis.MONOMIAL, {nu: 1}), m_in_p, Basis.POWER))
        out[nu] = _expand(img, p_in_m, Basis.MONOMIAL).terms
    return out


@lru_cache(maxsize=None)
def jack_in_m(lam):
    lam = Partition(lam)
    cached = _disk_load(lam)
    if cached is not None:
        return cached
    d = lam.size
    ops = _operator_in_m(d)
    below = [mu for mu in partitions_of(d) if mu != lam and dominates(lam, mu)]
    below.sort(key=partition_key, reverse=True)
    e_lam = jack_eigenvalue(lam)
    coeffs = {lam: Scalar(1)}
    for kappa in below:
        rhs = Scalar(0)
        for nu, c in coeffs.items():
            a = ops[nu].get(kappa)
            if a is not None:
                rhs = rhs + c * a
        if not rhs.is_zero():
            coeffs[kappa] = rhs / (e_lam - jack_eigenvalue(kappa))
    _disk_store(lam, coeffs)
    return coeffs


@lru_cache(maxsize=None)
def jack_in_p(lam):
    return _expand(SymFunc(Basis.MONOMIAL, jack_in_m(Partition(lam))), m_in_p, Basis.POWER).terms


@lru_cache(maxsize=None)
def m_in_jack(kappa):
    """Invert the unitriangular Jack-to-monomial table."""
    kappa = Partition(kappa)
    out = {kappa: Scalar(1)}
    for rho, c in jack_in_m(kappa).items():
        if rho == kappa:
            continue
        for lam, k in m_in_jack(rho).items():
            v = -c * k
            out[lam] = out[lam] + v if lam in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


@lru_cache(maxsize=None)
def p_in_jack(mu):
    out = {}
    for kappa, c in p_in_m(Partition(mu)).items():
        for lam, k in m_in_jack(kappa).items():
            v = k * c
            out[lam] = out[lam] + v if lam in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


class _Provider:
    jack_in_p = staticmethod(jack_in_p)
    p_in_jack = staticmethod(p_in_jack)


register_jack_provider(_Provider)


def jack(lam, basis=Basis.MONOMIAL):
    """P_lam in the requested basis."""
    from .symfunc import convert

    return convert(SymFunc(Basis.JACK, {Partition(lam): 1}), basis)


# -- optional on-disk cache ------------------------------------------------------


def _cache_dir():
    root = os.environ.get("CMS_CACHE_DIR")
    return Path(root) if root else None


def _cache_file(lam):
    root = _cache_dir()
    if root is None:
        return None
    name = "_".join(map(str, lam)) or "empty"
    return root / f"jack-v{CACHE_SCHEMA}" / f"deg{sum(lam)}" / f"{name}.json"


def _disk_load(lam):
    path = _cache_file(lam)
    if path is None or not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
        if data.get("schema") != CACHE_SCHEMA or tuple(data["label"]) != tuple(lam):
            return None
        return {Partition(t[0]): parse_scalar(t[1]) for t in data["terms"]}
    except (OSError, ValueError, KeyError):
        return None


def _disk_store(lam, coeffs):
    path = _cache_file(lam)
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        data = {"schema": CACHE_SCHEMA, "label": list(lam),
                "terms": [[list(k), str(v)] for k, v in sorted(coeffs.items(), key=lambda kv: partition_key(kv[0]))]}
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(data))
        tmp.replace(path)
    except OSError:
        pass
