import pytest

from cmsym import limits
from cmsym.partitions import partitions_upto
from cmsym.scalars import Scalar
from cmsym.symfunc import Basis, SymFunc

Q = Scalar.gen("q")


@pytest.mark.parametrize("kind", ["jacobi_to_laguerre", "jacobi_to_hermite"])
@pytest.mark.parametrize("lam", partitions_upto(3))
def test_transitions_reproduce_targets(kind, lam):
    res = limits.limit_transition(kind, lam)
    assert res.verdict == "equal"
    assert res.value == res.target
    assert not res.conjectural


def test_examples():
    assert limits.limit_transition("jacobi_to_laguerre", ()).value == 1
    res = limits.limit_transition("jacobi_to_hermite", (1,))
    assert res.value == SymFunc.p(1)


def test_conjecture_is_reported():
    res = limits.limit_transition("laguerre_to_hermite_conjecture", (2,))
    assert res.conjectural
    assert res.verdict in ("equal", "not-equal", "divergent")


def test_divergent_limit_is_a_verdict(monkeypatch):
    def blowing_up(kind, lam):
        return SymFunc(Basis.POWER, {(1,): Q}), "q", SymFunc.p(1)

    monkeypatch.setattr(limits, "pre_limit", blowing_up)
    assert limits.limit_transition("jacobi_to_hermite", (1,)).verdict == "divergent"


def test_unknown_kind():
    with pytest.raises(ValueError):
        limits.limit_transition("hermite_to_jack", (1,))
