import pytest

from cmsym import verify

SMALL = {
    "commutators": {"max_degree": 3, "max_index": 2},
    "actions": {"max_degree": 3},
    "jack": {"max_weight": 3},
    "stanley": {"max_weight": 4},
    "hermite": {"max_weight": 3, "eigen_weight": 2},
    "laguerre": {"max_weight": 3, "symmetry_weight": 2, "eigen_weight": 2},
    "jacobi": {"max_weight": 2, "triple_weight": 2},
    "duality": {"max_weight": 3},
    "ideals": {"n": 1, "m": 1, "max_weight": 3, "max_r": 1},
    "hyper": {"degree": 3, "gf_degree": 2},
    "super": {"max_n": 1, "max_m": 1, "max_weight": 3, "max_index": 2},
    "limits": {"max_weight": 2},
}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_suites_pass_at_small_bounds(name):
    res = verify.run_suite(name, **SMALL[name])
    assert res.checks
    failed = [c.name for c in res.checks if not c.passed and not c.informational]
    assert not failed
    assert res.passed


def test_conjecture_suite_is_informational():
    res = verify.run_suite("conjecture", max_weight=2)
    assert res.checks and all(c.informational for c in res.checks)
    assert res.passed


def test_pieri_suite_reports_the_printed_laguerre_forms():
    checks = verify.suite_pieri(cor_weight=2)
    names = [c.name for c in checks]
    assert any("laguerre" in n and "printed" in n for n in names)
    assert any("hermite" in n for n in names)


def test_unknown_suite():
    with pytest.raises(verify.UnknownSuite):
        verify.run_suite("nonsense")


def test_generic_bounds_are_routed():
    kwargs = verify._bind(verify.suite_commutators, {"max_weight": 2, "n": 3})
    assert kwargs == {"max_degree": 2}
    kwargs = verify._bind(verify.suite_super, {"n": 1, "m": 2, "max_weight": None})
    assert kwargs == {"max_n": 1, "max_m": 2}


def test_check_coerces_fields():
    c = verify.Check("x", 1, 3)
    assert c.passed is True and c.detail == "3"
