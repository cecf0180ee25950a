import pytest

from croftonlab.verify import SUITES, run_suite


@pytest.mark.parametrize("suite", ["core", "measures"])
def test_suite_passes(suite):
    results = run_suite(suite, seed=0)
    assert results
    assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_deterministic_under_seed():
    assert run_suite("core", seed=7) == run_suite("core", seed=7)


def test_threshold_scale_forces_failure():
    assert not any(r.passed for r in run_suite("core", threshold_scale=0.0))


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nonsense")


def test_suite_names():
    assert SUITES == ("core", "hilbert", "perimeter", "measures")
