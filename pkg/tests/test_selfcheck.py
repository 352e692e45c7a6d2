"""Invariant suites behind ``abmod selfcheck``."""
import pytest

from abmod import selfcheck as sc


def test_default_run_all_pass():
    results = sc.run()
    assert len(results) >= 5
    bad = {r.name: r.failures[:1] for r in results if not r.ok}
    assert not bad
    assert all(r.total > 0 for r in results)


@pytest.mark.parametrize("seed", [1, 2, 99])
def test_other_seeds_pass(seed):
    assert sc.report(sc.run(seed=seed))["ok"]


def test_runs_are_reproducible():
    a = sc.report(sc.run(["rescale", "dnf"], seed=5))
    b = sc.report(sc.run(["rescale", "dnf"], seed=5))
    assert a == b


def test_single_suite():
    (r,) = sc.run(["modulopfinite"])
    assert r.name == "modulopfinite" and r.ok and r.total == len(sc.default_modulopfinite_cases())


@pytest.mark.parametrize("name", sc.SUITES)
def test_injected_fault_is_caught(name):
    (r,) = sc.run([name], inject_fault=name)
    assert not r.ok
    assert "counterexample" in r.as_dict()


def test_fault_in_other_suite_leaves_this_one_alone():
    (r,) = sc.run(["iso"], inject_fault="crt")
    assert r.ok


def test_unknown_suite():
    with pytest.raises(ValueError):
        sc.run(["nope"])
