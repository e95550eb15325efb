"""Acceptance criteria 1-11, run at their stated tolerances and budgets.

Criteria 5 and 6 fail on the displayed Subcase 1.1 multiplier and flux,
which do not satisfy the equation as printed; they are strict xfails and the
parts that do hold are checked separately below.
"""

import pytest

from gardnersym import suite
from gardnersym.report import Timer
from gardnersym.suite import SuiteConfig

CFG = SuiteConfig(seed=0, samples=20)
TITLES = {num: title for num, title, _ in suite.GROUPS if num is not None}
FNS = {num: fn for num, _, fn in suite.GROUPS if num is not None}


def _run(num, record, budget=None):
    with Timer() as tm:
        entries = list(FNS[num](CFG))
    failed = [e for e in entries if not e.passed]
    in_budget = budget is None or tm.seconds < budget
    detail = f"{len(entries) - len(failed)}/{len(entries)} checks, {tm.seconds:.1f}s"
    if failed:
        detail += "; failing: " + ", ".join(e.name for e in failed)
    if not in_budget:
        detail += f"; over the {budget}s budget"
    record(num, TITLES[num], not failed and in_budget, detail)
    return entries, failed, tm.seconds


def _assert_ok(num, record, budget=None):
    entries, failed, secs = _run(num, record, budget)
    assert entries
    assert not failed, [(e.name, e.residual, e.detail) for e in failed]
    if budget is not None:
        assert secs < budget


def test_criterion_01_adjoint(criterion_line):
    _assert_ok(1, criterion_line, budget=1)


def test_criterion_02_selfadjointness(criterion_line):
    _assert_ok(2, criterion_line, budget=5)


def test_criterion_03_symmetry_catalog(criterion_line):
    _assert_ok(3, criterion_line, budget=30)


def test_criterion_04_determining_system(criterion_line):
    _assert_ok(4, criterion_line)


@pytest.mark.xfail(strict=True, reason="displayed Subcase 1.1 multiplier leaves a nonzero residual")
def test_criterion_05_multipliers(criterion_line):
    _assert_ok(5, criterion_line)


@pytest.mark.xfail(strict=True, reason="displayed Subcase 1.1 density is not conserved, so no flux exists")
def test_criterion_06_densities_and_fluxes(criterion_line):
    _assert_ok(6, criterion_line)


def test_criterion_07_ibragimov(criterion_line):
    _assert_ok(7, criterion_line)


def test_criterion_08_double_reduction(criterion_line):
    _assert_ok(8, criterion_line, budget=1)


def test_criterion_09_properties(criterion_line):
    _assert_ok(9, criterion_line)


def test_criterion_10_numerics(criterion_line):
    _assert_ok(10, criterion_line, budget=120)


def test_criterion_11_travelling_wave(criterion_line):
    _assert_ok(11, criterion_line, budget=10)


# -- the parts of criteria 5 and 6 that hold --------------------------------------

def test_multipliers_other_than_subcase_11():
    entries = suite.check_multipliers(CFG)
    rest = [e for e in entries if "1.1" not in e.name]
    assert len(rest) == 3 and all(e.passed for e in rest)
    assert all(not e.passed for e in entries if "1.1" in e.name)


def test_subcase_12_density_and_flux():
    rest = [e for e in suite.check_fluxes(CFG) if "1.1" not in e.name]
    assert len(rest) == 3 and all(e.passed for e in rest)


def test_subcase_11_forms_forced_by_the_determining_equations():
    forced = [e for e in suite.check_display_audit(CFG) if "1.1" in e.name]
    assert len(forced) == 4 and all(e.passed for e in forced)
