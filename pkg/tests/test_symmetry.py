import pytest
import sympy as sp

from gardnersym.displays import example_generator, example_scenario
from gardnersym.errors import ParamError
from gardnersym.expr import normalize
from gardnersym.jet import eliminate_ut
from gardnersym.scenario import Scenario
from gardnersym.symbols import t, time_function, u, u_x, u_xxx
from gardnersym.symmetry import CATALOG, VectorField, apply_symmetry, determining_system, verify_case

A, B, C, Q = (time_function(n) for n in "ABCQ")


def test_translation_in_x():
    assert apply_symmetry(VectorField(1, 0, 0), example_scenario().F) == 0


def test_time_translation_sees_explicit_t():
    got = apply_symmetry(VectorField(0, 1, 0), Scenario.abstract().F)
    expected = (sp.diff(A, t) * u * u_x + sp.diff(C, t) * u**2 * u_x
                + sp.diff(B, t) * u_xxx + sp.diff(Q, t) * u)
    assert normalize(got - expected) == 0


def test_example_generator_is_a_symmetry():
    sc = example_scenario()
    assert eliminate_ut(apply_symmetry(example_generator(), sc.F), sc) == 0


def test_translation_gives_empty_system():
    assert determining_system(Scenario.abstract(), VectorField(1, 0, 0)) == []


def test_catalog_ids():
    assert list(CATALOG) == ["1.1a", "1.1b", "1.2", "2.1", "2.2"]


def test_verify_case_21_fixed_params():
    rep = verify_case("2.1", dict(k=1, k1=1, k3=1, k2=0, k4=0, b0=1, c0=1, a0=1, beta0=0))
    assert rep.passed
    assert [r.status for r in rep.results] == ["PASS"] * len(rep.results)


def test_verify_case_12_fixed_params():
    rep = verify_case("1.2", dict(k1=1, k3=0, d0=1, a0=1, a1=1, b0=1), invariance=False)
    assert rep.passed


def test_verify_case_rejects_degenerate_params():
    with pytest.raises(ParamError, match="k1"):
        verify_case("1.2", dict(k1=0, k3=1, d0=1, a0=1, a1=1, b0=1))
