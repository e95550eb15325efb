import pytest
import sympy as sp

from gardnersym.errors import NotExactError
from gardnersym.expr import normalize
from gardnersym.jet import eliminate_ut, euler, higher_euler, invert_total_x, total_t, total_x
from gardnersym.scenario import Scenario
from gardnersym.symbols import U, t, time_function, u, u_t, u_x, u_xx, u_xxx, u_xxxx, x

A, B, C, Q = (time_function(n) for n in "ABCQ")
fam = Scenario.abstract()


def test_total_x():
    assert total_x(u**2) == 2 * u * u_x
    assert total_x(B * u_xx) == B * u_xxx
    assert normalize(total_x(x * u) - (u + x * u_x)) == 0


def test_total_t():
    assert total_t(u) == u_t
    assert normalize(total_t(B * u_x) - (sp.diff(B, t) * u_x + B * U.var(1, 1))) == 0
    assert total_t(u**2) == 2 * u * u_t


def test_eliminate_ut():
    assert normalize(eliminate_ut(u_t, fam) - fam.rhs) == 0
    expected = (-A * u_x**2 - A * u * u_xx - 2 * C * u * u_x**2 - C * u**2 * u_xx
                - B * u_xxxx - Q * u_x)
    assert normalize(eliminate_ut(U.var(1, 1), fam) - expected) == 0
    assert eliminate_ut(u_xx, fam) == u_xx


def test_euler():
    assert euler(u * u_x) == 0
    assert euler(u_x**2 / 2) == -u_xx
    assert euler(fam.F) == Q


def test_higher_euler():
    assert higher_euler(u_x**2 / 2, 1) == u_x
    assert higher_euler(u * u_xx, 1) == -2 * u_x
    assert higher_euler(u * u_xx, 2) == u


def test_invert_total_x():
    assert invert_total_x(2 * u * u_x) == u**2
    assert invert_total_x(u_x) == u
    with pytest.raises(NotExactError) as info:
        invert_total_x(u * u_x**2)
    assert info.value.obstruction is not None


def test_invert_with_coefficients():
    p = B * u * u_xxx + sp.exp(t) * x * u_x + sp.exp(t) * u
    assert normalize(total_x(invert_total_x(total_x(p))) - total_x(p)) == 0
