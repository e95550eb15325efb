import sympy as sp

from gardnersym.adjoint import (adjoint_equation, formal_lagrangian, selfadjoint_check,
                                substitute_v, theorem_lambda, theorem_phi)
from gardnersym.expr import normalize
from gardnersym.parser import ADJOINT, parse
from gardnersym.scenario import Scenario
from gardnersym.symbols import V, u, u_t, v

fam = Scenario.abstract()


def test_formal_lagrangian():
    assert formal_lagrangian(u_t) == v * u_t
    assert formal_lagrangian(sp.S.Zero) == 0
    assert normalize(formal_lagrangian(fam.F) - v * fam.F) == 0


def test_adjoint_of_family():
    expected = parse("v*Q - u^2*v_x*C - B*v_xxx - u*v_x*A - v_t", ADJOINT)
    assert normalize(adjoint_equation(fam.F) - expected) == 0


def test_adjoint_small_cases():
    assert adjoint_equation(u_t) == -V.var(0, 1)
    assert normalize(adjoint_equation(parse("u_t + u_xxx")) + V.var(0, 1) + V.var(3)) == 0


def test_substitute_v():
    assert normalize(substitute_v(V.var(1) + v, u**2) - (2 * u * parse("u_x") + u**2)) == 0


def test_theorem_two_abstract():
    r = selfadjoint_check(fam.F, theorem_phi())
    assert r.is_zero and r.mode == "symbolic"
    assert normalize(r.lam - theorem_lambda()) == 0
    assert r.weak == {"phi_u": True, "phi_x": False}


def test_selfadjoint_constant_coefficients():
    F = Scenario.constant().F
    r = selfadjoint_check(F, u)
    assert r.is_zero and r.lam == -1
    r = selfadjoint_check(F, sp.S.One)
    assert r.is_zero and r.lam == 0


def test_non_selfadjoint_substitution():
    r = selfadjoint_check(Scenario.constant(Q=1).F, u)
    assert not r.is_zero
