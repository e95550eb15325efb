import pytest
import sympy as sp

from gardnersym.errors import BadDerivativeError, ParseError
from gardnersym.expr import normalize
from gardnersym.parser import FRAME, parse, render
from gardnersym.scenario import Scenario
from gardnersym.symbols import U, W, jet_info, param
from gardnersym.symmetry import f1


def test_gardner_lhs():
    F = parse("u_t + A*u*u_x + C*u^2*u_x + B*u_xxx + Q*u")
    assert F == Scenario.abstract().F


def test_jet_orders():
    info = jet_info(parse("u_xx"))
    assert (info.m, info.n) == (2, 0)
    assert parse("u_tx") == U.var(1, 1)


def test_frame_variables():
    e = parse("(4*w+2)*w_rr - 2*w_r^2", FRAME)
    w, w_r, w_rr = W.var(), W.var(1), W.var(2)
    assert normalize(e - ((4 * w + 2) * w_rr - 2 * w_r**2)) == 0


def test_precedence_and_associativity():
    assert parse("2^3^2") == 2**9
    assert parse("-2^2") == -4
    assert parse("1/2*u^2") == parse("u^2/2")
    assert parse("0.1") == sp.Rational(1, 10)


@pytest.mark.parametrize("src", ["u_x^2", "u_t + A*u*u_x + C*u^2*u_x + B*u_xxx + Q*u",
                                 "exp(k*t)*u - AD(2*Q)", "A_tt*u/(3*t+1)", "sin(x)/10 + 1"])
def test_round_trip(src):
    e = parse(src)
    assert normalize(parse(render(e)) - e) == 0


def test_symbolic_exponent_renders_with_parentheses():
    k, k1, d0 = (param(n) for n in ("k", "k1", "d0"))
    e = f1() ** (d0 / (3 * k * k1))
    text = render(e)
    assert "^(" in text
    assert normalize(parse(text) - e) == 0


@pytest.mark.parametrize("src", ["u +", "(u", "u**2", "2 u", "", "u*)"])
def test_syntax_errors(src):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert info.value.code in ("E_SYNTAX",)
    assert info.value.line == 1 and info.value.column >= 1


def test_error_position_and_expected():
    with pytest.raises(ParseError) as info:
        parse("u +\n  * 2")
    assert info.value.line == 2
    assert info.value.expected


@pytest.mark.parametrize("src", ["u_y", "u_", "A_x"])
def test_bad_derivatives(src):
    with pytest.raises(BadDerivativeError):
        parse(src)
