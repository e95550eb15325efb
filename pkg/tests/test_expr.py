import pytest
import sympy as sp

from gardnersym.errors import CycleError, UnboundError
from gardnersym.expr import ParamEnv, diff_param, eval_num, normalize, substitute, zero_test
from gardnersym.symbols import AD, param, t, time_function, u, x
from gardnersym.symmetry import f1

k, k1, k4, p, q = (param(n) for n in ("k", "k1", "k4", "p", "q"))


def test_arithmetic_collects():
    assert normalize(2 * t + t) == 3 * t


def test_exponentials_cancel():
    assert normalize(sp.exp(k * t) * sp.exp(-k * t)) == 1


def test_powers_of_the_same_base_merge():
    F1 = f1()
    assert normalize(F1**p * F1**q - F1 ** (p + q)) == 0


def test_normalize_is_idempotent():
    F1 = f1()
    e = (u + F1 ** (p / 3)) ** 2 * sp.exp(k * t) / (3 * t + 1)
    once = normalize(e)
    assert normalize(once) == once


def test_diff_param():
    assert normalize(diff_param(sp.exp(k * t), t) - k * sp.exp(k * t)) == 0
    Q = time_function("Q")
    assert diff_param(AD(Q), t) == Q
    F1 = f1()
    expected = p * 3 * k1 * k * sp.exp(k * t) * F1 ** (p - 1)
    assert normalize(diff_param(F1**p, t) - expected) == 0


def test_substitute_closed_form_into_derivative():
    a0, a1, d0, k3 = (param(n) for n in ("a0", "a1", "d0", "k3"))
    tau = 3 * k1 * t + k3
    closed = a0 * tau ** (-d0 / (3 * k1)) + a1 * tau ** sp.Rational(-1, 3)
    A = time_function("A")
    got = substitute(sp.diff(A, t), {A: closed})
    assert normalize(got - sp.diff(closed, t)) == 0


def test_substitute_simple_cases():
    assert substitute(sp.exp(k * t), {k: 0}) == 1
    e = u * sp.exp(t) + x
    assert substitute(e, {t: t}) == normalize(e)


def test_substitute_detects_cycles():
    with pytest.raises(CycleError):
        substitute(p + 1, {p: p + 1})
    A = time_function("A")
    with pytest.raises(CycleError):
        substitute(A * u, {A: 2 * A})
    # simultaneous: a swap is not a cycle
    assert substitute(p - q, {p: q, q: p}) == q - p


def test_eval_num():
    assert eval_num(f1(), ParamEnv({"k": 1, "k1": 1, "k4": 2, "t": 0})) == pytest.approx(5)
    assert eval_num(sp.exp(k * t), ParamEnv({"k": 0, "t": 7})) == 1


def test_eval_num_antiderivative():
    assert eval_num(AD(2 * t), ParamEnv({"t": 3})) == pytest.approx(9)
    with pytest.raises(UnboundError):
        eval_num(AD(time_function("Q")), ParamEnv({"t": 1}))


def test_zero_test_modes():
    assert zero_test(sp.exp(k * t) * sp.exp(-k * t) - 1).mode == "symbolic"
    z = zero_test(p + 1)
    assert not z.is_zero
    # needs numeric fallback: (a b)^p vs a^p b^p with symbolic exponent is merged,
    # but a sum of logs is not simplified symbolically
    z = zero_test(sp.log(p * q) - sp.log(p) - sp.log(q))
    assert z.is_zero and z.mode == "numeric"
