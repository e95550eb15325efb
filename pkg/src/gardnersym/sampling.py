"""Seeded random differential polynomials and expression trees for property
checks."""

import random

import sympy as sp

from .symbols import U, param, t, time_function, x

__all__ = ["random_diffpoly", "random_tree", "random_closed_form_Q"]

_PARAMS = tuple(param(n) for n in ("a", "b", "k"))


def _rational(rng, lo=-5, hi=5):
    num = rng.randint(lo, hi) or 1
    return sp.Rational(num, rng.choice((1, 1, 2, 3)))


def _coefficient(rng):
    pick = rng.randrange(5)
    if pick == 0:
        return _rational(rng)
    if pick == 1:
        return _rational(rng) * x ** rng.randint(1, 2)
    if pick == 2:
        return _rational(rng) * t ** rng.randint(1, 2)
    if pick == 3:
        return rng.choice(_PARAMS) * _rational(rng)
    return time_function(rng.choice("ABCQ")) * _rational(rng)


def random_diffpoly(rng, *, terms=4, max_x=3, max_t=1, max_degree=3):
    """Sum of a few monomials in u_{x^m t^n} with (x, t, parameter,
    coefficient-function) coefficients."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    out = sp.S.Zero
    for _ in range(rng.randint(1, terms)):
        mono = _coefficient(rng)
        for _ in range(rng.randint(0, max_degree)):
            mono *= U.var(rng.randint(0, max_x), rng.randint(0, max_t) if rng.random() < .3 else 0)
        out += mono
    return out


def random_tree(rng, depth=4):
    """Random expression in the parser grammar's image: sums, products,
    integer and rational powers, exp, jets, parameters and A..Q(t)."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    if depth == 0 or rng.random() < .25:
        pick = rng.randrange(6)
        if pick == 0:
            return _rational(rng, -9, 9)
        if pick == 1:
            return U.var(rng.randint(0, 3), rng.randint(0, 1))
        if pick == 2:
            return rng.choice(_PARAMS)
        if pick == 3:
            return rng.choice((x, t))
        if pick == 4:
            return time_function(rng.choice("ABCQ"))
        return sp.Derivative(time_function(rng.choice("ABCQ")), (t, rng.randint(1, 2)))
    op = rng.randrange(5)
    a = random_tree(rng, depth - 1)
    if op == 0:
        return a + random_tree(rng, depth - 1)
    if op == 1:
        return a * random_tree(rng, depth - 1)
    if op == 2:
        return a ** rng.randint(2, 3)
    if op == 3:
        base = rng.choice(_PARAMS + (time_function("B"),))
        return a * base ** sp.Rational(rng.choice((-1, 1)), rng.choice((2, 3)))
    return sp.exp(rng.choice(_PARAMS) * t) * a


def random_closed_form_Q(rng):
    """Damping coefficients that stay finite for t in [1/2, 2]."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    a = sp.Rational(rng.randint(1, 9), rng.randint(1, 4))
    b = sp.Rational(rng.randint(1, 9), rng.randint(1, 4))
    kind = rng.randrange(6)
    return [a * t**2 + b, sp.exp(a * t), 1 / (a * t + b), a * t + b,
            b * sp.exp(-a * t) + a, a / (t + b) ** 2][kind]
