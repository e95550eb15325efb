import random

import sympy as sp
from hypothesis import HealthCheck, given, settings, strategies as st

from gardnersym.conslaw import density_from_multiplier
from gardnersym.expr import normalize, substitute
from gardnersym.jet import euler, invert_total_x, total_t, total_x
from gardnersym.parser import parse, render
from gardnersym.sampling import random_diffpoly, random_tree
from gardnersym.symbols import U

seeds = st.integers(min_value=0, max_value=2**32 - 1)
cfg = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@cfg
@given(seeds)
def test_euler_kills_total_derivatives(seed):
    p = random_diffpoly(random.Random(seed))
    assert euler(total_x(p)) == 0
    assert euler(total_t(p)) == 0


@cfg
@given(seeds)
def test_invert_total_x(seed):
    p = random_diffpoly(random.Random(seed), max_t=0)
    assert normalize(total_x(invert_total_x(total_x(p))) - total_x(p)) == 0


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_render_parse_round_trip(seed):
    e = normalize(random_tree(random.Random(seed)))
    assert normalize(parse(render(e)) - e) == 0


@cfg
@given(seeds)
def test_normalize_is_idempotent(seed):
    e = normalize(random_tree(random.Random(seed), depth=3))
    assert normalize(e) == e


@cfg
@given(st.integers(0, 1), st.integers(1, 3), st.integers(0, 2), st.integers(-4, 4).filter(bool))
def test_homotopy_inverts_euler(order, degree, extra, c):
    # Lagrangians of x-order <= 1 give multipliers of order <= 2
    L = c * U.var(order) ** degree * U.var(0) ** extra
    lam = euler(L)
    if lam == 0:
        return
    assert normalize(euler(density_from_multiplier(lam)) - lam) == 0


@cfg
@given(seeds)
def test_substitution_identity(seed):
    p = random_diffpoly(random.Random(seed))
    assert substitute(p, {}) == normalize(p)
