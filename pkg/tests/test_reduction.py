import numpy as np
import pytest
import sympy as sp

from gardnersym import displays as D
from gardnersym.conslaw import ConservedVector
from gardnersym.errors import ExplicitSError, NotAssociatedError
from gardnersym.expr import normalize, substitute
from gardnersym.reduction import (CanonicalFrame, association_residual, from_canonical,
                                  is_associated, reduced_ode, to_canonical, travelling_wave_check)
from gardnersym.symbols import W, param, s, u, u_xx, x
from gardnersym.symmetry import VectorField

sc = D.example_scenario()
full = ConservedVector(*D.example_vector(), sc)
pick = {param("k1"): 1, D.c1: 1, D.c2: 0}
cv = ConservedVector(substitute(full.Tt, pick), substitute(full.Tx, pick), sc)
mass = ConservedVector(u, u**2 / 2 + u**3 / 3 + u_xx, sc)


def test_association():
    frame = CanonicalFrame()
    assert association_residual(frame.generator, full) == (0, 0)
    assert any(r != 0 for r in association_residual(D.example_generator(), full))
    assert is_associated(VectorField(1, 0, 0), mass)


def test_canonical_flux():
    _, Tr = to_canonical(cv, CanonicalFrame(), require_association=True)
    assert normalize(Tr - D.example_Tr()) == 0


def test_round_trip_through_frame():
    frame = CanonicalFrame()
    Ts, Tr = to_canonical(cv, frame)
    Tt, Tx = from_canonical(Ts, Tr, frame)
    assert normalize(Tt - cv.Tt) == 0 and normalize(Tx - cv.Tx) == 0


def test_identity_frame_sign():
    Ts, Tr = to_canonical(mass, CanonicalFrame(0))
    w = W.var()
    assert normalize(Ts + w) == 0
    assert normalize(Tr + (w**2 / 2 + w**3 / 3 + W.var(2))) == 0
    assert to_canonical(ConservedVector(0, 0, sc), CanonicalFrame()) == (0, 0)


def test_not_associated_raises():
    other = ConservedVector(u * x, 0, sc)
    with pytest.raises(NotAssociatedError):
        to_canonical(other, CanonicalFrame(), require_association=True)


def test_reduced_ode_and_first_order_form():
    _, Tr = to_canonical(cv, CanonicalFrame())
    ode = reduced_ode(4 * Tr, D.kk)
    assert ode.order == 2
    assert normalize(ode.lhs - D.example_ode()) == 0
    assert normalize(sp.cancel(ode.first_order - D.example_first_order())) == 0
    assert ode.excluded == 4 * W.var() + 2


def test_linear_profile():
    ode = reduced_ode(W.var(1), D.kk)
    assert ode.order == 1 and ode.first_order == D.kk


def test_explicit_s_rejected():
    with pytest.raises(ExplicitSError):
        reduced_ode(W.var(1) + s, 0)


def test_travelling_wave_solves_pde():
    _, Tr = to_canonical(cv, CanonicalFrame(1))
    ode = reduced_ode(4 * Tr, 0)
    rng = np.random.default_rng(0)
    res = travelling_wave_check(ode, 1, 0.1, 0.0, (rng.uniform(-1, 1, 200), rng.uniform(0, 1, 200)))
    assert res < 1e-6
