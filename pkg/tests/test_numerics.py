import math

import numpy as np
import pytest
import sympy as sp

from gardnersym.errors import BlowupError, ParamError, TimeStepError, UnboundError
from gardnersym.numerics import (Grid, compile_eval, conserved_drift, convergence_study,
                                 predicted_change, simulate, stencil_derivative,
                                 write_drift_table, write_trajectory)
from gardnersym.scenario import Scenario
from gardnersym.symbols import param, t, time_function, u, u_x, u_xx, x

const = Scenario.constant()


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(15)
    with pytest.raises(ValueError):
        Grid(8)
    assert Grid(64).dx == pytest.approx(2 * math.pi / 64)


def test_stencils_on_sine():
    g = Grid(64)
    f = np.sin(g.x)
    assert np.max(np.abs(stencil_derivative(f, g.dx, 1) - np.cos(g.x))) < 1e-5
    assert np.max(np.abs(stencil_derivative(f, g.dx, 2) + f)) < 1e-5
    assert np.max(np.abs(stencil_derivative(f, g.dx, 3) + np.cos(g.x))) < 1e-4


def test_compile_eval():
    g = Grid(64)
    state = np.sin(g.x)
    for e, ref in ((u, state), (u**2, state**2), (u_x, np.cos(g.x)), (x * u, g.x * state)):
        got = compile_eval(e, const)(0.0, state, g.dx, g.x)
        assert np.max(np.abs(got - ref)) < 1e-5
    assert np.allclose(compile_eval(sp.S(3), const)(0.0, state, g.dx), 3)


def test_compile_eval_rejects_unbound():
    with pytest.raises(UnboundError):
        compile_eval(time_function("A") * u, Scenario.abstract())
    with pytest.raises(UnboundError):
        compile_eval(param("k") * u, const)


def test_zero_state_stays_zero():
    traj = simulate(const, Grid(32), (0, 0.1), initial=lambda xs: 0 * xs, n_store=3)
    assert np.all(traj.states == 0)
    assert traj.times[-1] == pytest.approx(0.1)


def test_mass_and_energy_are_conserved():
    traj = simulate(const, Grid(128), (0, 0.5), initial=lambda xs: 0.1 * np.sin(xs), n_store=11)
    assert conserved_drift(traj, u).max_drift < 1e-8
    assert conserved_drift(traj, u**2 / 2).max_drift < 1e-8


def test_linear_damping_of_the_mean():
    q0 = sp.Rational(1, 5)
    sc = Scenario.constant(Q=q0)
    traj = simulate(sc, Grid(128), (0, 1), initial=lambda xs: 1 + 0.1 * np.sin(xs), n_store=11)
    mean = traj.states.mean(axis=1)
    assert np.max(np.abs(mean - np.exp(-0.2 * traj.times))) < 1e-4
    ds = conserved_drift(traj, u)
    pred = predicted_change(traj, u)
    assert np.max(np.abs(ds.integrals - ds.integrals[0] - pred)) < 1e-4


def test_time_dependent_coefficients():
    sc = Scenario.constant(A=1 + t, B=1, C=sp.exp(-t))
    traj = simulate(sc, Grid(64), (0, 0.2), initial=lambda xs: 0.1 * np.cos(xs), n_store=3)
    assert conserved_drift(traj, u).max_drift < 1e-10


def test_blowup_and_timestep_errors():
    sc = Scenario.constant(Q=-50)
    with pytest.raises(BlowupError) as exc:
        simulate(sc, Grid(16), (0, 1), initial=lambda xs: 1 + 0 * xs, blowup=10)
    assert 0 < exc.value.last_time < 1
    with pytest.raises(TimeStepError):
        simulate(Scenario.constant(B=1e12), Grid(64), (0, 1), initial=lambda xs: 0 * xs)


def test_convergence_with_exact_constant():
    res = convergence_study(const, sp.S(1) / 2, Ns=(32, 64), t_end=0.01)
    assert max(res.errors) < 1e-12


def test_convergence_order():
    res = convergence_study(const, sp.sin(x - t), Ns=(32, 64, 128), t_end=0.01)
    assert res.min_order > 3.5


def test_convergence_needs_dispersion():
    with pytest.raises(ParamError):
        convergence_study(Scenario(sp.S(1), sp.S(0), sp.S(1), sp.S(0)), sp.sin(x))


def test_export_formats(tmp_path):
    traj = simulate(const, Grid(16), (0, 0.01), initial=lambda xs: np.sin(xs), n_store=2)
    write_trajectory(traj, tmp_path / "traj.txt")
    rows = (tmp_path / "traj.txt").read_text().splitlines()
    assert rows[0] == "# t x u" and len(rows) == 1 + 2 * 16
    write_drift_table({"mass": conserved_drift(traj, u)}, tmp_path / "drift.txt")
    rows = (tmp_path / "drift.txt").read_text().splitlines()
    assert rows[0] == "# label t integral rel_drift" and rows[1].startswith("mass ")
