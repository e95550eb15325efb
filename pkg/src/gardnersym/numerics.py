"""Method-of-lines solver for u_t = Delta on a periodic grid, grid evaluation
of symbolic densities, conserved-integral monitoring and convergence studies.

Space: 4th-order central periodic stencils, advection in split form (mean of
advective and conservative forms). Time: classical RK4 with
dt <= c_safe dx^3 / max|B|, run by a numba kernel in chunks.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import sympy as sp
from numba import njit

from .errors import BlowupError, ParamError, TimeStepError, UnboundError
from .expr import ParamEnv, eval_num, normalize
from .jet import eliminate_ut, jet_order, total_t
from .symbols import AD, U, jets_in, t, u, x
from sympy.core.function import AppliedUndef

__all__ = [
    "Grid", "Trajectory", "compile_eval", "simulate", "conserved_drift",
    "DriftSeries", "predicted_change", "convergence_study", "ConvergenceResult",
    "stencil_derivative", "write_trajectory", "write_drift_table",
]


@dataclass(frozen=True)
class Grid:
    N: int
    L: float = 2 * math.pi

    def __post_init__(self):
        if self.N < 16 or self.N % 2:
            raise ValueError("grid needs an even number of points, at least 16")
        if not self.L > 0:
            raise ValueError("domain length must be positive")

    @property
    def dx(self):
        return self.L / self.N

    @property
    def x(self):
        return np.arange(self.N) * self.dx


def stencil_derivative(f, dx, order):
    """4th-order central periodic difference of order 1..4."""
    r = lambda k: np.roll(f, -k)  # noqa: E731  f[j+k]
    if order == 0:
        return np.array(f, dtype=float)
    if order == 1:
        return (-r(2) + 8 * r(1) - 8 * r(-1) + r(-2)) / (12 * dx)
    if order == 2:
        return (-r(2) + 16 * r(1) - 30 * f + 16 * r(-1) - r(-2)) / (12 * dx**2)
    if order == 3:
        return (-r(3) + 8 * r(2) - 13 * r(1) + 13 * r(-1) - 8 * r(-2) + r(-3)) / (8 * dx**3)
    if order == 4:
        return (-r(3) + 12 * r(2) - 39 * r(1) + 56 * f - 39 * r(-1) + 12 * r(-2) - r(-3)) / (6 * dx**4)
    raise ValueError("stencils are provided up to the fourth derivative")


# -- grid evaluation of symbolic expressions ----------------------------------

def _bind(e, scenario):
    e = scenario.bind(e) if scenario is not None else normalize(e)
    return e


def _time_atoms(e):
    """AD atoms and applied functions; they are evaluated per time as scalars."""
    atoms = set(e.atoms(AD))
    for f in e.atoms(AppliedUndef):
        raise UnboundError(f"{f} has no closed form in this scenario")
    return sorted(atoms, key=sp.default_sort_key)


def compile_eval(e, scenario=None):
    """Callable (t, state, dx) -> per-point values of ``e`` (t-order 0)."""
    e = _bind(sp.sympify(e), scenario)
    if jet_order(e)[1] > 0:
        raise ValueError("compile_eval needs an expression without t-derivatives")
    js = jets_in(e, U)
    orders = [j.m for j in js]
    if any(m > 4 for m in orders):
        raise ValueError("stencils are provided up to the fourth derivative")
    ad = _time_atoms(e)
    dummies = [sp.Dummy(f"ad{i}") for i in range(len(ad))]
    e = e.xreplace(dict(zip(ad, dummies)))
    free = e.free_symbols - {j.symbol for j in js} - {x, t} - set(dummies)
    if free:
        name = sorted(s.name for s in free)[0]
        raise UnboundError(f"{name} is not bound")
    fn = sp.lambdify([x, t, *[j.symbol for j in js], *dummies], e, "numpy")

    def evaluate(time, state, dx, xs=None):
        state = np.asarray(state, dtype=float)
        if xs is None:
            xs = np.arange(state.size) * dx
        derivs = [stencil_derivative(state, dx, m) for m in orders]
        advals = [eval_num(a, ParamEnv({"t": time})) for a in ad]
        out = fn(xs, time, *derivs, *advals)
        return np.broadcast_to(np.asarray(out, dtype=float), state.shape).copy()

    evaluate.expr = e
    return evaluate


# -- time stepping ------------------------------------------------------------

@njit(cache=True, fastmath=False)
def _rhs(v, a, b, c, q, dx, g, pad, sq, cu, out):
    # pad holds v with three ghost cells on each side (periodic wrap)
    n = v.size
    for j in range(n):
        pad[j + 3] = v[j]
    for j in range(3):
        pad[j] = v[n - 3 + j]
        pad[n + 3 + j] = v[j]
    for j in range(n + 6):
        pj = pad[j]
        sq[j] = pj * pj
        cu[j] = pj * pj * pj
    s1 = 1.0 / (12.0 * dx)
    s3 = 1.0 / (8.0 * dx**3)
    for j in range(n):
        i = j + 3
        d1 = (-pad[i + 2] + 8.0 * pad[i + 1] - 8.0 * pad[i - 1] + pad[i - 2]) * s1
        d1sq = (-sq[i + 2] + 8.0 * sq[i + 1] - 8.0 * sq[i - 1] + sq[i - 2]) * s1
        d1cu = (-cu[i + 2] + 8.0 * cu[i + 1] - 8.0 * cu[i - 1] + cu[i - 2]) * s1
        d3 = (-pad[i + 3] + 8.0 * pad[i + 2] - 13.0 * pad[i + 1] + 13.0 * pad[i - 1]
              - 8.0 * pad[i - 2] + pad[i - 3]) * s3
        vj = pad[i]
        quad = 0.5 * (vj * d1 + 0.5 * d1sq)
        cub = 0.5 * (sq[i] * d1 + d1cu / 3.0)
        out[j] = -(a * quad + c * cub + b * d3 + q * vj) + g[j]


@njit(cache=True)
def _rk4(v, dt, nsteps, A, B, C, Q, G, dx, limit):
    """Advance ``nsteps``; coefficient rows at index 2i (t_i), 2i+1 (midpoint),
    2i+2 (t_{i+1}). Returns the number of completed steps."""
    n = v.size
    k1 = np.empty(n)
    k2 = np.empty(n)
    k3 = np.empty(n)
    k4 = np.empty(n)
    w = np.empty(n)
    pad = np.empty(n + 6)
    sq = np.empty(n + 6)
    cu = np.empty(n + 6)
    for i in range(nsteps):
        m = 2 * i
        _rhs(v, A[m], B[m], C[m], Q[m], dx, G[m], pad, sq, cu, k1)
        for j in range(n):
            w[j] = v[j] + 0.5 * dt * k1[j]
        _rhs(w, A[m + 1], B[m + 1], C[m + 1], Q[m + 1], dx, G[m + 1], pad, sq, cu, k2)
        for j in range(n):
            w[j] = v[j] + 0.5 * dt * k2[j]
        _rhs(w, A[m + 1], B[m + 1], C[m + 1], Q[m + 1], dx, G[m + 1], pad, sq, cu, k3)
        for j in range(n):
            w[j] = v[j] + dt * k3[j]
        _rhs(w, A[m + 2], B[m + 2], C[m + 2], Q[m + 2], dx, G[m + 2], pad, sq, cu, k4)
        big = 0.0
        for j in range(n):
            v[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
            a = abs(v[j])
            if not a <= limit:
                big = a if a == a else np.inf
        if big > 0.0:
            return i + 1
    return nsteps


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    grid: Grid
    scenario: object = field(repr=False)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=float)
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("trajectory times must increase strictly")

    @property
    def final(self):
        return self.states[-1]


def _coefficient_fns(scenario):
    fns = {}
    for name, expr in scenario.instantiate().coefficients.items():
        expr = normalize(expr)
        atoms = _time_atoms(expr)
        free = expr.free_symbols - {t}
        if atoms or free or x in expr.free_symbols:
            if free:
                raise UnboundError(f"{sorted(s.name for s in free)[0]} is not bound in coefficient {name}")
            fns[name] = np.vectorize(lambda tv, e=expr: eval_num(e, ParamEnv({"t": float(tv)})))
        else:
            f = sp.lambdify(t, expr, "numpy")
            fns[name] = lambda tv, f=f: np.broadcast_to(np.asarray(f(tv), dtype=float), np.shape(tv)).copy()
    return fns


def _initial_state(scenario, grid, initial):
    init = initial if initial is not None else scenario.initial
    if init is None:
        raise ValueError("no initial condition given")
    if callable(init):
        return np.asarray(init(grid.x), dtype=float).copy()
    expr = scenario.apply_params(sp.sympify(init))
    f = sp.lambdify([x, t], expr, "numpy")
    return np.broadcast_to(np.asarray(f(grid.x, 0.0), dtype=float), (grid.N,)).copy()


def simulate(scenario, grid, t_span, dt_policy=None, *, initial=None, c_safe=0.4,
             n_store=101, forcing=None, chunk=4000, blowup=1e6, min_dt=1e-12):
    """Integrate u_t = Delta (+ forcing(x, t)) from t_span[0] to t_span[1]."""
    t0, t1 = map(float, t_span)
    if not t1 > t0:
        raise ValueError("t_span must be increasing")
    fns = _coefficient_fns(scenario)
    probe = np.linspace(t0, t1, 257)
    bmax = float(np.max(np.abs(fns["B"](probe))))
    if not np.isfinite(bmax):
        raise TimeStepError("B is not finite on the time span")
    dt = c_safe * grid.dx**3 / bmax if bmax > 0 else (t1 - t0)
    if dt_policy is not None:
        dt = min(dt, float(dt_policy))
    if not dt >= min_dt:
        raise TimeStepError(f"time step {dt:.3e} underflows the limit {min_dt:.1e}")
    nsteps = max(1, math.ceil((t1 - t0) / dt - 1e-9))
    dt = (t1 - t0) / nsteps
    store_at = np.unique(np.round(np.linspace(0, nsteps, max(2, n_store))).astype(np.int64))

    v = _initial_state(scenario, grid, initial)
    xs = grid.x
    times, states = [t0], [v.copy()]
    done = 0
    for target in store_at[1:]:
        while done < target:
            m = int(min(chunk, target - done))
            ts = t0 + (done + np.arange(2 * m + 1) / 2.0) * dt
            co = [np.ascontiguousarray(fns[k](ts), dtype=float) for k in ("A", "B", "C", "Q")]
            if forcing is not None:
                G = np.ascontiguousarray(forcing(xs[None, :], ts[:, None]), dtype=float)
                G = np.broadcast_to(G, (ts.size, grid.N)).copy()
            else:
                G = np.zeros((ts.size, grid.N))
            k = _rk4(v, dt, m, *co, G, grid.dx, blowup)
            done += k
            if k < m or not np.all(np.isfinite(v)) or np.max(np.abs(v)) > blowup:
                last = t0 + (done - 1) * dt
                raise BlowupError(f"max|u| exceeded {blowup:g}", last_time=last)
        times.append(t0 + done * dt)
        states.append(v.copy())
    meta = {"dt": dt, "steps": nsteps, "scheme": "RK4", "space": "central4-split",
            "c_safe": c_safe, "N": grid.N, "L": grid.L}
    return Trajectory(np.array(times), np.array(states), grid, scenario, meta)


# -- conserved integrals --------------------------------------------------------

@dataclass(frozen=True)
class DriftSeries:
    times: np.ndarray
    integrals: np.ndarray
    max_drift: float

    def relative(self):
        return np.abs(self.integrals - self.integrals[0]) / max(1.0, abs(self.integrals[0]))


def _integral(values, dx):
    # trapezoid rule on a periodic grid
    return float(np.sum(values) * dx)


def conserved_drift(traj, Tt):
    """Trapezoid integral of T^t at every stored time and its max relative drift."""
    ev = compile_eval(Tt, traj.scenario)
    dx = traj.grid.dx
    ints = np.array([_integral(ev(tm, st, dx), dx) for tm, st in zip(traj.times, traj.states)])
    drift = float(np.max(np.abs(ints - ints[0])) / max(1.0, abs(ints[0])))
    return DriftSeries(traj.times, ints, drift)


def predicted_change(traj, Tt):
    """Time integral of the source int D_t T^t dx (on solutions) along the run.

    Zero for a conserved density; for a non-conserved one it predicts
    int T^t(t) dx - int T^t(0) dx.
    """
    src = eliminate_ut(total_t(Tt), traj.scenario.instantiate())
    ev = compile_eval(src, traj.scenario)
    dx = traj.grid.dx
    rate = np.array([_integral(ev(tm, st, dx), dx) for tm, st in zip(traj.times, traj.states)])
    steps = np.diff(traj.times) * (rate[1:] + rate[:-1]) / 2
    return np.concatenate([[0.0], np.cumsum(steps)])


# -- manufactured solutions -------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceResult:
    Ns: tuple
    errors: tuple
    orders: tuple

    @property
    def min_order(self):
        return min(self.orders) if self.orders else float("nan")


def _forcing(scenario, u_star):
    sc = scenario.instantiate()
    us = sp.sympify(u_star)
    g = (sp.diff(us, t) + sc.A * us * sp.diff(us, x) + sc.C * us**2 * sp.diff(us, x)
         + sc.B * sp.diff(us, x, 3) + sc.Q * us)
    g = normalize(g)
    if g.atoms(AD) or g.atoms(AppliedUndef):
        raise UnboundError("forcing needs closed-form coefficients")
    return sp.lambdify([x, t], g, "numpy")


def convergence_study(scenario, u_star, Ns=(64, 128, 256, 512), t_end=0.05, L=2 * math.pi, **kw):
    """Run the forced problem with exact solution ``u_star`` on each grid and
    report max errors at ``t_end`` and log2 error ratios."""
    if normalize(scenario.apply_params(scenario.B)) == 0:
        raise ParamError("B≠0 violated: the family requires a dispersive term")
    g = _forcing(scenario, u_star)
    exact = sp.lambdify([x, t], scenario.apply_params(sp.sympify(u_star)), "numpy")
    errors = []
    for N in Ns:
        grid = Grid(N, L)
        init = lambda xs: np.broadcast_to(exact(xs, 0.0), xs.shape)  # noqa: E731
        traj = simulate(scenario, grid, (0.0, t_end), initial=init, n_store=2, forcing=g, **kw)
        ref = np.broadcast_to(exact(grid.x, t_end), (N,))
        errors.append(float(np.max(np.abs(traj.final - ref))))
    orders = tuple(math.log2(a / b) if a > 0 and b > 0 else float("inf")
                   for a, b in zip(errors, errors[1:]))
    return ConvergenceResult(tuple(Ns), tuple(errors), orders)


# -- export -----------------------------------------------------------------------

def write_trajectory(traj, path, every=1):
    """Plain text, one row per (t, x, u)."""
    xs = traj.grid.x
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# t x u\n")
        for tm, st in list(zip(traj.times, traj.states))[::every]:
            for xv, uv in zip(xs, st):
                fh.write(f"{tm:.10g} {xv:.10g} {uv:.17g}\n")


def write_drift_table(series, path):
    """Columns: label, t, integral, relative drift; one block per density."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# label t integral rel_drift\n")
        for label, ds in series.items():
            rel = ds.relative()
            for tm, val, d in zip(ds.times, ds.integrals, rel):
                fh.write(f"{label} {tm:.10g} {val:.17g} {d:.6e}\n")
