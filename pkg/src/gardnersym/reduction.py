"""Association of symmetries with conserved vectors, travelling-wave
canonical coordinates and double reduction to an ODE."""

from dataclasses import dataclass

import numpy as np
import sympy as sp
from scipy.integrate import solve_ivp

from .errors import ExplicitSError, NotAssociatedError, OrderError
from .expr import normalize, zero_test
from .jet import eliminate_ut, total_x, total_t
from .symbols import U, W, jets_in, r, s, t, x
from .symmetry import VectorField, prolonged_action

__all__ = [
    "CanonicalFrame", "association_residual", "is_associated", "to_canonical",
    "from_canonical", "ReducedODE", "reduced_ode", "travelling_wave_check",
]


@dataclass(frozen=True)
class CanonicalFrame:
    """r = x - c t, s = t, w(r) = u for the generator c d/dx + d/dt."""

    c: sp.Expr = sp.Symbol("c", real=True)

    def __post_init__(self):
        object.__setattr__(self, "c", sp.sympify(self.c))

    @property
    def generator(self):
        return VectorField(self.c, 1, 0)

    @property
    def r_expr(self):
        return x - self.c * t

    @property
    def s_expr(self):
        return t

    @property
    def jacobian(self):
        """J = D_t(r) D_x(s) - D_x(r) D_t(s)."""
        R, S = self.r_expr, self.s_expr
        return sp.diff(R, t) * sp.diff(S, x) - sp.diff(R, x) * sp.diff(S, t)

    def to_frame(self, expr):
        """u_{x^m t^n} -> (-c)^n w_{r^(m+n)}, x -> r + c s, t -> s."""
        expr = sp.sympify(expr)
        rules = {j.symbol: (-self.c) ** j.n * W.var(j.m + j.n) for j in jets_in(expr, U)}
        rules[x] = r + self.c * s
        rules[t] = s
        return normalize(expr.xreplace(rules))

    def from_frame(self, expr):
        """w_{r^m} -> u_{x^m}, r -> x - c t, s -> t."""
        expr = sp.sympify(expr)
        rules = {j.symbol: U.var(j.m) for j in jets_in(expr, W)}
        rules[r] = x - self.c * t
        rules[s] = t
        return normalize(expr.xreplace(rules))


def association_residual(gen, cv, ctx=None):
    """Components (i = t, i = x) of v(T^i) + T^i D_k xi^k - T^k D_k xi^i."""
    ctx = ctx if ctx is not None else cv.context
    Tt, Tx = cv.Tt, cv.Tx
    xi, tau = gen.xi, gen.tau
    res_t = prolonged_action(gen, Tt) + Tt * total_x(xi) - Tx * total_x(tau)
    res_x = prolonged_action(gen, Tx) + Tx * total_t(tau) - Tt * total_t(xi)
    if ctx is not None:
        return eliminate_ut(res_t, ctx), eliminate_ut(res_x, ctx)
    return normalize(res_t), normalize(res_x)


def is_associated(gen, cv, ctx=None, **zero_kw):
    return all(zero_test(p, **zero_kw).is_zero for p in association_residual(gen, cv, ctx))


def to_canonical(cv, frame, *, require_association=False):
    """(T^s, T^r) of a conserved vector in the frame's canonical coordinates."""
    if require_association and not is_associated(frame.generator, cv):
        raise NotAssociatedError(f"c d/dx + d/dt with c = {frame.c} is not associated to the vector")
    R, S = frame.r_expr, frame.s_expr
    J = frame.jacobian
    Ts = (cv.Tt * sp.diff(S, t) + cv.Tx * sp.diff(S, x)) / J
    Tr = (cv.Tt * sp.diff(R, t) + cv.Tx * sp.diff(R, x)) / J
    return frame.to_frame(Ts), frame.to_frame(Tr)


def from_canonical(Ts, Tr, frame):
    """Inverse of :func:`to_canonical` on x-derivative jets."""
    R, S = frame.r_expr, frame.s_expr
    J = frame.jacobian
    a, b = sp.diff(S, t) / J, sp.diff(S, x) / J
    c_, d = sp.diff(R, t) / J, sp.diff(R, x) / J
    det = a * d - b * c_
    Ts, Tr = frame.from_frame(Ts), frame.from_frame(Tr)
    Tt = (d * Ts - b * Tr) / det
    Tx = (-c_ * Ts + a * Tr) / det
    return normalize(Tt), normalize(Tx)


@dataclass(frozen=True)
class ReducedODE:
    """T^r - const = 0 and, when autonomous of order 2, p dp/dw = rhs(w, p)."""

    lhs: sp.Expr
    order: int
    first_order: sp.Expr = None
    excluded: sp.Expr = None

    def __str__(self):
        return f"{self.lhs} = 0"


P_SYM = sp.Symbol("p", real=True)


def reduced_ode(Tr, const):
    """Set T^r = const; an autonomous second-order equation also gets its
    w_r = p(w) form."""
    Tr = normalize(Tr)
    if s in Tr.free_symbols:
        raise ExplicitSError("T^r still depends on s; the frame generator is not associated")
    lhs = normalize(Tr - const)
    js = jets_in(lhs, W)
    order = max((j.m for j in js), default=0)
    first, excluded = None, None
    if r not in lhs.free_symbols:
        w, w_r, w_rr = W.var(), W.var(1), W.var(2)
        if order == 1:
            sol = sp.solve(lhs, w_r)
            first = normalize(sol[0]) if len(sol) == 1 else None
        elif order == 2:
            a = sp.diff(lhs, w_rr)
            if w_rr in a.free_symbols:
                raise OrderError("highest derivative enters nonlinearly")
            b = normalize(lhs - a * w_rr)
            first = sp.together(normalize(-b.xreplace({w_r: P_SYM})) / a)
            excluded = a
    return ReducedODE(lhs, order, first, excluded)


def travelling_wave_check(ode, c, w0, p0, sample, *, pde_rhs=None, rtol=1e-10, atol=1e-12, h=1e-3):
    """Integrate the reduced ODE and put u = w(x - c t) back into the PDE.

    ``ode.first_order`` is G(w, p) = p dp/dw, so w'' = G along a solution and
    the system w' = p, p' = G is integrated both ways from r = 0 with DOP853.
    At the ``sample`` (x, t) points w' and w''' come from 4th-order central
    differences of the dense output (w''' through w'' = G). The residual is
    u_t - Delta with u_t = -c w'; ``pde_rhs(u, u_x, u_xxx)`` overrides
    Delta = -(u u_x + u^2 u_x + u_xxx). Returns the maximum absolute residual.
    """
    w = W.var()
    G = sp.lambdify((w, P_SYM), ode.first_order, "numpy")
    xs, ts = np.asarray(sample[0], float), np.asarray(sample[1], float)
    rs = xs - float(c) * ts
    lo, hi = float(rs.min()) - 4 * h, float(rs.max()) + 4 * h

    def f(_, y):
        return [y[1], G(y[0], y[1])]

    sols = []
    for end in (lo, hi):
        if end == 0:
            continue
        sol = solve_ivp(f, (0.0, end), [w0, p0], method="DOP853", rtol=rtol, atol=atol, dense_output=True)
        if sol.status != 0:
            raise RuntimeError(f"reduced ODE integration failed: {sol.message}")
        sols.append((min(0.0, end), max(0.0, end), sol.sol))

    def W_(rr):
        rr = np.atleast_1d(rr)
        out = np.empty((2, rr.size))
        for i, q in enumerate(rr):
            for a, b, fn in sols:
                if a <= q <= b:
                    out[:, i] = fn(q)
                    break
        return out

    def d1(fn, rr):
        return (-fn(rr + 2 * h) + 8 * fn(rr + h) - 8 * fn(rr - h) + fn(rr - 2 * h)) / (12 * h)

    wv = lambda rr: W_(rr)[0]  # noqa: E731
    wpp = lambda rr: G(*W_(rr))  # noqa: E731
    u = wv(rs)
    u_r = d1(wv, rs)
    u_rrr = d1(wpp, rs)
    if pde_rhs is None:
        delta = -(u * u_r + u**2 * u_r + u_rrr)
    else:
        delta = pde_rhs(u, u_r, u_rrr)
    residual = -float(c) * u_r - delta
    return float(np.max(np.abs(residual)))
