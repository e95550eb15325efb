"""Formal Lagrangian, adjoint equation and nonlinear self-adjointness."""

from dataclasses import dataclass

import sympy as sp

from .errors import NoMatchError
from .expr import normalize, zero_test
from .jet import euler, total_derivative
from .symbols import U, V, jets_in, u_t, u_xxx, v

__all__ = [
    "formal_lagrangian", "adjoint_equation", "substitute_v", "selfadjoint_check",
    "SelfAdjointResult", "theorem_phi", "theorem_lambda",
]


def formal_lagrangian(F):
    return normalize(v * F)


def adjoint_equation(F):
    """F* = delta(vF)/delta u, v being an independent differential function."""
    return euler(formal_lagrangian(F), U)


def substitute_v(expr, phi):
    """Put v = phi(x, t, u) into ``expr``; v_{x^m t^n} becomes D_x^m D_t^n phi."""
    expr = sp.sympify(expr)
    phi = sp.sympify(phi)
    rules = {}
    for j in jets_in(expr, V):
        d = phi
        for _ in range(j.m):
            d = total_derivative(d, "x")
        for _ in range(j.n):
            d = total_derivative(d, "t")
        rules[j.symbol] = d
    return normalize(expr.xreplace(rules))


@dataclass(frozen=True)
class SelfAdjointResult:
    phi: sp.Expr
    lam: sp.Expr
    residual: sp.Expr
    is_zero: bool
    mode: str
    max_residual: float = 0.0

    def __bool__(self):
        return self.is_zero

    @property
    def weak(self):
        """Flags for phi_u and phi_x being nonzero."""
        from .symbols import u, x

        return {"phi_u": sp.diff(self.phi, u) != 0, "phi_x": sp.diff(self.phi, x) != 0}


def selfadjoint_check(F, phi, **zero_kw):
    """Look for lambda with F*|_{v=phi} = lambda F.

    lambda is read off the u_t coefficient and must agree with the u_xxx
    coefficient; the residual F*|_{v=phi} - lambda F decides the rest.
    """
    phi = normalize(phi)
    if phi == 0:
        raise ValueError("phi must be nonzero")
    F = normalize(F)
    star = substitute_v(adjoint_equation(F), phi)
    a_t = sp.diff(F, u_t)
    lam = normalize(sp.diff(star, u_t) / a_t) if a_t != 0 else sp.S.Zero
    a_3 = sp.diff(F, u_xxx)
    if a_3 != 0:
        lam3 = sp.diff(star, u_xxx) / a_3
        check = zero_test(lam - lam3, **zero_kw)
        if not check.is_zero:
            raise NoMatchError(
                f"the u_t coefficient gives lambda = {lam} but the u_xxx coefficient gives {normalize(lam3)}")
    residual = normalize(star - lam * F)
    check = zero_test(residual, **zero_kw)
    return SelfAdjointResult(phi, lam, residual, check.is_zero, check.mode, check.residual)


def theorem_phi(Q=None, c1=None, c2=None):
    """phi = c1 e^{int 2Q} u + c2 e^{int Q} for the Gardner family."""
    from .symbols import AD, param, time_function, u

    Q = time_function("Q") if Q is None else sp.sympify(Q)
    c1 = param("c1") if c1 is None else c1
    c2 = param("c2") if c2 is None else c2
    return normalize(c1 * sp.exp(AD(2 * Q)) * u + c2 * sp.exp(AD(Q)))


def theorem_lambda(Q=None, c1=None):
    from .symbols import AD, param, time_function

    Q = time_function("Q") if Q is None else sp.sympify(Q)
    c1 = param("c1") if c1 is None else c1
    return normalize(-c1 * sp.exp(AD(2 * Q)))
