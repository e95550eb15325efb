"""Conservation laws: multipliers, homotopy densities, fluxes, Ibragimov
conserved vectors and equivalence modulo trivial conservation laws."""

from dataclasses import dataclass, field

import sympy as sp

from .adjoint import formal_lagrangian, selfadjoint_check, substitute_v
from .errors import NonPolynomialError, NotExactError, NotSelfAdjointError, OrderError, ResidueError
from .expr import normalize, zero_test
from .jet import (eliminate_ut, euler, higher_euler, invert_total_x, jet_order,
                  total_derivative, total_x, total_t)
from .symbols import U, jets_in, u

__all__ = [
    "ConservedVector", "multiplier_residual", "check_multiplier", "helmholtz_conditions",
    "density_from_multiplier", "flux_from_density", "ibragimov_vector",
    "divergence_residual", "equivalent_densities", "canonical_density",
    "characteristic_residual", "jet_free_part",
]


@dataclass(frozen=True)
class ConservedVector:
    """Density/flux pair (T^t, T^x) for the equation of ``context``."""

    Tt: sp.Expr
    Tx: sp.Expr
    context: object = field(repr=False, default=None)
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "Tt", normalize(self.Tt))
        object.__setattr__(self, "Tx", normalize(self.Tx))

    def residual(self):
        return divergence_residual(self)

    def is_conserved(self, **zero_kw):
        return zero_test(self.residual(), **zero_kw).is_zero


def _check_multiplier_shape(lam):
    m, n = jet_order(lam)
    if n > 0:
        raise OrderError("a multiplier must not depend on t-derivatives of u")
    if m > 2:
        raise OrderError("multipliers are limited to second order in x")


def multiplier_residual(lam, F):
    """delta/delta u (Lambda F); zero exactly when Lambda is a multiplier."""
    lam = normalize(lam)
    _check_multiplier_shape(lam)
    return euler(lam * F)


def check_multiplier(lam, F, **zero_kw):
    return zero_test(multiplier_residual(lam, F), **zero_kw)


def helmholtz_conditions(lam):
    """Split form d Lambda/d u_i = (-1)^i E^(i)(Lambda), i = 0, 1, 2.

    Redundant with :func:`multiplier_residual`; reported as a diagnostic.
    """
    lam = normalize(lam)
    _check_multiplier_shape(lam)
    out = []
    for i in range(3):
        e = euler(lam) if i == 0 else higher_euler(lam, i)
        out.append((f"Lambda_{U.name(i, 0)}", normalize(sp.diff(lam, U.var(i)) - (-1) ** i * e)))
    return out


def _jet_monomials(p):
    gens = [j.symbol for j in jets_in(p, U)]
    if not gens:
        return gens, {(): p}
    try:
        poly = sp.Poly(p, *gens)
    except sp.PolynomialError as exc:
        raise NonPolynomialError(f"{p} is not polynomial in the jet variables") from exc
    return gens, {m: c.as_expr() for m, c in poly.terms()}


def density_from_multiplier(lam):
    """T^t = int_0^1 u Lambda(lambda u, lambda u_x, ...) d lambda, termwise."""
    lam = normalize(lam)
    _check_multiplier_shape(lam)
    gens, terms = _jet_monomials(normalize(u * lam))
    out = sp.S.Zero
    for monom, coeff in terms.items():
        if jets_in(coeff, U):
            raise NonPolynomialError("multiplier is not polynomial in the jet variables")
        deg = sum(monom)
        out += coeff * sp.Mul(*(g**e for g, e in zip(gens, monom))) / deg
    return normalize(out)


def flux_from_density(Tt, ctx):
    """T^x = -D_x^{-1}(D_t T^t on solutions)."""
    return normalize(-invert_total_x(eliminate_ut(total_t(Tt), ctx)))


def divergence_residual(cv, ctx=None):
    ctx = ctx if ctx is not None else cv.context
    return eliminate_ut(total_t(cv.Tt) + total_x(cv.Tx), ctx)


def characteristic_residual(cv, lam, F):
    """euler(D_t T^t + D_x T^x - Lambda F) off solutions (u_t kept)."""
    return euler(total_t(cv.Tt) + total_x(cv.Tx) - lam * F)


def equivalent_densities(T1, T2, ctx):
    """True when T1 - T2 is a total x-derivative on solutions."""
    diff = eliminate_ut(normalize(T1 - T2), ctx)
    try:
        invert_total_x(diff)
    except (NotExactError, ResidueError):
        return False
    return True


def jet_free_part(p):
    p = normalize(p)
    js = jets_in(p, U)
    return normalize(p.xreplace({j.symbol: 0 for j in js})) if js else p


def canonical_density(Tt):
    """Split T^t (t-order 0) as T' + D_x P with T' the homotopy density of
    euler(T^t) plus the jet-free part of T^t. Returns (T', P)."""
    Tt = normalize(Tt)
    lam = euler(Tt)
    base = density_from_multiplier(lam) if lam != 0 else sp.S.Zero
    canon = normalize(base + jet_free_part(Tt))
    P = invert_total_x(normalize(Tt - canon))
    return canon, P


def _ibragimov_raw(gen, F):
    """Conserved vector of the formal Lagrangian, before v = phi."""
    L = formal_lagrangian(F)
    W = gen.characteristic
    Tt = gen.tau * L + W * sp.diff(L, U.var(0, 1))
    q = jet_order(F)[0]
    Tx = gen.xi * L
    dW = W
    for s in range(q):
        bracket = sp.S.Zero
        for j in range(s + 1, q + 1):
            term = sp.diff(L, U.var(j))
            for _ in range(j - s - 1):
                term = -total_derivative(term, "x")
            bracket += term
        Tx += dW * bracket
        dW = total_derivative(dW, "x")
    return normalize(Tt), normalize(Tx)


def ibragimov_vector(gen, ctx, phi, *, canonical=True, **zero_kw):
    """Conserved vector of a symmetry generator for a nonlinearly self-adjoint
    member of the family with substitution v = phi.

    The raw vector is evaluated at v = phi, u_t is eliminated and, with
    ``canonical``, the D_x-exact part of the density is moved into the flux.
    """
    F = ctx.F
    check = selfadjoint_check(F, phi, **zero_kw)
    if not check.is_zero:
        raise NotSelfAdjointError(f"phi = {phi} does not make the equation self-adjoint; residual {check.residual}")
    Tt, Tx = _ibragimov_raw(gen, F)
    Tt = eliminate_ut(substitute_v(Tt, phi), ctx)
    Tx = eliminate_ut(substitute_v(Tx, phi), ctx)
    if canonical:
        Tt, P = canonical_density(Tt)
        Tx = normalize(Tx + eliminate_ut(total_t(P), ctx))
    return ConservedVector(Tt, Tx, ctx, label="ibragimov")
