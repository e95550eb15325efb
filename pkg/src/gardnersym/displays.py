"""Published closed forms used as golden references: multipliers, densities,
fluxes, conserved vectors and the travelling-wave reduction example.

Every entry is a plain expression builder; comparisons are always made
modulo trivial conservation laws, never by string equality.
"""

import sympy as sp

from .scenario import Scenario
from .symbols import W, param, t, u, u_x, u_xx, x
from .symmetry import CATALOG, VectorField, f1
from .symmetry import P as _P

__all__ = [
    "c1", "c2", "multiplier_11", "density_11", "flux_11", "multiplier_12",
    "density_12", "flux_12", "vector_2x", "phi_2x", "example_scenario",
    "example_generator", "example_vector", "example_Tr", "example_ode",
    "example_first_order", "mass_energy_specializations", "ANCHORS", "kk", "c",
]

c1, c2 = param("c1"), param("c2")
k, k1, k2, k3, k4 = (_P[n] for n in ("k", "k1", "k2", "k3", "k4"))
a0, a1, b0, c0, d0 = (_P[n] for n in ("a0", "a1", "b0", "c0", "d0"))
c = param("c")
kk = param("kk")  # integration constant of the reduced ODE

ANCHORS = {
    "adjoint": "Theorem 1, (eqad)",
    "selfadjoint": "Theorem 2, (hs)/(eqlambda)",
    "multiplier_11": "Subcase 1.1 multiplier",
    "multiplier_12": "Subcase 1.2 multiplier",
    "density_12": "Subcase 1.2 density",
    "flux_11a": "Subcase 1.1 flux, (Apc2) branch",
    "flux_11b": "Subcase 1.1 flux, (Anc2) branch",
    "flux_12": "Subcase 1.2 flux",
    "vector_21": "Subcase 2.1, (lc1)",
    "vector_22": "Subcase 2.2 conserved vector",
    "mass": "(lc1) with k1=1, c2=1/2: conserved mass",
    "energy": "(lc1) with k1=1, c1=2/3: energy",
    "example_symmetry": "(example)/(symmetry)",
    "example_vector": "(conservedvector)",
    "association": "(associated)",
    "Tr": "(newflux) T^r display",
    "ode": "(odeexample)",
    "first_order": "first-order p(w) form",
    "determining": "(sis)",
    "determining_case2": "(eq1Mol)-(eq4Mol)",
    "characterization": "(var), homotopy density",
    "numerics": "(ed1), (lc1)",
    "travelling_wave": "(example)/(odeexample)",
}


def multiplier_11():
    F1 = f1()
    return sp.exp(-k * t / 2) * F1 ** (2 * d0 / (3 * k * k1) + 1) * (c1 + c2 * sp.exp(-k * t / 2) * u)


def density_11():
    F1 = f1()
    return sp.exp(-k * t / 2) * F1 ** (2 * d0 / (3 * k * k1) + 1) * u * (c1 + c2 / 2 * sp.exp(-k * t / 2) * u)


def flux_11(branch):
    F1 = f1()
    e = d0 / (3 * k * k1)
    h = sp.exp(k * t / 2)
    half, third, sixth = sp.Rational(1, 2), sp.Rational(2, 3), sp.Rational(1, 6)
    head = 3 * c2 * F1 ** (e + 1) * (u**4 / h + 2 * b0 * h * (2 * u * u_xx - u_x**2))
    if branch == "a":
        body = (head + 4 * (a0 * c2 + c1) * u**3 * F1 + 6 * a0 * c1 * u**2 * h * F1 ** (-e)
                + 12 * b0 * c1 * u_xx * sp.exp(k * t) * F1**half
                + 4 * a1 * k / (2 * d0 + k * k1) * u**2
                * (2 * c2 * u * F1 ** (e + third) + 3 * c1 * h * F1**sixth))
    else:
        body = (head + 4 * c1 * F1**half * (u**3 + 3 * b0 * u_xx * sp.exp(k * t))
                + 6 * a0 * c1 * u**2 * h * F1**sixth + 4 * a0 * c2 * u**3 * F1 ** (e + third)
                - 4 * a1 * k / (2 * d0 + k * k1) * u**2 * (2 * c2 * u * F1**half + 3 * c1 * h))
    return sp.exp(-k * t / 2) / 12 * F1**e * body


def _tau12():
    return 3 * k1 * t + k3


def multiplier_12():
    tau = _tau12()
    p = d0 / (3 * k1)
    return tau**p * (c1 + c2 * tau**p * u)


def density_12():
    tau = _tau12()
    p = d0 / (3 * k1)
    return tau**p * u * (c1 + c2 / 2 * tau**p * u)


def flux_12():
    tau = _tau12()
    p = d0 / (3 * k1)
    third = sp.Rational(1, 3)
    return tau**p / 12 * (
        tau**p * (6 * b0 * c2 * (2 * u * u_xx - u_x**2) + 3 * c2 * u**4)
        + 6 * a0 * c1 * u**2 * tau ** (-p) + 6 * a1 * c1 * u**2 * tau ** (-third)
        + 4 * a1 * c2 * u**3 * tau ** (p - third) + 4 * c1 * (u**3 + 3 * b0 * u_xx) + 4 * a0 * c2 * u**3)


def phi_2x():
    """phi = c1 u + c2 (Q = 0)."""
    return c1 * u + c2


def vector_2x(case_id):
    """(T^t, T^x) displayed for Subcase 2.1 (base f1) or 2.2 (base tau)."""
    base = f1() if case_id == "2.1" else _tau12()
    pre = sp.exp(k * t) if case_id == "2.1" else sp.S.One
    Tt = (k3 * u + k2) * (c1 * u + c2) + k1 * u * (sp.Rational(3, 2) * c1 * u + 2 * c2)
    q1 = 2 * k3**2 + 5 * k1 * k3 + 3 * k1**2
    q2 = k3**2 + 3 * k1 * k3 + 2 * k1**2
    Tx = pre / (12 * (k3 + k1)) * (
        6 * b0 * c1 * (2 * u * u_xx - u_x**2) * q1
        + 12 * b0 * u_xx * (c2 * q2 + c1 * (k3 + k1))
        + base ** (-k3 / (3 * k1) - 1) * (4 * a0 * c1 * u**3 * q1 + 6 * a0 * c2 * u**2 * q2
                                          + 6 * a0 * c1 * k2 * u**2 * (k3 + k1))
        + base ** (-2 * k3 / (3 * k1) - sp.Rational(4, 3)) * (
            3 * c0 * c1 * u**4 * q1 + 4 * c0 * c1 * k1 * u**3 * (5 * k3 + 7 * k2)
            + 4 * c0 * c2 * u**3 * q2 + 12 * c0 * k2 * u**2 * (c2 * k3 + c1 * k2 + 2 * c2 * k1)))
    return Tt, Tx


def mass_energy_specializations():
    """Parameter choices in the 2.x density giving mass and energy."""
    return {
        "mass": ({"k1": 1, "c2": sp.Rational(1, 2), "k2": 0, "k3": 0, "c1": 0}, u),
        "energy": ({"k1": 1, "c1": sp.Rational(2, 3), "k2": 0, "k3": 0, "c2": 0}, u**2),
    }


# -- travelling-wave example -------------------------------------------------

def example_scenario():
    """u_t + u u_x + u^2 u_x + u_xxx = 0."""
    return Scenario.constant(1, 1, 1, 0, name="example")


def example_generator():
    return VectorField(k1 * x - k1 / 2 * t, 3 * k1 * t + k2, -k1 * u - k1 / 2)


def example_vector():
    Tt = -c1 * k1 / 2 * u**2 - c1 * k1 / 2 * u - c2 * k1 / 2
    Tx = (-c1 * k1 * u * u_xx - c1 * k1 / 2 * u_xx + c1 * k1 / 2 * u_x**2
          - c1 * k1 / 4 * u**4 - c1 * k1 / 2 * u**3 - c1 * k1 / 4 * u**2)
    return Tt, Tx


def example_Tr():
    w, w_r, w_rr = W.var(), W.var(1), W.var(2)
    return sp.Rational(1, 4) * ((4 * w + 2) * w_rr - 2 * w_r**2 + w**4 + 2 * w**3
                                + (1 - 2 * c) * w**2 - 2 * c * w)


def example_ode():
    """Left side minus right side of the reduced second-order ODE."""
    w, w_r, w_rr = W.var(), W.var(1), W.var(2)
    return (4 * w + 2) * w_rr - 2 * w_r**2 - 2 * c * w + (1 - 2 * c) * w**2 + 2 * w**3 + w**4 - kk


def example_first_order():
    """p dp/dw as a function of (w, p) for w_r = p(w)."""
    w = W.var()
    p = sp.Symbol("p", real=True)
    return (kk + 2 * p**2 + 2 * c * w + (2 * c - 1) * w**2 - 2 * w**3 - w**4) / (4 * w + 2)


def catalog_scenario(case_id):
    return CATALOG[case_id].scenario()
