"""Adjoint of the Gardner family and its nonlinear self-adjointness.

Builds the formal Lagrangian v*F, takes its variational derivative, and checks
that the substitution v = c1 e^{int 2Q} u + c2 e^{int Q} turns the adjoint into
a multiple of the equation itself, first for abstract coefficients and then for
a few explicit damping laws.
"""

import sympy as sp

from gardnersym.adjoint import adjoint_equation, selfadjoint_check, theorem_phi
from gardnersym.parser import render
from gardnersym.scenario import Scenario
from gardnersym.symbols import t, u

family = Scenario.abstract()
print("F  =", render(family.F))
print("F* =", render(adjoint_equation(family.F)))

res = selfadjoint_check(family.F, theorem_phi())
print("\nv = phi gives F*|phi = lambda F with lambda =", render(res.lam), f"[{res.mode}]")

print("\nexplicit damping laws:")
for Q in (sp.S(0), sp.Rational(1, 5), 1 / (1 + t), sp.exp(-t)):
    sc = Scenario.constant(Q=Q)
    r = selfadjoint_check(sc.F, u)
    print(f"  Q = {render(Q):<12} phi = u   self-adjoint: {r.is_zero}")
