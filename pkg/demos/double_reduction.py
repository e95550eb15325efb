"""Double reduction of a conserved vector to a travelling-wave ODE.

The vector generated by the symmetry of the example equation is associated
with c d/dx + d/dt; in canonical coordinates r = x - ct its flux T^r is
constant, which is a second-order ODE for w(r). Integrating that ODE and
substituting back gives an exact travelling wave of the PDE.
"""

import numpy as np

from gardnersym import displays as D
from gardnersym.conslaw import ConservedVector
from gardnersym.expr import substitute
from gardnersym.parser import render
from gardnersym.reduction import (CanonicalFrame, association_residual, reduced_ode,
                                  to_canonical, travelling_wave_check)
from gardnersym.symbols import param

sc = D.example_scenario()
Tt, Tx = D.example_vector()
pick = {param("k1"): 1, D.c1: 1, D.c2: 0}
cv = ConservedVector(substitute(Tt, pick), substitute(Tx, pick), sc)

frame = CanonicalFrame()
print("association with c d/dx + d/dt:", association_residual(frame.generator, cv))
_, Tr = to_canonical(cv, frame)
print("T^r =", render(Tr))
ode = reduced_ode(4 * Tr, D.kk)
print("ODE:", render(ode.lhs), "= 0")
print("p dp/dw =", render(ode.first_order))

c = 1
_, Tr1 = to_canonical(cv, CanonicalFrame(c))
wave = reduced_ode(4 * Tr1, 0)
rng = np.random.default_rng(1)
sample = (rng.uniform(-1, 1, 200), rng.uniform(0, 1, 200))
print(f"\nmax PDE residual of u = w(x - t): {travelling_wave_check(wave, c, 0.1, 0.0, sample):.2e}")
