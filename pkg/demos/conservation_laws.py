"""Multipliers, densities and fluxes.

For the constant-coefficient equation the multipliers 1 and u give the mass and
energy laws; adding damping breaks both, and the residual says by how much.
The Subcase 1.2 multiplier is then turned into a density with the homotopy
operator and the flux is recovered by inverting D_x.
"""

from gardnersym import displays as D
from gardnersym.conslaw import (ConservedVector, density_from_multiplier, divergence_residual,
                                flux_from_density, multiplier_residual)
from gardnersym.parser import render
from gardnersym.scenario import Scenario
from gardnersym.symbols import u
from gardnersym.symmetry import CATALOG

const = Scenario.constant()
damped = Scenario.abstract()
for lam in (1, u):
    print(f"Lambda = {render(lam)}: E(Lambda F) = {render(multiplier_residual(lam, const.F))} (Q=0),"
          f" {render(multiplier_residual(lam, damped.F))} (general)")

for Tt in (u, u**2 / 2):
    print(f"T^t = {render(Tt):<8} T^x = {render(flux_from_density(Tt, const))}")

sc = CATALOG["1.2"].scenario()
lam = D.multiplier_12()
Tt = density_from_multiplier(lam)
Tx = flux_from_density(Tt, sc)
print("\nSubcase 1.2")
print("  Lambda =", render(lam))
print("  T^t    =", render(Tt))
print("  T^x    =", render(Tx))
print("  D_t T^t + D_x T^x on solutions:", render(divergence_residual(ConservedVector(Tt, Tx, sc))))
