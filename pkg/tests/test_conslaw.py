import pytest
import sympy as sp

from gardnersym import displays as D
from gardnersym.conslaw import (ConservedVector, canonical_density, check_multiplier,
                                density_from_multiplier, divergence_residual, equivalent_densities,
                                flux_from_density, helmholtz_conditions, ibragimov_vector,
                                multiplier_residual)
from gardnersym.errors import NonPolynomialError, NotSelfAdjointError, OrderError
from gardnersym.expr import normalize, substitute, zero_test
from gardnersym.scenario import Scenario
from gardnersym.symbols import U, param, time_function, u, u_x, u_xx
from gardnersym.symmetry import CATALOG, VectorField

fam = Scenario.abstract()
const = Scenario.constant()
Q = time_function("Q")


def test_multiplier_residuals():
    assert multiplier_residual(1, fam.F) == Q
    assert multiplier_residual(u, fam.F) == 2 * Q * u
    assert multiplier_residual(u, const.F) == 0
    assert check_multiplier(u, const.F).is_zero


def test_multiplier_shape_errors():
    with pytest.raises(OrderError):
        multiplier_residual(U.var(0, 1), fam.F)
    with pytest.raises(OrderError):
        multiplier_residual(U.var(3), fam.F)


def test_helmholtz_diagnostic_on_second_order_multiplier():
    assert all(c == 0 for _, c in helmholtz_conditions(u_xx))
    assert any(c != 0 for _, c in helmholtz_conditions(u * u_x))


def test_homotopy_density():
    assert density_from_multiplier(u) == u**2 / 2
    assert density_from_multiplier(u_xx) == u * u_xx / 2
    assert normalize(density_from_multiplier(D.multiplier_12()) - D.density_12()) == 0
    with pytest.raises(NonPolynomialError):
        density_from_multiplier(sp.exp(u))


def test_mass_and_energy_fluxes():
    assert normalize(flux_from_density(u, const) - (u**2 / 2 + u**3 / 3 + u_xx)) == 0
    expected = u**3 / 3 + u**4 / 4 + u * u_xx - u_x**2 / 2
    assert normalize(flux_from_density(u**2 / 2, const) - expected) == 0


def test_subcase_12_flux_matches_display():
    sc = CATALOG["1.2"].scenario()
    Tx = flux_from_density(D.density_12(), sc)
    assert zero_test(Tx - D.flux_12()).is_zero
    assert zero_test(divergence_residual(ConservedVector(D.density_12(), Tx, sc))).is_zero


def test_divergence_residual():
    assert divergence_residual(ConservedVector(u, 0, const)) != 0
    assert divergence_residual(ConservedVector(0, 7, const)) == 0


def test_equivalent_densities():
    assert equivalent_densities(u**2 / 2 + u * u_x, u**2 / 2, const)
    assert not equivalent_densities(u**2, u, const)


def test_canonical_density_moves_exact_part():
    canon, P = canonical_density(u**2 + u * u_x + u_xx + 3)
    assert canon == u**2 + 3
    assert normalize(P - (u**2 / 2 + u_x)) == 0


def test_time_translation_with_unit_substitution_is_trivial():
    cv = ibragimov_vector(VectorField(0, 1, 0), const, 1)
    assert cv.Tt == 0


def test_example_symmetry_vector():
    k1 = param("k1")
    cv = ibragimov_vector(D.example_generator(), D.example_scenario(), D.c1 * u + D.c2)
    assert cv.is_conserved()
    Tt, _ = D.example_vector()
    assert equivalent_densities(cv.Tt, Tt, D.example_scenario())


def test_ibragimov_requires_selfadjoint_phi():
    with pytest.raises(NotSelfAdjointError):
        ibragimov_vector(VectorField(1, 0, 0), Scenario.constant(Q=1), u)


@pytest.mark.parametrize("cid", ["2.1", "2.2"])
def test_ibragimov_catalog_density(cid):
    case = CATALOG[cid]
    cv = ibragimov_vector(case.generator(), case.scenario(), D.phi_2x())
    Tt, _ = D.vector_2x(cid)
    assert equivalent_densities(cv.Tt, Tt, case.scenario())


def test_mass_energy_specializations():
    Tt, _ = D.vector_2x("2.1")
    for vals, target in D.mass_energy_specializations().values():
        assert normalize(substitute(Tt, vals) - target) == 0
