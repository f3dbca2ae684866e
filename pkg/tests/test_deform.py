"""Truncated deformations, Maurer-Cartan checks, and gauge actions."""

from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from poisdef import (
    CoeffFamily,
    InvalidFamilyError,
    MultiVec,
    NuSeries,
    Poly,
    build_deformation,
    first_order_class,
    gamma_classes,
    gauge_apply,
    gauge_special,
    jacobi_residual,
    mc_image,
    parse_label,
    parse_poly,
    poisson_from_potential,
    schouten,
)
from poisdef.cohomology import CohClass
from poisdef.suites import random_family, random_gauge_series

# -- families --------------------------------------------------------------------


def test_family_json_round_trip():
    fam = CoeffFamily.make(
        {(1, 0, 1): Fraction(3, 2), (2, 1, 4): -2},
        {(1, 1): 1, (3, 7): Fraction(-5, 3)},
    )
    payload = json.loads(json.dumps(fam.to_json_dict()))
    assert CoeffFamily.from_json_dict(payload) == fam


def test_family_drops_zero_entries():
    fam = CoeffFamily.make({(1, 0, 1): 0}, {(1, 1): Fraction(0)})
    assert fam == CoeffFamily.make({}, {})


def test_family_validation(brieskorn):
    CoeffFamily.make({(1, 0, 1): 1}, {(1, 7): 1}).validate(brieskorn)
    with pytest.raises(InvalidFamilyError):
        CoeffFamily.make({(1, 0, 0): 1}, {}).validate(brieskorn)  # u_0 excluded
    with pytest.raises(InvalidFamilyError):
        CoeffFamily.make({(0, 0, 1): 1}, {}).validate(brieskorn)  # order >= 1
    with pytest.raises(InvalidFamilyError):
        CoeffFamily.make({}, {(1, 8): 1}).validate(brieskorn)  # r < mu
    with pytest.raises(InvalidFamilyError):
        CoeffFamily.make({}, {(1, 0): 1}).validate(brieskorn)  # r >= 1


def test_family_validation_special(cubic):
    CoeffFamily.make({(1, 0, 0): 1}, {}).validate(cubic)  # u_0 allowed


# -- building deformations ---------------------------------------------------------


def test_empty_family_gives_trivial_series(brieskorn):
    series = build_deformation(brieskorn, CoeffFamily.make({}, {}), 3)
    assert series.coefficient(0) == poisson_from_potential(brieskorn.phi)
    assert all(series.coefficient(n).is_zero() for n in range(1, 4))
    assert jacobi_residual(series).is_zero()


def test_unit_family_frozen_coefficients(brieskorn):
    """Hand-checked coefficients for c[1,0,1] = cbar[1,1] = 1."""
    fam = CoeffFamily.make({(1, 0, 1): 1}, {(1, 1): 1})
    series = build_deformation(brieskorn, fam, 3)
    z = Poly.variable(2)
    pi = poisson_from_potential(brieskorn.phi)
    pi_z = poisson_from_potential(z)
    assert series.coefficient(1) == pi.mul_poly(z) + pi_z
    assert series.coefficient(2) == pi_z.mul_poly(z)
    assert series.coefficient(3).is_zero()
    assert jacobi_residual(series).is_zero()


def test_deformed_bracket_values(brieskorn):
    """The order-1 deformed bracket {x,y} picks up nu * d/dz contributions."""
    fam = CoeffFamily.make({}, {(1, 1): 1})  # add the exact bivector of z
    series = build_deformation(brieskorn, fam, 2)
    x, y = Poly.variable(0), Poly.variable(1)
    base = series.coefficient(0).evaluate([x, y])
    correction = series.coefficient(1).evaluate([x, y])
    assert base == brieskorn.phi.diff(2)
    assert correction == Poly.one()  # {x,y}_z = dz/dz = 1


@pytest.mark.parametrize("seed", range(6))
def test_random_families_poisson(brieskorn, seed):
    rng = random.Random(seed)
    fam = random_family(rng, brieskorn, order=3, phi_power_cap=2)
    series = build_deformation(brieskorn, fam, 3)
    assert jacobi_residual(series).is_zero()


def test_special_random_families_poisson(cubic):
    rng = random.Random(23)
    for _ in range(4):
        fam = random_family(rng, cubic, order=3, phi_power_cap=2)
        series = build_deformation(cubic, fam, 3)
        assert jacobi_residual(series).is_zero()


def test_truncation_prefix_property(brieskorn):
    rng = random.Random(5)
    fam = random_family(rng, brieskorn, order=3, phi_power_cap=2)
    full = build_deformation(brieskorn, fam, 3)
    for m in (1, 2):
        trunc = build_deformation(brieskorn, fam, m)
        for n in range(1, m + 1):
            assert trunc.coefficient(n) == full.coefficient(n)


# -- dual route: closed formula vs Maurer-Cartan image -------------------------------


def test_build_matches_mc_image(brieskorn, brieskorn_state):
    rng = random.Random(31)
    for _ in range(4):
        fam = random_family(rng, brieskorn, order=3, phi_power_cap=2)
        series = build_deformation(brieskorn, fam, 3)
        gamma = gamma_classes(fam, brieskorn, 3)
        image = mc_image(brieskorn_state, gamma, 3)
        for n in range(1, 4):
            assert series.coefficient(n) == image.coefficient(n)


def test_first_order_class_recovery(brieskorn):
    fam = CoeffFamily.make({(1, 1, 2): Fraction(7, 2)}, {(1, 3): -1})
    series = build_deformation(brieskorn, fam, 2)
    cls = first_order_class(series, brieskorn)
    assert cls.coefficient(parse_label("A(1,2)")) == Fraction(7, 2)
    assert cls.coefficient(parse_label("B(3)")) == -1


def test_gamma_classes_layout(brieskorn):
    fam = CoeffFamily.make({(2, 0, 1): 5}, {(1, 2): 3})
    gamma = gamma_classes(fam, brieskorn, 3)
    assert gamma.coefficient(1) == CohClass.single(parse_label("B(2)"), 3)
    assert gamma.coefficient(2) == CohClass.single(parse_label("A(0,1)"), 5)
    assert gamma.coefficient(3).is_zero()


# -- gauge action --------------------------------------------------------------------


def test_gauge_preserves_poisson_and_class(brieskorn):
    rng = random.Random(41)
    fam = random_family(rng, brieskorn, order=2, phi_power_cap=2)
    base = build_deformation(brieskorn, fam, 2)
    base_class = first_order_class(base, brieskorn)
    for _ in range(4):
        xi = random_gauge_series(rng, 2)
        gauged = gauge_apply(base, xi)
        assert jacobi_residual(gauged).is_zero()
        assert first_order_class(gauged, brieskorn) == base_class


def test_gauge_by_hamiltonian_field_shifts_exact_part(brieskorn):
    """Gauging by a coboundary preimage changes representatives only."""
    base = build_deformation(brieskorn, CoeffFamily.make({(1, 0, 1): 1}, {}), 2)
    v = MultiVec.vector(Poly.variable(1), Poly.zero(), Poly.zero())
    xi = NuSeries(order_cap=2, coeffs=(v, MultiVec.zero(1)))
    gauged = gauge_apply(base, xi)
    assert jacobi_residual(gauged).is_zero()
    assert first_order_class(gauged, brieskorn) == \
        first_order_class(base, brieskorn)
    # the representative itself moved at order 1
    assert gauged.coefficient(1) != base.coefficient(1)


def test_gauge_identity_when_xi_zero(brieskorn):
    base = build_deformation(brieskorn, CoeffFamily.make({(1, 0, 1): 1}, {}), 2)
    xi = NuSeries(order_cap=2,
                  coeffs=(MultiVec.zero(1), MultiVec.zero(1)))
    gauged = gauge_apply(base, xi)
    assert gauged.coeffs == base.coeffs


def test_gauge_rejects_wrong_degree(brieskorn):
    base = build_deformation(brieskorn, CoeffFamily.make({}, {}), 2)
    bad = NuSeries(order_cap=2, coeffs=(MultiVec.zero(2), MultiVec.zero(2)))
    with pytest.raises(ValueError):
        gauge_apply(base, bad)


def test_special_gauge_action(cubic, cubic_state):
    """Class-level gauge by degree-0 classes preserves Maurer-Cartan."""
    rng = random.Random(43)
    fam = random_family(rng, cubic, order=2, phi_power_cap=1)
    gamma = gamma_classes(fam, cubic, 2)
    base = build_deformation(cubic, fam, 2)
    for _ in range(3):
        coeffs = tuple(
            CohClass.single(parse_label("Eul(0)"), Fraction(rng.randint(-3, 3)))
            + CohClass.single(parse_label("Eul(1)"), Fraction(rng.randint(-3, 3)))
            for _ in range(2)
        )
        xi = NuSeries(order_cap=2, coeffs=coeffs)
        gauged_gamma = gauge_special(cubic_state, gamma, xi)
        assert gauged_gamma.coefficient(1) == gamma.coefficient(1)
        image = mc_image(cubic_state, gauged_gamma, 2)
        series = NuSeries(order_cap=2, coeffs=image.coeffs,
                          anchor=base.anchor)
        assert jacobi_residual(series).is_zero()


def test_special_gauge_trivial_for_generic(brieskorn, brieskorn_state):
    """With no degree-0 classes the class-level gauge must act trivially."""
    fam = CoeffFamily.make({(1, 0, 1): 1}, {})
    gamma = gamma_classes(fam, brieskorn, 2)
    zero_xi = NuSeries(
        order_cap=2, coeffs=(CohClass.zero(0), CohClass.zero(0)))
    gauged = gauge_special(brieskorn_state, gamma, zero_xi)
    assert all(gauged.coefficient(n) == gamma.coefficient(n)
               for n in (1, 2))


# -- series mechanics ------------------------------------------------------------------


def test_series_validation():
    with pytest.raises(ValueError):
        NuSeries(order_cap=0, coeffs=())
    with pytest.raises(ValueError):
        NuSeries(order_cap=2, coeffs=(MultiVec.zero(1),))
    series = NuSeries(order_cap=1, coeffs=(MultiVec.zero(1),))
    with pytest.raises(ValueError):
        series.coefficient(0)  # no anchor
    with pytest.raises(ValueError):
        series.coefficient(2)  # beyond the cap


def test_jacobi_residual_flags_bad_series(brieskorn):
    """Dropping a required order-2 cross term breaks Maurer-Cartan."""
    fam = CoeffFamily.make({(1, 0, 1): 1}, {(1, 2): 1})
    good = build_deformation(brieskorn, fam, 2)
    assert jacobi_residual(good).is_zero()
    assert not good.coefficient(2).is_zero()
    naive = NuSeries(order_cap=2,
                     coeffs=(good.coefficient(1), MultiVec.zero(2)),
                     anchor=good.anchor)
    residual = jacobi_residual(naive)
    assert residual.coefficient(1).is_zero()  # first order is a cocycle
    assert not residual.coefficient(2).is_zero()  # missing correction
