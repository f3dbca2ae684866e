"""Suite runners: structure, determinism, and pass status."""

from __future__ import annotations

import random

import pytest

from poisdef import SUITE_NAMES, SuiteConfig, TransferState
from poisdef.suites import (
    all_basis_labels,
    random_family,
    random_fraction,
    random_gauge_series,
    random_multivector,
    random_polynomial,
    run_suite,
    run_suites,
)

SMALL = SuiteConfig(order=2, seed=5, n_families=3, n_gauges=2, n_samples=4)


def test_unknown_suite_rejected(quadric):
    with pytest.raises(ValueError):
        run_suite("nope", quadric, SMALL)


@pytest.mark.parametrize("name", SUITE_NAMES)
def test_each_suite_passes_on_quadric(quadric, name):
    report = run_suite(name, quadric, SMALL)
    assert report["suite"] == name
    assert report["status"] == "pass"
    assert report["counts"]["fail"] == 0
    assert report["counts"]["pass"] == len(report["checks"])
    for check in report["checks"]:
        assert check["pass"] is True
        assert isinstance(check["name"], str)
        assert check["cases"] >= 0  # empty sweeps are vacuously true
    assert any(check["cases"] >= 1 for check in report["checks"])


def test_reports_are_deterministic(quadric):
    first = run_suites(SUITE_NAMES, quadric, SMALL)
    second = run_suites(SUITE_NAMES, quadric, SMALL)
    assert first == second


def test_seed_changes_samples_not_status(quadric):
    alt = SuiteConfig(order=2, seed=99, n_families=3, n_gauges=2, n_samples=4)
    report = run_suite("deform", quadric, alt)
    assert report["status"] == "pass"


def test_suites_pass_on_brieskorn_small_caps(brieskorn, brieskorn_state):
    config = SuiteConfig(order=2, weight_cap=brieskorn.d, seed=1,
                         n_families=3, n_gauges=2, n_samples=4)
    for name in SUITE_NAMES:
        report = run_suite(name, brieskorn, config, brieskorn_state)
        assert report["status"] == "pass", report


def test_special_gauge_checks_present(cubic, cubic_state):
    config = SuiteConfig(order=2, weight_cap=cubic.d, seed=2,
                         n_families=2, n_gauges=2, n_samples=4)
    report = run_suite("gauge", cubic, config, cubic_state)
    names = [check["name"] for check in report["checks"]]
    assert "class_level_gauge_preserves_maurer_cartan" in names
    assert report["status"] == "pass"


def test_ternary_witness_present_for_generic_only(quadric, cubic, cubic_state):
    report = run_suite("transfer", quadric, SMALL)
    names = [check["name"] for check in report["checks"]]
    assert "ternary_bracket_closed_form_on_potential_volume" in names
    config = SuiteConfig(order=2, weight_cap=cubic.d, seed=2, n_samples=4)
    report = run_suite("transfer", cubic, config, cubic_state)
    names = [check["name"] for check in report["checks"]]
    assert "ternary_bracket_closed_form_on_potential_volume" not in names


# -- samplers -------------------------------------------------------------------


def test_random_fraction_determinism():
    a = [random_fraction(random.Random(3)) for _ in range(5)]
    b = [random_fraction(random.Random(3)) for _ in range(5)]
    assert a == b
    assert all(f != 0 for f in a)


def test_random_polynomial_bounds():
    rng = random.Random(7)
    for _ in range(10):
        p = random_polynomial(rng, max_exponent=2, max_terms=3)
        for exps in p.exponents():
            assert all(0 <= e <= 2 for e in exps)


def test_random_multivector_shape():
    rng = random.Random(9)
    for degree in (0, 1, 2, 3):
        mv = random_multivector(rng, degree)
        assert mv.degree == degree


def test_random_family_validity(brieskorn, cubic):
    rng = random.Random(11)
    for data in (brieskorn, cubic):
        for _ in range(10):
            fam = random_family(rng, data, order=3, phi_power_cap=2)
            fam.validate(data)  # must not raise
            for (n, l, _i), _v in fam.c:
                assert 1 <= n <= 3
                assert 0 <= l <= 2


def test_random_family_empty_when_no_h1(quadric):
    rng = random.Random(13)
    fam = random_family(rng, quadric, order=3)
    assert fam.c == () and fam.cbar == ()


def test_random_gauge_series_shape():
    rng = random.Random(15)
    xi = random_gauge_series(rng, 3)
    assert xi.order_cap == 3
    assert all(c.degree == 1 for c in xi.coeffs)


def test_all_basis_labels_sorted_by_degree(brieskorn):
    labels = all_basis_labels(brieskorn, brieskorn.d)
    degrees = [lab.g_degree for lab in labels]
    assert degrees == sorted(degrees)
