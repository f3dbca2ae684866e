"""Milnor data: quotient bases, ranks, isolation detection."""

from __future__ import annotations

import pytest
import sympy

from poisdef import (
    NotIsolatedError,
    SingularityError,
    WeightSystem,
    check_isolated,
    milnor_basis,
    monomials_of_weight,
    normal_form,
    parse_poly,
    poly_str,
)

SYM_VARS = sympy.symbols("x y z")


def brute_force_monomials(weights: tuple[int, int, int],
                          weight: int) -> list[tuple[int, int, int]]:
    """All exponent triples of the given weight, by exhaustive search."""
    if weight < 0:
        return []
    bound = weight + 1
    return [
        (a, b, c)
        for a in range(bound) for b in range(bound) for c in range(bound)
        if a * weights[0] + b * weights[1] + c * weights[2] == weight
    ]


def sympy_slice_rank(phi_text: str, weights: tuple[int, int, int],
                     weight: int) -> tuple[int, int]:
    """Independent (dimension, rank) of one weight slice of the Jacobian ideal.

    Enumerates slice monomials by brute force and row-reduces the products
    (monomial * partial derivative) with sympy, sharing no code with the
    package's own linear algebra.
    """
    phi = sympy.Poly(sympy.sympify(phi_text.replace("^", "**")), *SYM_VARS)
    slice_monoms = brute_force_monomials(weights, weight)
    index = {m: i for i, m in enumerate(slice_monoms)}
    rows = []
    for v in SYM_VARS:
        dphi = sympy.Poly(phi.diff(v), *SYM_VARS)
        monoms = dphi.monoms()
        if not monoms:
            continue
        partial_weights = {
            sum(e * w for e, w in zip(m, weights)) for m in monoms
        }
        assert len(partial_weights) == 1, "partial not weight-homogeneous"
        need = weight - partial_weights.pop()
        for fac in brute_force_monomials(weights, need):
            product = sympy.Poly(
                sympy.prod(s ** e for s, e in zip(SYM_VARS, fac))
                * dphi.as_expr(), *SYM_VARS)
            row = [sympy.Rational(0)] * len(slice_monoms)
            for mono, coeff in zip(product.monoms(), product.coeffs()):
                row[index[mono]] = coeff
            rows.append(row)
    rank = sympy.Matrix(rows).rank() if rows else 0
    return len(slice_monoms), rank


# -- reference potentials (frozen textbook values) -------------------------------


def test_quadric_milnor_data(quadric):
    assert quadric.mu == 1
    assert quadric.d == 2
    assert not quadric.special
    assert [poly_str(p) for p in quadric.basis_polys] == ["1"]
    assert quadric.socle == 0


def test_cubic_milnor_data(cubic):
    assert cubic.mu == 8
    assert cubic.d == 3
    assert cubic.special
    assert [poly_str(p) for p in cubic.basis_polys] == [
        "1", "x", "y", "z", "x*y", "x*z", "y*z", "x*y*z"]
    assert cubic.socle == 3  # 3d - 2|w| = 9 - 6


def test_brieskorn_milnor_data(brieskorn):
    assert brieskorn.mu == 8
    assert brieskorn.d == 30
    assert not brieskorn.special
    assert [poly_str(p) for p in brieskorn.basis_polys] == [
        "1", "z", "y", "z^2", "y*z", "z^3", "y*z^2", "y*z^3"]
    assert brieskorn.socle == 28  # 3*30 - 2*31


@pytest.mark.parametrize("phi_text,weights,mu", [
    ("x^2 + y^2 + z^2", (1, 1, 1), 1),
    ("x^3 + y^3 + z^3", (1, 1, 1), 8),
    ("x^2 + y^3 + z^5", (15, 10, 6), 8),
    ("x^4 + y^4 + z^4", (1, 1, 1), 27),
    ("x^2 + y^2 + z^5", (5, 5, 2), 4),
])
def test_product_formula_and_mu(phi_text, weights, mu):
    """mu equals the product of (d - w_i)/w_i and check_isolated agrees."""
    phi = parse_poly(phi_text)
    w = WeightSystem(weights)
    d = w.monomial_weight(next(iter(phi.exponents())))
    product = (d - weights[0]) * (d - weights[1]) * (d - weights[2])
    denominator = weights[0] * weights[1] * weights[2]
    assert product % denominator == 0
    assert product // denominator == mu
    assert check_isolated(phi, w) == mu


@pytest.mark.parametrize("phi_text,weights", [
    ("x^2 + y^3 + z^5", (15, 10, 6)),
    ("x^3 + y^3 + z^3", (1, 1, 1)),
])
def test_slice_ranks_match_independent_oracle(phi_text, weights):
    data = milnor_basis(parse_poly(phi_text), WeightSystem(weights))
    for weight in range(0, data.socle + 1):
        red = data.slice_reduction(weight)
        dim, rank = sympy_slice_rank(phi_text, weights, weight)
        assert len(red.monomials) == dim
        assert red.rank == rank


def test_basis_defect_counts_match_oracle(brieskorn):
    """Quotient dimension per slice equals dim - rank from the oracle."""
    by_weight: dict[int, int] = {}
    for m in brieskorn.basis:
        w = brieskorn.weights.monomial_weight(m)
        by_weight[w] = by_weight.get(w, 0) + 1
    for weight, count in sorted(by_weight.items()):
        dim, rank = sympy_slice_rank("x^2 + y^3 + z^5", (15, 10, 6), weight)
        assert dim - rank == count


# -- isolation detection ---------------------------------------------------------


def test_not_isolated_xyz():
    with pytest.raises(NotIsolatedError):
        check_isolated(parse_poly("x*y*z"), WeightSystem((1, 1, 1)))


def test_not_isolated_square():
    with pytest.raises(NotIsolatedError):
        check_isolated(parse_poly("x^2 + y^2"), WeightSystem((1, 1, 1)))


def test_regular_point_rejected():
    with pytest.raises(SingularityError):
        check_isolated(parse_poly("x + y + z"), WeightSystem((1, 1, 1)))


def test_monomial_slice_enumeration():
    w = WeightSystem((15, 10, 6))
    assert monomials_of_weight(w, 0) == [(0, 0, 0)]
    assert monomials_of_weight(w, 1) == []
    got = monomials_of_weight(w, 30)
    assert sorted(got) == sorted(brute_force_monomials((15, 10, 6), 30))
    unit = WeightSystem((1, 1, 1))
    assert len(monomials_of_weight(unit, 4)) == 15  # C(4+2, 2)


# -- normal forms ----------------------------------------------------------------


def test_normal_form_kills_jacobian_multiples(brieskorn):
    phi = brieskorn.phi
    for i, v in enumerate(["x", "y", "z"]):
        product = phi.diff(i) * parse_poly(v)
        assert normal_form(product, brieskorn).is_zero()


def test_normal_form_fixes_basis_elements(cubic):
    for p in cubic.basis_polys:
        assert normal_form(p, cubic) == p


def test_normal_form_mixed_input(cubic):
    # x^3 = (x/3) * dphi/dx lies in the Jacobian ideal; x*y is a basis element
    reduced = normal_form(parse_poly("x^3 + x*y"), cubic)
    assert reduced == parse_poly("x*y")
