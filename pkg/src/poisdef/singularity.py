"""Milnor algebra of a weight-homogeneous isolated singularity.

For a weight-homogeneous potential phi with an isolated critical point at
the origin, the quotient of the polynomial ring by the Jacobian ideal
(dphi/dx, dphi/dy, dphi/dz) is a finite-dimensional graded algebra.  This
module computes its dimension (the Milnor number), a canonical graded
monomial basis, and normal forms modulo the Jacobian ideal, one weight
slice at a time with exact rational row reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import (
    Exponents,
    Poly,
    WeightSystem,
    monomial_key,
    weight_parts,
    weighted_degree,
)
from .linalg import rref


class SingularityError(ValueError):
    """Raised when a potential fails the preconditions of this module."""


class NotIsolatedError(SingularityError):
    """Raised when the critical point of the potential is not isolated.

    ``offending_degree`` is the weight slice that witnessed the failure,
    or None when the failure came from a global consistency check.
    """

    def __init__(self, message: str, offending_degree: Optional[int] = None):
        super().__init__(message)
        self.offending_degree = offending_degree


def monomials_of_weight(weights: WeightSystem, degree: int) -> list[Exponents]:
    """All exponent triples of the given weighted degree, canonically ordered.

    The order agrees with :func:`poisdef.algebra.monomial_key` restricted
    to the slice.
    """
    if degree < 0:
        return []
    w1, w2, w3 = weights.weights
    found: list[Exponents] = []
    for a in range(degree // w1, -1, -1):
        rem_a = degree - a * w1
        for b in range(rem_a // w2, -1, -1):
            rem_b = rem_a - b * w2
            if rem_b % w3 == 0:
                found.append((a, b, rem_b // w3))
    return sorted(found, key=monomial_key)


@dataclass
class SliceReduction:
    """Row-reduced picture of one weight slice of the Jacobian ideal.

    ``monomials`` lists the slice's monomial basis in canonical order;
    ``rows`` are the reduced generators of the ideal's intersection with
    the slice, expressed in that basis; ``pivot_columns[r]`` is the column
    on which row r pivots.
    """

    degree: int
    monomials: list[Exponents]
    rows: list[list[Fraction]]
    pivot_columns: list[int]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def complement(self) -> list[Exponents]:
        """Non-pivot monomials: a basis of the quotient in this slice."""
        pivots = set(self.pivot_columns)
        return [m for i, m in enumerate(self.monomials) if i not in pivots]

    def reduce_vector(self, vec: list[Fraction]) -> list[Fraction]:
        """Subtract the row space: canonical representative mod the ideal."""
        out = list(vec)
        for row, col in zip(self.rows, self.pivot_columns):
            coeff = out[col]
            if coeff:
                out = [v - coeff * r for v, r in zip(out, row)]
        return out


def jacobian_slice_reduction(phi: Poly, weights: WeightSystem,
                             degree: int) -> SliceReduction:
    """Row-reduce the weight-``degree`` slice of the Jacobian ideal of phi."""
    d = weighted_degree(phi, weights)
    if d is None:
        raise SingularityError("potential must be weight-homogeneous and nonzero")
    monomials = monomials_of_weight(weights, degree)
    index_of = {m: i for i, m in enumerate(monomials)}
    raw_rows: list[list[Fraction]] = []
    for v in range(3):
        generator = phi.diff(v)
        if generator.is_zero():
            continue
        gen_weight = d - weights.weights[v]
        for m in monomials_of_weight(weights, degree - gen_weight):
            product = Poly.monomial(m) * generator
            row = [Fraction(0)] * len(monomials)
            for exps, coeff in product.items():
                row[index_of[exps]] = coeff
            raw_rows.append(row)
    if raw_rows:
        rows, pivots = rref(raw_rows)
    else:
        rows, pivots = [], []
    return SliceReduction(degree=degree, monomials=monomials,
                          rows=rows, pivot_columns=pivots)


def jacobian_slice(phi: Poly, weights: WeightSystem,
                   degree: int) -> list[Poly]:
    """Canonical reduced spanning set of one weight slice of the ideal."""
    reduction = jacobian_slice_reduction(phi, weights, degree)
    out = []
    for row in reduction.rows:
        terms = {m: c for m, c in zip(reduction.monomials, row) if c}
        out.append(Poly(terms))
    return out


def check_isolated(phi: Poly, weights: WeightSystem) -> int:
    """Milnor number of phi, or NotIsolatedError.

    The quotient by the Jacobian ideal of a weight-homogeneous potential
    with an isolated critical point is concentrated in weights 0 to
    3d - 2|w| (d the degree of phi, |w| the sum of the weights).  The
    slices strictly above that socle degree, up to socle + max(d, |w|),
    must therefore vanish; the first nonzero one witnesses a non-isolated
    critical locus.  The count is cross-checked against the product
    formula prod_i (d - w_i) / w_i.
    """
    d = weighted_degree(phi, weights)
    if d is None or phi.is_zero():
        raise SingularityError("potential must be weight-homogeneous and nonzero")
    if d == 0:
        raise SingularityError("potential must be nonconstant")
    socle = 3 * d - 2 * weights.total
    window_end = socle + max(d, weights.total)
    mu = 0
    for degree in range(0, max(socle, window_end) + 1):
        reduction = jacobian_slice_reduction(phi, weights, degree)
        missing = len(reduction.monomials) - reduction.rank
        if degree <= socle:
            mu += missing
        elif missing:
            raise NotIsolatedError(
                f"Jacobian ideal misses {missing} monomial(s) in weight "
                f"{degree}, above the socle degree {socle}: the critical "
                "point is not isolated",
                offending_degree=degree,
            )
    w1, w2, w3 = weights.weights
    expected = Fraction(d - w1, w1) * Fraction(d - w2, w2) * Fraction(d - w3, w3)
    if expected != mu:
        raise NotIsolatedError(
            f"slice count {mu} disagrees with the product formula "
            f"{expected}: the critical point is not isolated",
        )
    if mu == 0:
        raise NotIsolatedError(
            "Milnor number is zero: the potential has no critical point "
            "at the origin (it is regular there)",
        )
    return mu


@dataclass
class SingularityData:
    """Everything downstream modules need about one potential.

    ``basis`` lists the canonical monomial basis u_0 = 1, u_1, ..., of the
    quotient by the Jacobian ideal in increasing (weight, revlex) order;
    ``special`` records whether d equals |w| (the weight of the potential
    equals the sum of the variable weights), which changes the cohomology
    bases downstream.
    """

    phi: Poly
    weights: WeightSystem
    d: int
    mu: int
    basis: tuple[Exponents, ...]
    socle: int
    _slices: dict[int, SliceReduction] = field(default_factory=dict, repr=False)
    _scratch: dict = field(default_factory=dict, repr=False)

    @property
    def special(self) -> bool:
        return self.d == self.weights.total

    @property
    def basis_polys(self) -> tuple[Poly, ...]:
        return tuple(Poly.monomial(m) for m in self.basis)

    def basis_weight(self, index: int) -> int:
        return self.weights.monomial_weight(self.basis[index])

    def slice_reduction(self, degree: int) -> SliceReduction:
        cached = self._slices.get(degree)
        if cached is None:
            cached = jacobian_slice_reduction(self.phi, self.weights, degree)
            self._slices[degree] = cached
        return cached


def milnor_basis(phi: Poly, weights: WeightSystem) -> SingularityData:
    """Milnor number and canonical monomial basis of the quotient algebra."""
    mu = check_isolated(phi, weights)
    d = weighted_degree(phi, weights)
    socle = 3 * d - 2 * weights.total
    basis: list[Exponents] = []
    slices: dict[int, SliceReduction] = {}
    for degree in range(0, socle + 1):
        reduction = jacobian_slice_reduction(phi, weights, degree)
        slices[degree] = reduction
        basis.extend(reduction.complement())
    if len(basis) != mu:
        raise AssertionError(
            f"basis size {len(basis)} disagrees with Milnor number {mu}"
        )
    if basis[0] != (0, 0, 0):
        raise AssertionError("the constant monomial must represent u_0 = 1")
    data = SingularityData(phi=phi, weights=weights, d=d, mu=mu,
                           basis=tuple(basis), socle=socle)
    data._slices.update(slices)
    return data


def normal_form(p: Poly, data: SingularityData) -> Poly:
    """Canonical representative of p modulo the Jacobian ideal.

    Works one weight slice at a time; the result is supported on the
    canonical quotient basis, so two polynomials are congruent modulo the
    ideal exactly when their normal forms coincide.
    """
    total = Poly.zero()
    for degree, part in weight_parts(p, data.weights).items():
        reduction = data.slice_reduction(degree)
        index_of = {m: i for i, m in enumerate(reduction.monomials)}
        vec = [Fraction(0)] * len(reduction.monomials)
        for exps, coeff in part.items():
            vec[index_of[exps]] = coeff
        reduced = reduction.reduce_vector(vec)
        terms = {m: c for m, c in zip(reduction.monomials, reduced) if c}
        total = total + Poly(terms)
    return total
