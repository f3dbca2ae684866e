"""Poisson cohomology bases and projections for exact structures.

Let pi be the exact Poisson bivector of a weight-homogeneous potential phi
with isolated singularity, with Milnor basis u_0 = 1, u_1, ..., u_{mu-1}.
The cochain complex is multivector fields with differential [pi, .], and
its cohomology has an explicit basis depending on whether the potential's
weighted degree d equals the sum of the variable weights |w| (the
"balanced" case, ``data.special``) or not:

================  =========================================  ==============
cochain degree     basis classes                              label
================  =========================================  ==============
0  (functions)    phi^i                                       Cas(i)
1  (vectors)      phi^i * (weighted Euler field),             Eul(i)
                  balanced case only
2  (bivectors)    phi^i * u_q * pi,  q in E(phi)              A(i, q)
                  exact bivector of u_r,  1 <= r <= mu-1      B(r)
3  (trivectors)   phi^i * u_s * dx^dy^dz,  0 <= s <= mu-1     Top(i, s)
================  =========================================  ==============

where E(phi) = {1, ..., mu-1} in the unbalanced case (u_0 * pi is then a
coboundary) and {0, ..., mu-1} in the balanced case.  All label indices
``i`` range over nonnegative integers, so each cohomology space is a free
module over the Casimir ring Q[phi].

Classes are indexed by homological degree g = cochain degree - 1 (so
bivector classes sit in degree g = 1), matching the grading of the graded
Lie algebra used by the transfer machinery.

Projections and coboundary solves are performed one weight slice at a
time: for fixed (cochain degree, weight) the slice of multivector fields
is finite-dimensional, and one exact row reduction of
[class representatives | coboundary images] is cached per slice and
reused for every solve against it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import Exponents, Poly, ScalarLike, monomial_key
from .linalg import PreparedSolver
from .multivec import (
    SLOTS,
    MultiVec,
    coboundary,
    coordinate_volume,
    euler_field,
    multivec_weight_parts,
    poisson_from_potential,
    slot_weight_offset,
)
from .singularity import SingularityData, monomials_of_weight


class CohomologyError(ValueError):
    """Base class for cohomology-level failures."""


class NotACocycleError(CohomologyError):
    """The multivector is not closed under the Poisson differential."""


class NotACoboundaryError(CohomologyError):
    """The multivector is not in the image of the Poisson differential."""


class SliceCapExceededError(CohomologyError):
    """A computation needed a weight slice above the caller's cap."""


KINDS = ("Cas", "Eul", "A", "B", "Top")
_KIND_RANK = {kind: i for i, kind in enumerate(KINDS)}
_KIND_DEGREE = {"Cas": -1, "Eul": 0, "A": 1, "B": 1, "Top": 2}
_KIND_ARITY = {"Cas": 1, "Eul": 1, "A": 2, "B": 1, "Top": 2}

_LABEL_RE = re.compile(r"^\s*(Cas|Eul|A|B|Top)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$")


@dataclass(frozen=True)
class BasisLabel:
    """Symbolic name of one cohomology basis class, e.g. A(0, 3)."""

    kind: str
    indices: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown label kind {self.kind!r}")
        if len(self.indices) != _KIND_ARITY[self.kind]:
            raise ValueError(
                f"label kind {self.kind} takes {_KIND_ARITY[self.kind]} "
                f"index(es), got {self.indices}"
            )
        if any((not isinstance(i, int)) or i < 0 for i in self.indices):
            raise ValueError(f"label indices must be nonnegative, got {self.indices}")

    @property
    def g_degree(self) -> int:
        return _KIND_DEGREE[self.kind]

    def sort_key(self) -> tuple[int, int, tuple[int, ...]]:
        return (self.g_degree, _KIND_RANK[self.kind], self.indices)

    def __str__(self) -> str:
        return f"{self.kind}({','.join(str(i) for i in self.indices)})"


def parse_label(text: str) -> BasisLabel:
    """Parse 'Cas(i)', 'Eul(i)', 'A(i,q)', 'B(r)' or 'Top(i,s)'."""
    match = _LABEL_RE.match(text)
    if not match:
        raise ValueError(f"cannot parse basis label {text!r}")
    kind = match.group(1)
    indices = [int(match.group(2))]
    if match.group(3) is not None:
        indices.append(int(match.group(3)))
    return BasisLabel(kind, tuple(indices))


def a_index_range(data: SingularityData) -> range:
    """Valid u-indices for A labels: E(phi) in the module docstring."""
    return range(0 if data.special else 1, data.mu)


def validate_label(label: BasisLabel, data: SingularityData) -> None:
    """Raise CohomologyError unless the label names a class for this potential."""
    kind = label.kind
    if kind == "Eul" and not data.special:
        raise CohomologyError(
            "Eul labels only exist when the potential degree equals the "
            "sum of the weights"
        )
    if kind == "A":
        _, q = label.indices
        if q not in a_index_range(data):
            raise CohomologyError(
                f"A label u-index {q} outside {list(a_index_range(data))!r}"
            )
    if kind == "B":
        (r,) = label.indices
        if not 1 <= r <= data.mu - 1:
            raise CohomologyError(
                f"B label index {r} outside 1..{data.mu - 1}")
    if kind == "Top":
        _, s = label.indices
        if not 0 <= s <= data.mu - 1:
            raise CohomologyError(
                f"Top label u-index {s} outside 0..{data.mu - 1}")


def label_weight(label: BasisLabel, data: SingularityData) -> int:
    """Weight of the class representative (phi carries weight d)."""
    d = data.d
    total = data.weights.total
    kind = label.kind
    if kind == "Cas":
        return label.indices[0] * d
    if kind == "Eul":
        return label.indices[0] * d
    if kind == "A":
        i, q = label.indices
        return i * d + data.basis_weight(q) + (d - total)
    if kind == "B":
        (r,) = label.indices
        return data.basis_weight(r) - total
    if kind == "Top":
        i, s = label.indices
        return i * d + data.basis_weight(s) - total
    raise AssertionError(kind)


def realize(label: BasisLabel, data: SingularityData) -> MultiVec:
    """The canonical multivector representative of a basis class."""
    validate_label(label, data)
    phi = data.phi
    kind = label.kind
    if kind == "Cas":
        return MultiVec.function(phi ** label.indices[0])
    if kind == "Eul":
        return euler_field(data.weights).mul_poly(phi ** label.indices[0])
    if kind == "A":
        i, q = label.indices
        factor = (phi ** i) * Poly.monomial(data.basis[q])
        return poisson_from_potential(phi).mul_poly(factor)
    if kind == "B":
        (r,) = label.indices
        return poisson_from_potential(Poly.monomial(data.basis[r]))
    if kind == "Top":
        i, s = label.indices
        factor = (phi ** i) * Poly.monomial(data.basis[s])
        return coordinate_volume().mul_poly(factor)
    raise AssertionError(kind)


def labels_of_weight(data: SingularityData, g: int, weight: int) -> list[BasisLabel]:
    """All basis labels of homological degree g with exactly this weight."""
    d = data.d
    total = data.weights.total
    out: list[BasisLabel] = []
    if g == -1:
        if weight >= 0 and weight % d == 0:
            out.append(BasisLabel("Cas", (weight // d,)))
    elif g == 0:
        if data.special and weight >= 0 and weight % d == 0:
            out.append(BasisLabel("Eul", (weight // d,)))
    elif g == 1:
        delta = d - total
        for q in a_index_range(data):
            num = weight - delta - data.basis_weight(q)
            if num >= 0 and num % d == 0:
                out.append(BasisLabel("A", (num // d, q)))
        for r in range(1, data.mu):
            if data.basis_weight(r) - total == weight:
                out.append(BasisLabel("B", (r,)))
    elif g == 2:
        for s in range(data.mu):
            num = weight + total - data.basis_weight(s)
            if num >= 0 and num % d == 0:
                out.append(BasisLabel("Top", (num // d, s)))
    return sorted(out, key=BasisLabel.sort_key)


def enumerate_basis(data: SingularityData, g: int,
                    weight_cap: int) -> list[BasisLabel]:
    """All basis labels of homological degree g with weight <= weight_cap,
    ordered by (weight, kind, indices)."""
    out: list[BasisLabel] = []
    for weight in range(-data.weights.total, weight_cap + 1):
        out.extend(labels_of_weight(data, g, weight))
    return out


# -- cohomology classes -------------------------------------------------------


@dataclass(frozen=True)
class CohClass:
    """A finite rational combination of basis labels in one degree."""

    g_degree: int
    coeffs: tuple[tuple[BasisLabel, Fraction], ...]

    @classmethod
    def make(cls, g_degree: int,
             coeffs: Optional[dict[BasisLabel, ScalarLike]] = None) -> "CohClass":
        cleaned: dict[BasisLabel, Fraction] = {}
        if coeffs:
            for label, value in coeffs.items():
                frac = Fraction(value)
                if frac:
                    if label.g_degree != g_degree:
                        raise ValueError(
                            f"label {label} has degree {label.g_degree}, "
                            f"class has degree {g_degree}"
                        )
                    cleaned[label] = frac
        ordered = tuple(sorted(cleaned.items(), key=lambda kv: kv[0].sort_key()))
        return cls(g_degree, ordered)

    @classmethod
    def zero(cls, g_degree: int) -> "CohClass":
        return cls.make(g_degree)

    @classmethod
    def single(cls, label: BasisLabel, coeff: ScalarLike = 1) -> "CohClass":
        return cls.make(label.g_degree, {label: coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def as_dict(self) -> dict[BasisLabel, Fraction]:
        return dict(self.coeffs)

    def coefficient(self, label: BasisLabel) -> Fraction:
        for known, value in self.coeffs:
            if known == label:
                return value
        return Fraction(0)

    def __add__(self, other: "CohClass") -> "CohClass":
        if not isinstance(other, CohClass):
            return NotImplemented
        if self.g_degree != other.g_degree:
            raise ValueError("cannot add classes of different degrees")
        merged = self.as_dict()
        for label, value in other.coeffs:
            merged[label] = merged.get(label, Fraction(0)) + value
        return CohClass.make(self.g_degree, merged)

    def __neg__(self) -> "CohClass":
        return CohClass.make(self.g_degree,
                             {l: -v for l, v in self.coeffs})

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + (-other)

    def __mul__(self, scalar: ScalarLike) -> "CohClass":
        frac = Fraction(scalar)
        return CohClass.make(self.g_degree,
                             {l: v * frac for l, v in self.coeffs})

    __rmul__ = __mul__

    def __str__(self) -> str:
        return class_str(self)


def class_str(cls: CohClass) -> str:
    """Render e.g. '2*A(0,1) + B(2) - 1/2*Top(0,0)'; '0' when empty."""
    if cls.is_zero():
        return "0"
    pieces = []
    for label, value in cls.coeffs:
        mag = abs(value)
        body = str(label) if mag == 1 else f"{mag}*{label}"
        if not pieces:
            pieces.append(f"-{body}" if value < 0 else body)
        else:
            pieces.append(f"- {body}" if value < 0 else f"+ {body}")
    return " ".join(pieces)


def f1(cls: CohClass, data: SingularityData) -> MultiVec:
    """Canonical representative of a class: sum of realized labels."""
    result = MultiVec.zero(cls.g_degree + 1)
    for label, value in cls.coeffs:
        result = result + realize(label, data) * value
    return result


# -- weight-slice solvers -----------------------------------------------------


def _slice_monovecs(data: SingularityData, degree: int,
                    weight: int) -> list[tuple[int, Exponents]]:
    """Basis (slot, monomial) pairs of one weight slice of multivectors."""
    if degree not in SLOTS:
        return []
    out: list[tuple[int, Exponents]] = []
    for slot in range(len(SLOTS[degree])):
        offset = slot_weight_offset(data.weights, degree, slot)
        for m in monomials_of_weight(data.weights, weight + offset):
            out.append((slot, m))
    return out


def _monovec(degree: int, slot: int, exps: Exponents) -> MultiVec:
    comps = [Poly.zero()] * len(SLOTS[degree])
    comps[slot] = Poly.monomial(exps)
    return MultiVec(degree, tuple(comps))


def _vector_of(mv: MultiVec, index: dict[tuple[int, Exponents], int],
               size: int) -> list[Fraction]:
    vec = [Fraction(0)] * size
    for slot, comp in enumerate(mv.comps):
        for exps, coeff in comp.items():
            vec[index[(slot, exps)]] = coeff
    return vec


def _projection_solver(data: SingularityData, degree: int, weight: int):
    """Cached solver expressing a slice cocycle as classes + coboundary."""
    key = ("cohomology/projection", degree, weight)
    cached = data._scratch.get(key)
    if cached is not None:
        return cached
    slice_basis = _slice_monovecs(data, degree, weight)
    index = {sm: i for i, sm in enumerate(slice_basis)}
    labels = labels_of_weight(data, degree - 1, weight)
    columns = [
        _vector_of(realize(label, data), index, len(slice_basis))
        for label in labels
    ]
    delta = data.d - data.weights.total
    for slot, m in _slice_monovecs(data, degree - 1, weight - delta):
        image = coboundary(_monovec(degree - 1, slot, m), data.phi)
        columns.append(_vector_of(image, index, len(slice_basis)))
    solver = PreparedSolver.from_columns(columns, len(slice_basis))
    entry = (labels, index, solver)
    data._scratch[key] = entry
    return entry


def _coboundary_solver(data: SingularityData, degree: int, weight: int):
    """Cached solver inverting the differential onto one target slice."""
    key = ("cohomology/coboundary", degree, weight)
    cached = data._scratch.get(key)
    if cached is not None:
        return cached
    slice_basis = _slice_monovecs(data, degree, weight)
    index = {sm: i for i, sm in enumerate(slice_basis)}
    delta = data.d - data.weights.total
    pre_basis = _slice_monovecs(data, degree - 1, weight - delta)
    columns = [
        _vector_of(coboundary(_monovec(degree - 1, slot, m), data.phi),
                   index, len(slice_basis))
        for slot, m in pre_basis
    ]
    solver = PreparedSolver.from_columns(columns, len(slice_basis))
    entry = (pre_basis, index, solver)
    data._scratch[key] = entry
    return entry


def project(p: MultiVec, data: SingularityData,
            weight_cap: Optional[int] = None) -> CohClass:
    """Cohomology class of a closed multivector in the label basis.

    Raises NotACocycleError if [pi, p] != 0, and SliceCapExceededError if
    a weight slice above ``weight_cap`` (when given) would be needed.
    """
    g = p.degree - 1
    if p.degree not in SLOTS or p.is_zero():
        return CohClass.zero(g)
    if not coboundary(p, data.phi).is_zero():
        raise NotACocycleError(
            f"degree {p.degree} multivector is not closed under the "
            "Poisson differential"
        )
    coeffs: dict[BasisLabel, Fraction] = {}
    for weight, part in multivec_weight_parts(p, data.weights).items():
        if weight_cap is not None and weight > weight_cap:
            raise SliceCapExceededError(
                f"projection needs weight slice {weight} > cap {weight_cap}"
            )
        labels, index, solver = _projection_solver(data, p.degree, weight)
        solution = solver.solve(_vector_of(part, index, solver.n_rows))
        if solution is None:
            raise CohomologyError(
                f"closed slice of weight {weight} lies outside span of "
                "basis classes and coboundaries; the stored basis is "
                "incomplete for this potential"
            )
        for label, value in zip(labels, solution[: len(labels)]):
            if value:
                coeffs[label] = coeffs.get(label, Fraction(0)) + value
    return CohClass.make(g, coeffs)


def solve_coboundary(target: MultiVec, data: SingularityData,
                     weight_cap: Optional[int] = None) -> MultiVec:
    """A multivector y with [pi, y] = target, free part chosen zero.

    Raises NotACoboundaryError if the target is not in the image of the
    differential; the answer is the canonical pivot solution, so repeated
    calls are deterministic.
    """
    result = MultiVec.zero(target.degree - 1)
    if target.degree not in SLOTS or target.is_zero():
        return result
    for weight, part in multivec_weight_parts(target, data.weights).items():
        if weight_cap is not None and weight > weight_cap:
            raise SliceCapExceededError(
                f"coboundary solve needs weight slice {weight} > cap {weight_cap}"
            )
        pre_basis, index, solver = _coboundary_solver(data, target.degree, weight)
        solution = solver.solve(_vector_of(part, index, solver.n_rows))
        if solution is None:
            raise NotACoboundaryError(
                f"weight {weight} slice of the target is not a coboundary"
            )
        for (slot, m), value in zip(pre_basis, solution):
            if value:
                result = result + _monovec(target.degree - 1, slot, m) * value
    return result
