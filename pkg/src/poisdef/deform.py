"""Formal deformations of an exact Poisson bivector at finite truncation.

A deformation is a bivector series pi_0 + gamma_1 nu + gamma_2 nu^2 + ...
truncated at a fixed order; it is Poisson up to that order when the
Schouten self-bracket vanishes order by order.  Working in the cohomology
label basis, every truncated deformation is generated by a finite family
of rational coefficients

    c[n, l, i]    multiplying  phi^l * u_i * pi      (A-type directions)
    cbar[n, r]    multiplying  the exact bivector of u_r  (B-type)

through the closed order-n formula implemented in
:func:`build_deformation`:

    gamma_n = sum_{a+b=n} sum_{(l,i),r} c[a,l,i] * cbar[b,r] *
                  phi^l * u_i * (exact bivector of u_r)
            + sum_{(l,i)} c[n,l,i] * phi^l * u_i * pi
            + sum_r cbar[n,r] * (exact bivector of u_r).

The same series arises from the transferred L-infinity structure: the
Maurer-Cartan image of the class series gamma_n = sum c A + sum cbar B is

    MC_n = f_1(gamma_n) + (1/2) * sum_{a+b=n} f_2(gamma_a, gamma_b)

(higher homotopies vanish on bivector classes), and
pi_0 + sum MC_n nu^n agrees with build_deformation.  Both routes are kept
separate so they can be checked against each other.

Gauge action: a polynomial vector-field series xi acts on a deformation
by the exponential of the adjoint action,

    e^{ad_xi}(pi_*) = pi_* + [xi, pi_*] + (1/2!)[xi, [xi, pi_*]] + ...,

truncated at the series order; it preserves the Poisson condition and the
first-order cohomology class.  On the class side (balanced potentials
only), a series xi_n of degree-0 classes acts by

    gamma  ->  gamma - sum_{k>=2} ((-1)^(k(k-1)/2) / (k-1)!) *
                           ell_k(xi, gamma, ..., gamma),

which is the identity in the unbalanced case since degree-0 classes then
vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence, Union

from .algebra import Poly, ScalarLike
from .cohomology import BasisLabel, CohClass, f1, project
from .linfty import TransferState
from .multivec import MultiVec, poisson_from_potential, schouten
from .singularity import SingularityData
from .cohomology import a_index_range


class InvalidFamilyError(ValueError):
    """A coefficient family refers to indices that do not exist."""


@dataclass(frozen=True)
class NuSeries:
    """Truncated series in the formal parameter nu.

    ``coeffs[n-1]`` is the order-n coefficient (n = 1..order_cap); all
    coefficients share one kind (multivectors of a fixed degree, or
    classes of a fixed degree).  ``anchor``, when present, is an order-0
    multivector the series deforms (the undeformed Poisson bivector).
    """

    order_cap: int
    coeffs: tuple
    anchor: Optional[MultiVec] = None

    def __post_init__(self):
        if self.order_cap < 1:
            raise ValueError("series order cap must be at least 1")
        if len(self.coeffs) != self.order_cap:
            raise ValueError(
                f"expected {self.order_cap} coefficients, got {len(self.coeffs)}"
            )

    def coefficient(self, n: int):
        """Order-n coefficient, n = 1..order_cap (0 returns the anchor)."""
        if n == 0:
            if self.anchor is None:
                raise ValueError("series has no order-0 anchor")
            return self.anchor
        if not 1 <= n <= self.order_cap:
            raise ValueError(f"order {n} outside 1..{self.order_cap}")
        return self.coeffs[n - 1]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)


@dataclass(frozen=True)
class CoeffFamily:
    """Rational generating coefficients of a truncated deformation.

    ``c`` maps (n, l, i) to the coefficient of phi^l * u_i * pi at order
    n; ``cbar`` maps (n, r) to the coefficient of the exact bivector of
    u_r at order n.  JSON form:

        {"c": [[n, l, i, "p/q"], ...], "cbar": [[n, r, "p/q"], ...]}
    """

    c: tuple[tuple[tuple[int, int, int], Fraction], ...]
    cbar: tuple[tuple[tuple[int, int], Fraction], ...]

    @classmethod
    def make(cls, c: dict[tuple[int, int, int], ScalarLike],
             cbar: dict[tuple[int, int], ScalarLike]) -> "CoeffFamily":
        c_clean = {key: Fraction(v) for key, v in c.items() if Fraction(v)}
        cbar_clean = {key: Fraction(v) for key, v in cbar.items() if Fraction(v)}
        return cls(tuple(sorted(c_clean.items())),
                   tuple(sorted(cbar_clean.items())))

    def c_dict(self) -> dict[tuple[int, int, int], Fraction]:
        return dict(self.c)

    def cbar_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.cbar)

    def validate(self, data: SingularityData) -> None:
        allowed = a_index_range(data)
        for (n, l, i), _ in self.c:
            if n < 1:
                raise InvalidFamilyError(f"c[{n},{l},{i}]: order must be >= 1")
            if l < 0:
                raise InvalidFamilyError(f"c[{n},{l},{i}]: phi power must be >= 0")
            if i not in allowed:
                raise InvalidFamilyError(
                    f"c[{n},{l},{i}]: u-index {i} outside {list(allowed)!r}"
                )
        for (n, r), _ in self.cbar:
            if n < 1:
                raise InvalidFamilyError(f"cbar[{n},{r}]: order must be >= 1")
            if not 1 <= r <= data.mu - 1:
                raise InvalidFamilyError(
                    f"cbar[{n},{r}]: index {r} outside 1..{data.mu - 1}"
                )

    def to_json_dict(self) -> dict:
        return {
            "c": [[n, l, i, str(v)] for (n, l, i), v in self.c],
            "cbar": [[n, r, str(v)] for (n, r), v in self.cbar],
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "CoeffFamily":
        if not isinstance(payload, dict):
            raise InvalidFamilyError("family JSON must be an object")
        c: dict[tuple[int, int, int], Fraction] = {}
        for entry in payload.get("c", []):
            if len(entry) != 4:
                raise InvalidFamilyError(f"c entry {entry!r} must be [n,l,i,value]")
            n, l, i, value = entry
            c[(int(n), int(l), int(i))] = Fraction(value)
        cbar: dict[tuple[int, int], Fraction] = {}
        for entry in payload.get("cbar", []):
            if len(entry) != 3:
                raise InvalidFamilyError(f"cbar entry {entry!r} must be [n,r,value]")
            n, r, value = entry
            cbar[(int(n), int(r))] = Fraction(value)
        return cls.make(c, cbar)


def gamma_classes(fam: CoeffFamily, data: SingularityData, m: int) -> NuSeries:
    """The family as a series of degree-1 cohomology classes."""
    fam.validate(data)
    coeffs = []
    c = fam.c_dict()
    cbar = fam.cbar_dict()
    for n in range(1, m + 1):
        parts: dict[BasisLabel, Fraction] = {}
        for (order, l, i), value in c.items():
            if order == n:
                parts[BasisLabel("A", (l, i))] = value
        for (order, r), value in cbar.items():
            if order == n:
                parts[BasisLabel("B", (r,))] = value
        coeffs.append(CohClass.make(1, parts))
    return NuSeries(order_cap=m, coeffs=tuple(coeffs))


def build_deformation(data: SingularityData, fam: CoeffFamily,
                      m: int) -> NuSeries:
    """Truncated Poisson deformation generated by a coefficient family.

    Evaluates the closed order-n formula in the module docstring with
    exact arithmetic and returns the anchored bivector series.  The
    result satisfies the Poisson condition up to order m for every
    family, which :func:`jacobi_residual` can confirm.
    """
    if m < 1:
        raise ValueError("truncation order must be at least 1")
    fam.validate(data)
    phi = data.phi
    c = fam.c_dict()
    cbar = fam.cbar_dict()
    a_reps: dict[tuple[int, int], MultiVec] = {}
    b_reps: dict[int, MultiVec] = {}
    pi = poisson_from_potential(phi)
    for (_, l, i) in c:
        if (l, i) not in a_reps:
            a_reps[(l, i)] = pi.mul_poly((phi ** l) * Poly.monomial(data.basis[i]))
    for (_, r) in cbar:
        if r not in b_reps:
            b_reps[r] = poisson_from_potential(Poly.monomial(data.basis[r]))
    coeffs = []
    for n in range(1, m + 1):
        gamma_n = MultiVec.zero(2)
        for (order, l, i), value in c.items():
            if order == n:
                gamma_n = gamma_n + a_reps[(l, i)] * value
        for (order, r), value in cbar.items():
            if order == n:
                gamma_n = gamma_n + b_reps[r] * value
        for (oa, l, i), va in c.items():
            if oa >= n:
                continue
            for (ob, r), vb in cbar.items():
                if oa + ob == n:
                    factor = (phi ** l) * Poly.monomial(data.basis[i]) * (va * vb)
                    gamma_n = gamma_n + b_reps[r].mul_poly(factor)
        coeffs.append(gamma_n)
    return NuSeries(order_cap=m, coeffs=tuple(coeffs), anchor=pi)


def jacobi_residual(series: NuSeries, order: Optional[int] = None) -> NuSeries:
    """Order-by-order Schouten self-bracket of an anchored bivector series.

    Coefficient n of the result is sum over a + b = n of [pi_a, pi_b]
    with pi_0 the anchor; the series is Poisson to order m when all
    coefficients up to m vanish.
    """
    if series.anchor is None:
        raise ValueError("jacobi_residual needs an anchored series")
    m = series.order_cap if order is None else order
    if not 1 <= m <= series.order_cap:
        raise ValueError(f"order {m} outside 1..{series.order_cap}")
    terms = [series.anchor] + list(series.coeffs)
    out = []
    for n in range(1, m + 1):
        residual = MultiVec.zero(3)
        for a in range(0, n + 1):
            residual = residual + schouten(terms[a], terms[n - a])
        out.append(residual)
    return NuSeries(order_cap=m, coeffs=tuple(out))


def mc_image(state: TransferState, gamma: NuSeries,
             m: Optional[int] = None) -> NuSeries:
    """Maurer-Cartan image of a series of degree-1 classes.

    Coefficient n is f_1(gamma_n) + (1/2) sum_{a+b=n} f_2(gamma_a,
    gamma_b); the higher homotopies do not contribute because they vanish
    on tuples of degree-1 classes.
    """
    if m is None:
        m = gamma.order_cap
    if not 1 <= m <= gamma.order_cap:
        raise ValueError(f"order {m} outside 1..{gamma.order_cap}")
    for n in range(1, m + 1):
        cls = gamma.coefficient(n)
        if not isinstance(cls, CohClass) or cls.g_degree != 1:
            raise ValueError("mc_image expects degree-1 cohomology classes")
    data = state.data
    out = []
    for n in range(1, m + 1):
        value = f1(gamma.coefficient(n), data)
        for a in range(1, n):
            pair = state.f([gamma.coefficient(a), gamma.coefficient(n - a)])
            value = value + pair * Fraction(1, 2)
        out.append(value)
    return NuSeries(order_cap=m, coeffs=tuple(out))


def first_order_class(series: NuSeries, data: SingularityData) -> CohClass:
    """Cohomology class of the first-order coefficient of a deformation."""
    return project(series.coefficient(1), data)


def gauge_apply(series: NuSeries, xi: NuSeries,
                order: Optional[int] = None) -> NuSeries:
    """Exponential of the adjoint action of a vector-field series.

    ``xi`` is a series of polynomial vector fields starting at order 1;
    the result is the anchored series of e^{ad_xi} applied to ``series``,
    truncated at ``order`` (default: the series cap).  Nested brackets
    beyond the truncation order vanish because xi has no order-0 term.
    """
    if series.anchor is None:
        raise ValueError("gauge_apply needs an anchored series")
    m = series.order_cap if order is None else order
    if not 1 <= m <= series.order_cap:
        raise ValueError(f"order {m} outside 1..{series.order_cap}")
    if xi.order_cap < m:
        raise ValueError("gauge series must reach the truncation order")
    for n in range(1, m + 1):
        term = xi.coefficient(n)
        if not isinstance(term, MultiVec) or term.degree != 1:
            raise ValueError("gauge series coefficients must be vector fields")
    # accumulated[n] is the order-n coefficient of ad_xi^k(series) / k!
    current = [series.anchor] + [series.coefficient(n) for n in range(1, m + 1)]
    result = list(current)
    for k in range(1, m + 1):
        nxt = [MultiVec.zero(2) for _ in range(m + 1)]
        for n in range(k, m + 1):
            acc = MultiVec.zero(2)
            for a in range(1, n + 1):
                if not current[n - a].is_zero():
                    acc = acc + schouten(xi.coefficient(a), current[n - a])
            nxt[n] = acc
        scale = Fraction(1, k)
        current = [term * scale for term in nxt]
        for n in range(k, m + 1):
            result[n] = result[n] + current[n]
    return NuSeries(order_cap=m, coeffs=tuple(result[1:]), anchor=series.anchor)


def gauge_special(state: TransferState, gamma: NuSeries, xi: NuSeries,
                  m: Optional[int] = None) -> NuSeries:
    """Class-level gauge action of a series of degree-0 classes.

    Implements gamma -> gamma - sum_{k>=2} ((-1)^(k(k-1)/2)/(k-1)!) *
    ell_k(xi, gamma, ..., gamma) order by order; arity demands above the
    state's cap raise ArityCapExceededError.  With an all-zero xi (the
    only possibility for unbalanced potentials, whose degree-0 cohomology
    vanishes) the input is returned unchanged.
    """
    if m is None:
        m = gamma.order_cap
    if not 1 <= m <= gamma.order_cap:
        raise ValueError(f"order {m} outside 1..{gamma.order_cap}")
    if xi.order_cap < m:
        raise ValueError("gauge series must reach the truncation order")
    for n in range(1, m + 1):
        term = xi.coefficient(n)
        if not isinstance(term, CohClass) or term.g_degree != 0:
            raise ValueError("gauge series coefficients must be degree-0 classes")
        cls = gamma.coefficient(n)
        if not isinstance(cls, CohClass) or cls.g_degree != 1:
            raise ValueError("gamma coefficients must be degree-1 classes")
    out = [gamma.coefficient(n) for n in range(1, m + 1)]
    for k in range(2, m + 1):
        exponent = (k * (k - 1)) // 2
        scale = Fraction((-1) ** exponent, factorial(k - 1))
        for n in range(k, m + 1):
            # compositions (a, b_1, ..., b_{k-1}) of n with every part >= 1
            for combo in _compositions(n, k):
                args = [xi.coefficient(combo[0])]
                args += [gamma.coefficient(b) for b in combo[1:]]
                if any(c.is_zero() for c in args):
                    continue
                out[n - 1] = out[n - 1] - state.ell(args) * scale
    return NuSeries(order_cap=m, coeffs=tuple(out))


def _compositions(total: int, parts: int):
    """All ordered tuples of ``parts`` positive integers summing to total."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
