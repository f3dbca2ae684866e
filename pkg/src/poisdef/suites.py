"""Seeded verification suites with deterministic, JSON-ready reports.

Each suite runner takes an analyzed potential (``SingularityData``) and a
``SuiteConfig`` and returns a plain dict::

    {"suite": <name>,
     "checks": [{"name": ..., "pass": bool, "cases": int, ...}, ...],
     "counts": {"pass": int, "fail": int},
     "status": "pass" | "fail"}

Checks are appended in a fixed order, label enumerations are canonical,
and all randomness flows through ``random.Random(config.seed)``, so a
given (potential, config) pair always produces the identical report.

Every numerical check below is exact: a residual either is the zero
polynomial object or it is not.  There are no tolerances anywhere.

The five suites:

``schouten``
    Chain-level bracket identities: the self-bracket of the structure
    bivector, the closed family of identities satisfied by the degree-1
    representatives (Hamiltonian-type and exact bivectors), and seeded
    graded antisymmetry / graded Leibniz / square-zero spot checks.

``tables``
    Every enumerated basis representative is a cocycle, the degree-0
    family appears exactly for balanced potentials, and the order-2
    morphism equation holds on every pair of basis labels under the cap.

``transfer``
    The order-3 obstruction vanishes identically on triples of degree-1
    labels, obstructions are cocycles on mixed tuples, the order-3/4
    morphism equations and generalized Jacobi identities hold, and the
    closed-form value of the ternary bracket on (phi, phi, volume) is
    reproduced for unbalanced potentials.

``deform``
    Seeded random coefficient families give bivector series that are
    Poisson to the truncation order, agree with the Maurer-Cartan image
    of the transferred structure, recover their first-order class, and
    truncate consistently.

``gauge``
    Seeded gauge transformations preserve both the Poisson property and
    the first-order class; for balanced potentials the class-level gauge
    action of degree-0 classes preserves Maurer-Cartan solutions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import Poly
from .cohomology import (
    BasisLabel,
    CohClass,
    a_index_range,
    class_str,
    enumerate_basis,
    realize,
)
from .deform import (
    CoeffFamily,
    NuSeries,
    build_deformation,
    first_order_class,
    gamma_classes,
    gauge_apply,
    gauge_special,
    jacobi_residual,
    mc_image,
)
from .linfty import TransferState, check_E, compute_T, jacobiator
from .multivec import (
    SLOTS,
    MultiVec,
    coboundary,
    multivec_str,
    poisson_from_potential,
    schouten,
)
from .singularity import SingularityData

SUITE_NAMES = ("schouten", "tables", "transfer", "deform", "gauge")


@dataclass(frozen=True)
class SuiteConfig:
    """Knobs shared by the verification suites.

    ``weight_cap`` bounds the label weight of enumerated bases; when
    None, sweeps over pairs/triples use twice the potential degree and
    the cocycle sweep uses three times the potential degree.
    ``phi_power_cap`` bounds the power of the potential appearing in
    closed identity sweeps and in random coefficient families.
    """

    order: int = 3
    weight_cap: Optional[int] = None
    arity_cap: int = 4
    seed: int = 0
    phi_power_cap: int = 2
    n_families: int = 20
    n_gauges: int = 10
    n_samples: int = 10

    def pair_cap(self, data: SingularityData) -> int:
        return 2 * data.d if self.weight_cap is None else self.weight_cap

    def cocycle_cap(self, data: SingularityData) -> int:
        return 3 * data.d if self.weight_cap is None else self.weight_cap


# -- seeded samplers -----------------------------------------------------------


def random_fraction(rng: random.Random, *, zero_ok: bool = False) -> Fraction:
    """Small random rational with numerator in -9..9, denominator 1..4."""
    while True:
        num = rng.randint(-9, 9)
        if num != 0 or zero_ok:
            return Fraction(num, rng.randint(1, 4))


def random_polynomial(rng: random.Random, *, max_exponent: int = 2,
                      max_terms: int = 3) -> Poly:
    """Random sparse polynomial with small exponents and coefficients."""
    total = Poly.zero()
    for _ in range(rng.randint(1, max_terms)):
        exponents = tuple(rng.randint(0, max_exponent) for _ in range(3))
        total = total + Poly.monomial(exponents, random_fraction(rng))
    return total


def random_multivector(rng: random.Random, degree: int, *,
                       max_exponent: int = 2, max_terms: int = 2) -> MultiVec:
    """Random multivector with random polynomial components."""
    comps = tuple(
        random_polynomial(rng, max_exponent=max_exponent, max_terms=max_terms)
        for _ in SLOTS[degree]
    )
    return MultiVec(degree, comps)


def random_family(rng: random.Random, data: SingularityData, *, order: int,
                  phi_power_cap: int = 2, max_entries: int = 3) -> CoeffFamily:
    """Random coefficient family supported on the degree-1 basis.

    Every generated index is valid for ``data``: Hamiltonian-type
    coefficients use Milnor indices from the admissible range and powers
    of the potential up to ``phi_power_cap``; exact-bivector coefficients
    use Milnor indices 1..mu-1.
    """
    c: dict[tuple[int, int, int], Fraction] = {}
    cbar: dict[tuple[int, int], Fraction] = {}
    a_indices = list(a_index_range(data))
    b_indices = list(range(1, data.mu))
    for n in range(1, order + 1):
        for _ in range(rng.randint(1, max_entries)):
            use_a = a_indices and (not b_indices or rng.random() < 0.6)
            if use_a:
                key = (n, rng.randint(0, phi_power_cap), rng.choice(a_indices))
                c[key] = c.get(key, Fraction(0)) + random_fraction(rng)
            elif b_indices:
                key_b = (n, rng.choice(b_indices))
                cbar[key_b] = cbar.get(key_b, Fraction(0)) + random_fraction(rng)
    return CoeffFamily.make(c, cbar)


def random_gauge_series(rng: random.Random, order: int, *,
                        max_exponent: int = 2, max_terms: int = 2) -> NuSeries:
    """Random series of polynomial vector fields (orders 1..order)."""
    coeffs = tuple(
        random_multivector(rng, 1, max_exponent=max_exponent,
                           max_terms=max_terms)
        for _ in range(order)
    )
    return NuSeries(order_cap=order, coeffs=coeffs)


def all_basis_labels(data: SingularityData, weight_cap: int) -> list[BasisLabel]:
    """Basis labels of every homological degree, canonical order."""
    out: list[BasisLabel] = []
    for g in (-1, 0, 1, 2):
        out.extend(enumerate_basis(data, g, weight_cap))
    return out


# -- report plumbing -----------------------------------------------------------


def _record(checks: list, name: str, ok: bool, *, cases: int = 1,
            detail: Optional[str] = None, value: Optional[str] = None) -> None:
    entry: dict = {"name": name, "pass": bool(ok), "cases": cases}
    if value is not None:
        entry["value"] = value
    if not ok and detail is not None:
        entry["detail"] = detail
    checks.append(entry)


def _finish(name: str, checks: list) -> dict:
    n_pass = sum(1 for entry in checks if entry["pass"])
    return {
        "suite": name,
        "checks": checks,
        "counts": {"pass": n_pass, "fail": len(checks) - n_pass},
        "status": "pass" if n_pass == len(checks) else "fail",
    }


# -- schouten suite ------------------------------------------------------------

_PAIR_DEGREES = ((1, 1), (1, 2), (2, 2), (0, 2), (1, 3))
_TRIPLE_DEGREES = ((1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2), (0, 1, 2))


def run_schouten_suite(data: SingularityData, config: SuiteConfig,
                       state: Optional[TransferState] = None) -> dict:
    """Chain-level bracket identities and seeded algebraic spot checks."""
    del state  # the bracket identities live below the transfer machinery
    checks: list = []
    rng = random.Random(config.seed)
    phi = data.phi
    pi = poisson_from_potential(phi)

    _record(checks, "structure_bivector_self_bracket_vanishes",
            schouten(pi, pi).is_zero())

    # Degree-1 representative families entering the closed identities.
    powers = [Poly.one()]
    for _ in range(config.phi_power_cap):
        powers.append(powers[-1] * phi)
    u = data.basis_polys
    hamiltonian = {
        (a, k): pi.mul_poly(powers[a] * u[k])
        for a in range(config.phi_power_cap + 1)
        for k in range(data.mu)
    }
    exact = {r: poisson_from_potential(u[r]) for r in range(1, data.mu)}

    ham_keys = sorted(hamiltonian)
    bad = []
    n_cases = 0
    for i, key_a in enumerate(ham_keys):
        for key_b in ham_keys[i:]:
            n_cases += 1
            if not schouten(hamiltonian[key_a], hamiltonian[key_b]).is_zero():
                bad.append((key_a, key_b))
    _record(checks, "hamiltonian_pair_brackets_vanish", not bad,
            cases=n_cases, detail=f"failing pairs: {bad[:4]}")

    bad = []
    n_cases = 0
    for key_a in ham_keys:
        a, k = key_a
        for t in sorted(exact):
            n_cases += 1
            lhs = schouten(hamiltonian[key_a], exact[t])
            carrier = exact[t].mul_poly(powers[a] * u[k])
            if not (lhs + coboundary(carrier, phi)).is_zero():
                bad.append((key_a, t))
    _record(checks, "hamiltonian_exact_brackets_are_coboundaries", not bad,
            cases=n_cases, detail=f"failing pairs: {bad[:4]}")

    bad = []
    n_cases = 0
    exact_keys = sorted(exact)
    for i, s in enumerate(exact_keys):
        for t in exact_keys[i:]:
            n_cases += 1
            if not schouten(exact[s], exact[t]).is_zero():
                bad.append((s, t))
    _record(checks, "exact_pair_brackets_vanish", not bad,
            cases=n_cases, detail=f"failing pairs: {bad[:4]}")

    # Seeded graded antisymmetry: [P,Q] = -(-1)^((p-1)(q-1)) [Q,P].
    bad_cases: list[str] = []
    n_cases = 0
    for p_deg, q_deg in _PAIR_DEGREES:
        for _ in range(max(1, config.n_samples // len(_PAIR_DEGREES))):
            n_cases += 1
            p = random_multivector(rng, p_deg)
            q = random_multivector(rng, q_deg)
            sign = -1 if ((p_deg - 1) * (q_deg - 1)) % 2 else 1
            residual = schouten(p, q) + schouten(q, p) * sign
            if not residual.is_zero():
                bad_cases.append(f"degrees ({p_deg},{q_deg})")
    _record(checks, "graded_antisymmetry_samples", not bad_cases,
            cases=n_cases, detail="; ".join(bad_cases[:4]))

    # Seeded graded Leibniz: [[P,Q],R] = [P,[Q,R]] - (-1)^((p-1)(q-1)) [Q,[P,R]].
    bad_cases = []
    n_cases = 0
    for p_deg, q_deg, r_deg in _TRIPLE_DEGREES:
        for _ in range(max(1, config.n_samples // len(_TRIPLE_DEGREES))):
            n_cases += 1
            p = random_multivector(rng, p_deg, max_terms=1)
            q = random_multivector(rng, q_deg, max_terms=1)
            r = random_multivector(rng, r_deg, max_terms=1)
            sign = -1 if ((p_deg - 1) * (q_deg - 1)) % 2 else 1
            residual = (schouten(schouten(p, q), r)
                        - schouten(p, schouten(q, r))
                        + schouten(q, schouten(p, r)) * sign)
            if not residual.is_zero():
                bad_cases.append(f"degrees ({p_deg},{q_deg},{r_deg})")
    _record(checks, "graded_leibniz_samples", not bad_cases,
            cases=n_cases, detail="; ".join(bad_cases[:4]))

    # Seeded d^2 = 0 on random multivectors of degree 0 and 1.
    bad_cases = []
    n_cases = 0
    for degree in (0, 1):
        for _ in range(max(1, config.n_samples // 2)):
            n_cases += 1
            p = random_multivector(rng, degree)
            if not coboundary(coboundary(p, phi), phi).is_zero():
                bad_cases.append(f"degree {degree}")
    _record(checks, "coboundary_squares_to_zero_samples", not bad_cases,
            cases=n_cases, detail="; ".join(bad_cases[:4]))

    return _finish("schouten", checks)


# -- tables suite --------------------------------------------------------------


def run_tables_suite(data: SingularityData, config: SuiteConfig,
                     state: Optional[TransferState] = None) -> dict:
    """Cocycle sweep and the order-2 morphism equation on basis pairs."""
    if state is None:
        state = TransferState(data=data, arity_cap=config.arity_cap)
    checks: list = []
    cocycle_cap = config.cocycle_cap(data)
    pair_cap = config.pair_cap(data)

    for g in (-1, 0, 1, 2):
        labels = enumerate_basis(data, g, cocycle_cap)
        bad = [str(lab) for lab in labels
               if not coboundary(realize(lab, data), data.phi).is_zero()]
        _record(checks, f"representatives_are_cocycles_degree_{g}", not bad,
                cases=len(labels), detail=", ".join(bad[:6]))

    degree0 = enumerate_basis(data, 0, cocycle_cap)
    if data.special:
        expected = [BasisLabel("Eul", (i,))
                    for i in range(cocycle_cap // data.d + 1)]
        ok = degree0 == [lab for lab in expected
                         if i_weight(data, lab) <= cocycle_cap]
        _record(checks, "degree0_family_is_euler_multiples", ok,
                cases=len(degree0),
                detail=f"got {[str(l) for l in degree0]}")
    else:
        _record(checks, "degree0_family_is_empty", not degree0,
                cases=max(1, len(degree0)),
                detail=f"got {[str(l) for l in degree0]}")

    labels = all_basis_labels(data, pair_cap)
    bad_pairs: list[str] = []
    n_cases = 0
    for i, lab_a in enumerate(labels):
        for lab_b in labels[i:]:
            n_cases += 1
            residual = check_E(
                state, 2,
                [CohClass.single(lab_a), CohClass.single(lab_b)])
            if not residual.is_zero():
                bad_pairs.append(f"({lab_a}, {lab_b})")
    _record(checks, "order2_morphism_equation_on_basis_pairs", not bad_pairs,
            cases=n_cases, detail="; ".join(bad_pairs[:6]))

    return _finish("tables", checks)


def i_weight(data: SingularityData, label: BasisLabel) -> int:
    """Weight of a degree-0 label (multiples of the potential weight)."""
    return label.indices[0] * data.d


# -- transfer suite ------------------------------------------------------------


def run_transfer_suite(data: SingularityData, config: SuiteConfig,
                       state: Optional[TransferState] = None) -> dict:
    """Obstruction vanishing, morphism equations, and Jacobi identities."""
    if state is None:
        state = TransferState(data=data, arity_cap=config.arity_cap)
    checks: list = []
    rng = random.Random(config.seed)
    cap = config.pair_cap(data)

    h1 = enumerate_basis(data, 1, cap)
    bad: list[str] = []
    n_cases = 0
    for triple in itertools.combinations_with_replacement(h1, 3):
        n_cases += 1
        value = compute_T(state, 3, [CohClass.single(lab) for lab in triple])
        if not value.is_zero():
            bad.append(str(tuple(str(lab) for lab in triple)))
    _record(checks, "order3_obstruction_vanishes_on_degree1_triples",
            not bad, cases=max(1, n_cases), detail="; ".join(bad[:4]))

    labels = all_basis_labels(data, cap)
    arities = [n for n in (3, 4) if n <= config.arity_cap]
    for n in arities:
        n_tuples = max(2, config.n_samples // (2 ** (n - 3)))
        bad = []
        cocycle_bad: list[str] = []
        for _ in range(n_tuples):
            chosen = [rng.choice(labels) for _ in range(n)]
            classes = [CohClass.single(lab) for lab in chosen]
            t_value = compute_T(state, n, classes)
            if not coboundary(t_value, data.phi).is_zero():
                cocycle_bad.append(str(tuple(str(lab) for lab in chosen)))
            if not check_E(state, n, classes).is_zero():
                bad.append(str(tuple(str(lab) for lab in chosen)))
        _record(checks, f"order{n}_obstructions_are_cocycles",
                not cocycle_bad, cases=n_tuples,
                detail="; ".join(cocycle_bad[:4]))
        _record(checks, f"order{n}_morphism_equation_on_sampled_tuples",
                not bad, cases=n_tuples, detail="; ".join(bad[:4]))

    for n in arities:
        n_tuples = max(2, config.n_samples // (2 ** (n - 3)))
        bad = []
        for _ in range(n_tuples):
            chosen = [rng.choice(labels) for _ in range(n)]
            classes = [CohClass.single(lab) for lab in chosen]
            if not jacobiator(state, n, classes).is_zero():
                bad.append(str(tuple(str(lab) for lab in chosen)))
        _record(checks, f"order{n}_jacobi_identity_on_sampled_tuples",
                not bad, cases=n_tuples, detail="; ".join(bad[:4]))

    if not data.special:
        # Closed-form value of the ternary bracket on (phi, phi, volume):
        # 2*wt(phi)/(|w| - wt(phi)) times the class of phi, in this
        # package's sign convention for the transferred brackets.
        phi_bar = BasisLabel("Cas", (1,))
        vol_bar = BasisLabel("Top", (0, 0))
        value = state.ell_labels((phi_bar, phi_bar, vol_bar))
        scale = Fraction(2 * data.d, data.weights.total - data.d)
        expected = CohClass.single(phi_bar, scale)
        _record(checks, "ternary_bracket_closed_form_on_potential_volume",
                value == expected, value=class_str(value),
                detail=f"expected {class_str(expected)}")

    return _finish("transfer", checks)


# -- deform suite --------------------------------------------------------------


def run_deform_suite(data: SingularityData, config: SuiteConfig,
                     state: Optional[TransferState] = None) -> dict:
    """Random truncated deformations: Poisson property and consistency."""
    if state is None:
        state = TransferState(data=data, arity_cap=config.arity_cap)
    checks: list = []
    rng = random.Random(config.seed)
    m = config.order

    families = [
        random_family(rng, data, order=m, phi_power_cap=config.phi_power_cap)
        for _ in range(config.n_families)
    ]

    bad_mc: list[int] = []
    bad_route: list[int] = []
    bad_first: list[int] = []
    bad_prefix: list[int] = []
    for idx, fam in enumerate(families):
        series = build_deformation(data, fam, m)
        if not (jacobi_residual(series).is_zero()
                and schouten(series.anchor, series.anchor).is_zero()):
            bad_mc.append(idx)
        gamma = gamma_classes(fam, data, m)
        image = mc_image(state, gamma, m)
        if any(series.coefficient(n) != image.coefficient(n)
               for n in range(1, m + 1)):
            bad_route.append(idx)
        if first_order_class(series, data) != gamma.coefficient(1):
            bad_first.append(idx)
        for lower in range(1, m):
            truncated = build_deformation(data, fam, lower)
            if any(truncated.coefficient(n) != series.coefficient(n)
                   for n in range(1, lower + 1)):
                bad_prefix.append(idx)
                break
    n_fam = len(families)
    _record(checks, "random_families_are_poisson_to_order", not bad_mc,
            cases=n_fam, detail=f"failing family indices: {bad_mc[:6]}")
    _record(checks, "deformation_equals_maurer_cartan_image", not bad_route,
            cases=n_fam, detail=f"failing family indices: {bad_route[:6]}")
    _record(checks, "first_order_class_recovered", not bad_first,
            cases=n_fam, detail=f"failing family indices: {bad_first[:6]}")
    _record(checks, "lower_order_builds_are_prefixes", not bad_prefix,
            cases=n_fam * max(0, m - 1),
            detail=f"failing family indices: {bad_prefix[:6]}")

    a_indices = list(a_index_range(data))
    b_indices = list(range(1, data.mu))
    if m >= 2 and a_indices and b_indices:
        # Unit coefficients on one Hamiltonian-type and one exact label
        # must produce the closed-form cross term at order 2.
        q = a_indices[0] if a_indices[0] >= 1 else (
            a_indices[1] if len(a_indices) > 1 else a_indices[0])
        r = b_indices[0]
        fam = CoeffFamily.make({(1, 0, q): 1}, {(1, r): 1})
        series = build_deformation(data, fam, m)
        u = data.basis_polys
        cross = poisson_from_potential(u[r]).mul_poly(u[q])
        ok = (series.coefficient(2) == cross
              and jacobi_residual(series).is_zero())
        _record(checks, "unit_family_order2_cross_term", ok,
                value=multivec_str(series.coefficient(2)),
                detail=f"expected {multivec_str(cross)}")

    return _finish("deform", checks)


# -- gauge suite ---------------------------------------------------------------


def run_gauge_suite(data: SingularityData, config: SuiteConfig,
                    state: Optional[TransferState] = None) -> dict:
    """Gauge invariance of the Poisson property and the first-order class."""
    if state is None:
        state = TransferState(data=data, arity_cap=config.arity_cap)
    checks: list = []
    rng = random.Random(config.seed)
    m = config.order

    fam = random_family(rng, data, order=m,
                        phi_power_cap=config.phi_power_cap)
    base = build_deformation(data, fam, m)
    base_class = first_order_class(base, data)

    bad_poisson: list[int] = []
    bad_class: list[int] = []
    for idx in range(config.n_gauges):
        xi = random_gauge_series(rng, m)
        gauged = gauge_apply(base, xi)
        if not jacobi_residual(gauged).is_zero():
            bad_poisson.append(idx)
        if first_order_class(gauged, data) != base_class:
            bad_class.append(idx)
    _record(checks, "gauged_series_stay_poisson", not bad_poisson,
            cases=config.n_gauges,
            detail=f"failing gauge indices: {bad_poisson[:6]}")
    _record(checks, "gauged_series_keep_first_order_class", not bad_class,
            cases=config.n_gauges,
            detail=f"failing gauge indices: {bad_class[:6]}")

    if data.special:
        gamma = gamma_classes(fam, data, m)
        bad_mc: list[int] = []
        bad_order1: list[int] = []
        n_special = max(2, config.n_gauges // 2)
        for idx in range(n_special):
            coeffs = []
            for _ in range(m):
                cls = CohClass.zero(0)
                for i in (0, 1):
                    if i * data.d <= config.pair_cap(data):
                        cls = cls + CohClass.single(
                            BasisLabel("Eul", (i,)), random_fraction(rng))
                coeffs.append(cls)
            xi = NuSeries(order_cap=m, coeffs=tuple(coeffs))
            gauged_gamma = gauge_special(state, gamma, xi)
            if gauged_gamma.coefficient(1) != gamma.coefficient(1):
                bad_order1.append(idx)
            image = mc_image(state, gauged_gamma, m)
            series = NuSeries(order_cap=m, coeffs=image.coeffs,
                              anchor=base.anchor)
            if not jacobi_residual(series).is_zero():
                bad_mc.append(idx)
        _record(checks, "class_level_gauge_preserves_maurer_cartan",
                not bad_mc, cases=n_special,
                detail=f"failing gauge indices: {bad_mc[:6]}")
        _record(checks, "class_level_gauge_fixes_first_order", not bad_order1,
                cases=n_special,
                detail=f"failing gauge indices: {bad_order1[:6]}")

    return _finish("gauge", checks)


# -- registry ------------------------------------------------------------------

_RUNNERS = {
    "schouten": run_schouten_suite,
    "tables": run_tables_suite,
    "transfer": run_transfer_suite,
    "deform": run_deform_suite,
    "gauge": run_gauge_suite,
}


def run_suite(name: str, data: SingularityData, config: SuiteConfig,
              state: Optional[TransferState] = None) -> dict:
    """Run one suite by name; unknown names raise ValueError."""
    runner = _RUNNERS.get(name)
    if runner is None:
        raise ValueError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}"
        )
    return runner(data, config, state)


def run_suites(names: Sequence[str], data: SingularityData,
               config: SuiteConfig) -> list[dict]:
    """Run several suites in the given order, sharing one transfer state."""
    state = TransferState(data=data, arity_cap=config.arity_cap)
    return [run_suite(name, data, config, state) for name in names]
