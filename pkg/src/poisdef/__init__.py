"""Exact deformations of Poisson structures from weighted-homogeneous
potentials on polynomial algebras in three variables.

The package computes, over the rationals and without any floating-point
arithmetic:

* Milnor data of the potential's singular point (``singularity``),
* the Schouten calculus of polynomial multivector fields and the
  potential's coboundary operator (``multivec``),
* explicit bases of the coboundary cohomology in every degree and exact
  projection / preimage solvers (``cohomology``),
* the transferred bracket hierarchy on cohomology together with its
  homotopies, obstructions, and consistency equations (``linfty``),
* truncated formal deformations of the structure bivector, their
  Maurer-Cartan checks, and gauge actions (``deform``),
* seeded exact verification suites and a JSON-reporting command line
  (``suites``, ``cli``).
"""

from .algebra import (
    Poly,
    PolyParseError,
    WeightInferenceError,
    WeightSystem,
    infer_weights,
    parse_poly,
    poly_str,
)
from .cohomology import (
    BasisLabel,
    CohClass,
    CohomologyError,
    NotACoboundaryError,
    NotACocycleError,
    SliceCapExceededError,
    a_index_range,
    class_str,
    enumerate_basis,
    f1,
    label_weight,
    labels_of_weight,
    parse_label,
    project,
    realize,
    solve_coboundary,
    validate_label,
)
from .deform import (
    CoeffFamily,
    InvalidFamilyError,
    NuSeries,
    build_deformation,
    first_order_class,
    gamma_classes,
    gauge_apply,
    gauge_special,
    jacobi_residual,
    mc_image,
)
from .linfty import (
    ArityCapExceededError,
    TransferState,
    check_E,
    compute_T,
    f2_table,
    jacobiator,
    koszul_chi,
    koszul_sign,
    transfer_step,
)
from .multivec import (
    MultiVec,
    coboundary,
    coordinate_volume,
    euler_field,
    multivec_str,
    poisson_from_potential,
    schouten,
    shuffles,
    wedge,
)
from .singularity import (
    NotIsolatedError,
    SingularityData,
    SingularityError,
    check_isolated,
    milnor_basis,
    monomials_of_weight,
    normal_form,
)
from .suites import (
    SUITE_NAMES,
    SuiteConfig,
    all_basis_labels,
    random_family,
    random_fraction,
    random_gauge_series,
    random_multivector,
    random_polynomial,
    run_suite,
    run_suites,
)

__version__ = "0.1.0"

__all__ = [
    "ArityCapExceededError",
    "BasisLabel",
    "CohClass",
    "CohomologyError",
    "CoeffFamily",
    "InvalidFamilyError",
    "MultiVec",
    "NotACoboundaryError",
    "NotACocycleError",
    "NotIsolatedError",
    "NuSeries",
    "Poly",
    "PolyParseError",
    "SUITE_NAMES",
    "SingularityData",
    "SingularityError",
    "SliceCapExceededError",
    "SuiteConfig",
    "TransferState",
    "WeightInferenceError",
    "WeightSystem",
    "a_index_range",
    "all_basis_labels",
    "build_deformation",
    "check_E",
    "check_isolated",
    "class_str",
    "coboundary",
    "compute_T",
    "coordinate_volume",
    "enumerate_basis",
    "euler_field",
    "f1",
    "f2_table",
    "first_order_class",
    "gamma_classes",
    "gauge_apply",
    "gauge_special",
    "infer_weights",
    "jacobi_residual",
    "jacobiator",
    "koszul_chi",
    "koszul_sign",
    "label_weight",
    "labels_of_weight",
    "mc_image",
    "milnor_basis",
    "monomials_of_weight",
    "multivec_str",
    "normal_form",
    "parse_label",
    "parse_poly",
    "poisson_from_potential",
    "poly_str",
    "project",
    "random_family",
    "random_fraction",
    "random_gauge_series",
    "random_multivector",
    "random_polynomial",
    "realize",
    "run_suite",
    "run_suites",
    "schouten",
    "shuffles",
    "solve_coboundary",
    "transfer_step",
    "validate_label",
    "wedge",
]
