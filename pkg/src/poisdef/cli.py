"""Command-line interface: analyze, deform, and verify subcommands.

All three commands emit a single JSON report (to stdout, or to the path
given by ``--report``).  Reports contain no timestamps, hostnames, or
absolute paths, and every sweep or sample is driven by the seed recorded
in the report, so identical inputs produce byte-identical output.

Exit codes:

* ``0`` — the command ran and every check passed,
* ``1`` — domain error (unparsable input, ambiguous or invalid weights,
  non-isolated singular point, invalid coefficient family, cap
  violations, unusable files or flags),
* ``2`` — the command ran but at least one exact check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

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
    SliceCapExceededError,
    class_str,
    enumerate_basis,
)
from .deform import (
    CoeffFamily,
    InvalidFamilyError,
    build_deformation,
    first_order_class,
    jacobi_residual,
)
from .linfty import ArityCapExceededError
from .multivec import multivec_str
from .singularity import SingularityData, SingularityError, milnor_basis
from .suites import SUITE_NAMES, SuiteConfig, run_suites

_DOMAIN_ERRORS = (
    PolyParseError,
    WeightInferenceError,
    SingularityError,
    InvalidFamilyError,
    ArityCapExceededError,
    SliceCapExceededError,
    OSError,
    json.JSONDecodeError,
)


class CLIUsageError(ValueError):
    """Unusable command line (unknown flag, bad literal, missing value)."""


class _ArgumentParser(argparse.ArgumentParser):
    """Argparse variant that raises instead of calling sys.exit(2)."""

    def error(self, message):
        raise CLIUsageError(message)


# -- shared pieces -------------------------------------------------------------


def _parse_weights(text: str) -> WeightSystem:
    parts = text.split(",")
    if len(parts) != 3:
        raise CLIUsageError(
            f"--weights expects three comma-separated integers, got {text!r}"
        )
    try:
        values = tuple(int(part.strip()) for part in parts)
    except ValueError:
        raise CLIUsageError(
            f"--weights expects integers, got {text!r}"
        ) from None
    try:
        return WeightSystem(values)
    except ValueError as exc:
        raise CLIUsageError(str(exc)) from None


def _load_data(args) -> tuple[SingularityData, bool]:
    """Parse the potential, fix weights, and analyze the singular point."""
    phi = parse_poly(args.phi)
    if args.weights is not None:
        weights = _parse_weights(args.weights)
        inferred = False
        if not _is_homogeneous(phi, weights):
            raise CLIUsageError(
                f"{poly_str(phi)} is not weight-homogeneous for weights "
                f"{weights.weights}"
            )
    else:
        weights = infer_weights(phi)
        inferred = True
    return milnor_basis(phi, weights), inferred


def _is_homogeneous(phi: Poly, weights: WeightSystem) -> bool:
    degrees = {weights.monomial_weight(e) for e in phi.exponents()}
    return len(degrees) == 1


def _potential_block(data: SingularityData, inferred: bool) -> dict:
    return {
        "phi": poly_str(data.phi),
        "weights": list(data.weights.weights),
        "weights_inferred": inferred,
        "degree": data.d,
        "abs_weight": data.weights.total,
        "case": "special" if data.special else "generic",
        "mu": data.mu,
        "socle": data.socle,
        "milnor_basis": [poly_str(p) for p in data.basis_polys],
    }


def _emit(report: dict, path: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _load_family(path: Optional[str]) -> CoeffFamily:
    if path is None:
        return CoeffFamily.make({}, {})
    with open(path, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    if not isinstance(payload, dict):
        raise InvalidFamilyError("family file must hold a JSON object")
    return CoeffFamily.from_json_dict(payload)


# -- subcommands ---------------------------------------------------------------


def cmd_analyze(args) -> int:
    data, inferred = _load_data(args)
    cap = args.weight_cap if args.weight_cap is not None else 2 * data.d
    basis = {
        str(g): [str(lab) for lab in enumerate_basis(data, g, cap)]
        for g in (-1, 0, 1, 2)
    }
    report = {
        "command": "analyze",
        "potential": _potential_block(data, inferred),
        "basis_weight_cap": cap,
        "cohomology_basis": basis,
        "status": "pass",
    }
    _emit(report, args.report)
    return 0


def cmd_deform(args) -> int:
    data, inferred = _load_data(args)
    if args.order < 1:
        raise CLIUsageError("--order must be at least 1")
    fam = _load_family(args.family)
    series = build_deformation(data, fam, args.order)
    residual = jacobi_residual(series)
    residual_rows = [
        {"order": n, "zero": residual.coefficient(n).is_zero()}
        for n in range(1, args.order + 1)
    ]
    ok = all(row["zero"] for row in residual_rows)
    report = {
        "command": "deform",
        "potential": _potential_block(data, inferred),
        "order": args.order,
        "family": fam.to_json_dict(),
        "coefficients": [
            {"order": 0, "multivector": multivec_str(series.coefficient(0))}
        ] + [
            {"order": n, "multivector": multivec_str(series.coefficient(n))}
            for n in range(1, args.order + 1)
        ],
        "first_order_class": class_str(first_order_class(series, data)),
        "jacobi_residual": residual_rows,
        "status": "pass" if ok else "fail",
    }
    _emit(report, args.report)
    return 0 if ok else 2


def cmd_verify(args) -> int:
    data, inferred = _load_data(args)
    names = args.suites if args.suites else list(SUITE_NAMES)
    for name in names:
        if name not in SUITE_NAMES:
            raise CLIUsageError(
                f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}"
            )
    if args.order < 1:
        raise CLIUsageError("--order must be at least 1")
    if args.arity_cap < 2:
        raise CLIUsageError("--arity-cap must be at least 2")
    config = SuiteConfig(
        order=args.order,
        weight_cap=args.weight_cap,
        arity_cap=args.arity_cap,
        seed=args.seed,
    )
    suite_reports = run_suites(names, data, config)
    ok = all(rep["status"] == "pass" for rep in suite_reports)
    report = {
        "command": "verify",
        "potential": _potential_block(data, inferred),
        "config": {
            "order": config.order,
            "weight_cap": config.weight_cap,
            "arity_cap": config.arity_cap,
            "seed": config.seed,
            "suites": list(names),
        },
        "suites": suite_reports,
        "status": "pass" if ok else "fail",
    }
    _emit(report, args.report)
    return 0 if ok else 2


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="poisdef",
        description=(
            "Exact deformations of Poisson structures from weighted-"
            "homogeneous potentials."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, order=False, caps=False, family=False, seed=False):
        p.add_argument("--phi", required=True,
                       help="potential, e.g. 'x^2 + y^3 + z^5'")
        p.add_argument("--weights", default=None, metavar="a,b,c",
                       help="variable weights (inferred when omitted)")
        if order:
            p.add_argument("--order", type=int, default=3, metavar="m",
                           help="truncation order in the formal parameter")
        if caps:
            p.add_argument("--weight-cap", type=int, default=None,
                           metavar="W", help="label weight cap for sweeps")
            p.add_argument("--arity-cap", type=int, default=4, metavar="K",
                           help="largest bracket arity that may be used")
        if family:
            p.add_argument("--family", default=None, metavar="PATH",
                           help="JSON coefficient family (default: empty)")
        if seed:
            p.add_argument("--seed", type=int, default=0, metavar="N",
                           help="seed for the sampled checks")
        p.add_argument("--report", default=None, metavar="PATH",
                       help="write the JSON report here instead of stdout")

    p_analyze = sub.add_parser(
        "analyze", help="classify the potential and list cohomology bases")
    p_analyze.add_argument("--weight-cap", type=int, default=None, metavar="W",
                           help="label weight cap for the basis listing")
    add_common(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_deform = sub.add_parser(
        "deform", help="build a truncated deformation from a family")
    add_common(p_deform, order=True, family=True)
    p_deform.set_defaults(func=cmd_deform)

    p_verify = sub.add_parser(
        "verify", help="run exact verification suites")
    p_verify.add_argument("suites", nargs="*", metavar="SUITE",
                          help=f"suites to run (default: all of "
                               f"{', '.join(SUITE_NAMES)})")
    add_common(p_verify, order=True, caps=True, seed=True)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def _error_report(exc: Exception) -> str:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CLIUsageError as exc:
        sys.stderr.write(_error_report(exc))
        return 1
    try:
        return args.func(args)
    except CLIUsageError as exc:
        sys.stderr.write(_error_report(exc))
        return 1
    except _DOMAIN_ERRORS as exc:
        sys.stderr.write(_error_report(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
