#!/usr/bin/env python3
"""Survey a list of weighted-homogeneous potentials.

For each potential the script prints the weight data, Milnor number,
monomial basis of the Jacobian quotient, and the Poisson-cohomology
basis sizes per degree under a weight cap.  Run as

    python3 scripts/analyze_potentials.py
    python3 scripts/analyze_potentials.py --phi "x^4 + y^4 + z^4" --cap 8
"""

from __future__ import annotations

import argparse

from poisdef import (
    enumerate_basis,
    infer_weights,
    label_weight,
    milnor_basis,
    parse_poly,
    poly_str,
)

DEFAULT_POTENTIALS = (
    "x^2 + y^2 + z^2",
    "x^3 + y^3 + z^3",
    "x^2 + y^3 + z^5",
    "x^2 + y^2 + z^5",
    "x^4 + y^4 + z^4",
)


def describe(phi_text: str, cap: int | None) -> None:
    phi = parse_poly(phi_text)
    weights = infer_weights(phi)
    data = milnor_basis(phi, weights)
    case = "balanced (d = |w|)" if data.special else "unbalanced (d != |w|)"
    print(f"phi = {phi_text}")
    print(f"  weights {weights.weights}, degree d = {data.d}, "
          f"|w| = {weights.total}  [{case}]")
    print(f"  Milnor number mu = {data.mu}, socle degree {data.socle}")
    print(f"  quotient basis: "
          f"{', '.join(poly_str(p) for p in data.basis_polys)}")
    weight_cap = cap if cap is not None else 2 * data.d
    print(f"  cohomology basis sizes up to label weight {weight_cap}:")
    for g in (-1, 0, 1, 2):
        labels = enumerate_basis(data, g, weight_cap)
        span = ""
        if labels:
            lo = min(label_weight(lab, data) for lab in labels)
            hi = max(label_weight(lab, data) for lab in labels)
            span = f" (label weights {lo}..{hi})"
        print(f"    degree {g:+d}: {len(labels)} classes{span}")
    print()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--phi", action="append", default=None,
                        help="potential to analyze (repeatable); "
                             "defaults to the built-in survey list")
    parser.add_argument("--cap", type=int, default=None,
                        help="label-weight cap for basis enumeration "
                             "(default: 2d per potential)")
    args = parser.parse_args()
    potentials = args.phi if args.phi else list(DEFAULT_POTENTIALS)
    for text in potentials:
        describe(text, args.cap)


if __name__ == "__main__":
    main()
