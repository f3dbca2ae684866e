#!/usr/bin/env python3
"""Evaluate the closed-form ternary bracket witness on unbalanced potentials.

For each generic (d != |w|) potential the transferred ternary bracket
satisfies

    l3(phi_bar, phi_bar, vol_bar) = (2d / (|w| - d)) * phi_bar

where phi_bar = Cas(1) is the class of the potential and vol_bar =
Top(0,0) the class of the coordinate volume trivector.  A nonzero value
certifies that the transferred structure is not homotopy abelian at
arity three.  The script computes the bracket through homotopy transfer
and compares it with the predicted rational multiple, exactly.

    python3 scripts/nonformality_witness.py
    python3 scripts/nonformality_witness.py --phi "x^2 + y^2 + z^7"
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from poisdef import (
    CohClass,
    TransferState,
    infer_weights,
    milnor_basis,
    parse_label,
    parse_poly,
)

DEFAULT_POTENTIALS = (
    "x^2 + y^2 + z^2",
    "x^2 + y^3 + z^5",
    "x^2 + y^2 + z^5",
    "x^4 + y^4 + z^4",
)


def witness(phi_text: str) -> None:
    phi = parse_poly(phi_text)
    data = milnor_basis(phi, infer_weights(phi))
    if data.special:
        print(f"phi = {phi_text}: balanced case (d = |w|), "
              "witness not defined — skipped")
        return
    state = TransferState(data, arity_cap=3)
    phi_bar = parse_label("Cas(1)")
    vol_bar = parse_label("Top(0,0)")
    value = state.ell_labels((phi_bar, phi_bar, vol_bar))
    predicted = Fraction(2 * data.d, data.weights.total - data.d)
    expected = CohClass.single(phi_bar, predicted)
    status = "exact match" if value == expected else "MISMATCH"
    print(f"phi = {phi_text}  (d = {data.d}, |w| = {data.weights.total})")
    print(f"  l3(phi_bar, phi_bar, vol_bar) = {value}")
    print(f"  predicted 2d/(|w|-d) * phi_bar = {predicted} * Cas(1)  "
          f"[{status}]")
    print()
    if value != expected:
        raise SystemExit(2)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--phi", action="append", default=None,
                        help="potential to test (repeatable); defaults "
                             "to the built-in list")
    args = parser.parse_args()
    potentials = args.phi if args.phi else list(DEFAULT_POTENTIALS)
    for text in potentials:
        witness(text)


if __name__ == "__main__":
    main()
