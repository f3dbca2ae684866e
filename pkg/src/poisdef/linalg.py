"""Exact linear algebra over the rationals for small dense systems.

Everything here works on lists of ``fractions.Fraction`` rows.  Row
reduction uses ordinary Gauss-Jordan elimination with leftmost-pivot
selection, which is deterministic and exact over Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Row = list[Fraction]

_ZERO = Fraction(0)


def rref(matrix: Sequence[Sequence[Fraction]]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form.

    Returns (reduced rows, pivot column indices).  Zero rows are dropped.
    Pivot selection scans columns left to right and rows top down, so the
    result is canonical for a given row order.
    """
    rows: list[Row] = [list(row) for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        lead = rows[rank][col]
        if lead != 1:
            inv = Fraction(1) / lead
            rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


@dataclass
class PreparedSolver:
    """Factorization of a column system A*x = t reused across many targets.

    Columns of A are supplied once; solving a new right-hand side is a
    single matrix-vector product against the stored elimination operator.
    ``transform`` holds E with E*A in reduced echelon form, ``pivots[r]``
    is the column of A that row r of E*A pivots on, and rows of E beyond
    ``rank`` span the left null space of A (consistency checks).
    """

    n_rows: int
    n_cols: int
    rank: int
    pivots: list[int]
    transform: list[Row]

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]],
                     n_rows: int) -> "PreparedSolver":
        n_cols = len(columns)
        # Row-reduce [A | I] so the identity block accumulates E with
        # E*A in reduced echelon form; E then solves every target.
        augmented: list[Row] = []
        for r in range(n_rows):
            row = [column[r] for column in columns]
            row.extend(Fraction(1) if s == r else _ZERO for s in range(n_rows))
            augmented.append(row)
        pivots: list[int] = []
        rank = 0
        for col in range(n_cols):
            pivot_row = None
            for r in range(rank, n_rows):
                if augmented[r][col]:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            augmented[rank], augmented[pivot_row] = (augmented[pivot_row],
                                                     augmented[rank])
            lead = augmented[rank][col]
            if lead != 1:
                inv = Fraction(1) / lead
                augmented[rank] = [v * inv for v in augmented[rank]]
            for r in range(n_rows):
                if r != rank and augmented[r][col]:
                    factor = augmented[r][col]
                    augmented[r] = [v - factor * w
                                    for v, w in zip(augmented[r], augmented[rank])]
            pivots.append(col)
            rank += 1
        transform = [row[n_cols:] for row in augmented]
        return cls(n_rows=n_rows, n_cols=n_cols, rank=rank,
                   pivots=pivots, transform=transform)

    def solve(self, target: Sequence[Fraction]) -> Optional[list[Fraction]]:
        """One solution of A*x = target, or None if inconsistent.

        Free variables are set to zero, so the answer is canonical: each
        pivot column receives the corresponding entry of E*target.
        """
        if len(target) != self.n_rows:
            raise ValueError("target length does not match the system")
        reduced = [sum((e * t for e, t in zip(row, target)), _ZERO)
                   for row in self.transform]
        if any(reduced[r] for r in range(self.rank, self.n_rows)):
            return None
        solution = [_ZERO] * self.n_cols
        for r in range(self.rank):
            solution[self.pivots[r]] = reduced[r]
        return solution
