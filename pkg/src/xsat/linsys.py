"""Linear-system encoding and Gauss-Jordan elimination over exact rationals.

A positive one-in-three clause {p, p', p''} becomes the equation
p + p' + p'' = 1; bottom contributes nothing.  The 0/1 solutions of the
resulting system are exactly the models of the formula, so the reduced
row echelon form exposes how many variables are genuinely free.

All arithmetic uses :class:`fractions.Fraction`; nothing is ever rounded.
The matrix is dense, which is fine at the desk scale this package targets,
and columns are never physically permuted: pivot and free columns are
reported as index lists instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .formula import BOTTOM, XsatError, XsatFormula

Rational = Fraction


class EncodingError(XsatError):
    """Formula cannot be encoded (negated literal in the linear encoding)."""


@dataclass(frozen=True)
class LinearSystem:
    """Augmented k x (r+1) matrix; the last column is the right-hand side."""

    entries: tuple[tuple[Fraction, ...], ...]
    var_of_col: tuple[int, ...]  # column index -> 1-based variable

    @property
    def num_rows(self) -> int:
        return len(self.entries)

    @property
    def num_vars(self) -> int:
        return len(self.var_of_col)


@dataclass(frozen=True)
class RrefResult:
    """Reduced row echelon form with zero rows dropped.

    ``pivot_cols`` and ``free_cols`` are 0-based column indices into the
    original variable order; ``rank + nullity == num_vars`` always, and
    ``inconsistent`` is set when elimination produced a row that is zero on
    every variable column but nonzero in the augmented column.
    """

    matrix: LinearSystem
    pivot_cols: tuple[int, ...]
    free_cols: tuple[int, ...]
    rank: int
    nullity: int
    inconsistent: bool


def encode_sys(f: XsatFormula) -> LinearSystem:
    """One equation per clause: sum of the clause's variables equals 1."""
    rows = []
    for clause in f.clauses:
        row = [Fraction(0)] * (f.num_vars + 1)
        for lit in clause:
            if lit == BOTTOM:
                continue
            if lit < 0:
                raise EncodingError(
                    f"negated literal {lit} cannot be encoded; "
                    "apply the positivity reduction first")
            row[lit - 1] += 1
        row[f.num_vars] = Fraction(1)
        rows.append(tuple(row))
    return LinearSystem(tuple(rows), tuple(range(1, f.num_vars + 1)))


def gauss_jordan(system: LinearSystem) -> RrefResult:
    """Reduced row echelon form with deterministic pivoting.

    Pivot selection: leftmost column holding a nonzero entry at or below the
    current row, smallest row index on ties.  Eliminates above and below at
    pivot time, scales pivots to 1, and drops all-zero rows from the result.
    Inconsistency is a flag, never an exception.
    """
    rows = [list(row) for row in system.entries]
    n_rows = len(rows)
    n_vars = system.num_vars
    pivot_cols: list[int] = []
    cur = 0
    for col in range(n_vars):
        pivot_row = None
        for i in range(cur, n_rows):
            if rows[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != cur:
            rows[cur], rows[pivot_row] = rows[pivot_row], rows[cur]
        factor = rows[cur][col]
        if factor != 1:
            rows[cur] = [x / factor for x in rows[cur]]
        for i in range(n_rows):
            if i == cur or rows[i][col] == 0:
                continue
            g = rows[i][col]
            rows[i] = [a - g * b for a, b in zip(rows[i], rows[cur])]
        pivot_cols.append(col)
        cur += 1

    inconsistent = any(
        all(x == 0 for x in row[:n_vars]) and row[n_vars] != 0
        for row in rows[cur:])
    kept = tuple(tuple(row) for row in rows[:cur])
    rank = len(pivot_cols)
    free_cols = tuple(c for c in range(n_vars) if c not in set(pivot_cols))
    return RrefResult(
        matrix=LinearSystem(kept, system.var_of_col),
        pivot_cols=tuple(pivot_cols),
        free_cols=free_cols,
        rank=rank,
        nullity=n_vars - rank,
        inconsistent=inconsistent,
    )


def rank_of(f: XsatFormula) -> tuple[int, int]:
    """(rank, nullity) of the clause equation system."""
    res = gauss_jordan(encode_sys(f))
    return res.rank, res.nullity
