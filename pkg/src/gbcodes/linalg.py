"""Binary (F2) linear algebra on integer-packed rows.

A matrix is a list of Python ints, one per row, bit j of a row holding
the entry in column j.  Exact arithmetic with no tolerance questions;
fast enough for the matrix sizes this package handles (a few hundred
columns).  Conversion helpers to and from dense numpy uint8 arrays sit
at the bottom for interop with the decoders.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "rref",
    "rank",
    "reduce_vector",
    "in_rowspace",
    "nullspace",
    "solve",
    "rows_to_array",
    "array_to_rows",
    "array_rank",
]


def rref(rows: list[int], ncols: int, col_order: list[int] | None = None):
    """Reduced row echelon form.

    Returns (reduced_rows, pivot_cols): the nonzero rows after full
    reduction and the pivot column of each, in elimination order.  The
    default column scan is 0..ncols-1; ``col_order`` overrides it (used
    to steer pivots into a preferred column set).
    """
    work = [r for r in rows if r]
    reduced: list[int] = []
    pivots: list[int] = []
    order = range(ncols) if col_order is None else col_order
    for col in order:
        bit = 1 << col
        pivot_row = None
        for i, r in enumerate(work):
            if r & bit:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        piv = work.pop(pivot_row)
        work = [r ^ piv if r & bit else r for r in work]
        work = [r for r in work if r]
        reduced = [r ^ piv if r & bit else r for r in reduced]
        reduced.append(piv)
        pivots.append(col)
        if not work:
            break
    return reduced, pivots


def rank(rows: list[int], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def reduce_vector(vec: int, reduced_rows: list[int], pivot_cols: list[int]) -> int:
    """Residue of vec modulo the row space of an RREF basis."""
    for row, col in zip(reduced_rows, pivot_cols):
        if (vec >> col) & 1:
            vec ^= row
    return vec


def in_rowspace(vec: int, reduced_rows: list[int], pivot_cols: list[int]) -> bool:
    return reduce_vector(vec, reduced_rows, pivot_cols) == 0


def nullspace(rows: list[int], ncols: int) -> list[int]:
    """Basis of {x : M x^T = 0}, one int per basis vector.

    Standard free-variable construction from the RREF; deterministic
    given the input order.
    """
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for row, col in zip(reduced, pivots):
            if (row >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def solve(rows: list[int], ncols: int, rhs: list[int]) -> int | None:
    """One solution x of M x^T = rhs over F2, or None if inconsistent.

    ``rhs`` holds one bit per row of M.  Free variables are set to zero,
    so the result is deterministic.
    """
    aug = [r | (b & 1) << ncols for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug, ncols + 1)
    x = 0
    for row, col in zip(reduced, pivots):
        if col == ncols:
            return None  # pivot in the augmented column: 0 = 1
        if (row >> ncols) & 1:
            x |= 1 << col
    return x


# ---------------------------------------------------------------------------
# numpy interop

def rows_to_array(rows: list[int], ncols: int) -> np.ndarray:
    out = np.zeros((len(rows), ncols), dtype=np.uint8)
    for i, r in enumerate(rows):
        for j in range(ncols):
            if (r >> j) & 1:
                out[i, j] = 1
    return out


def array_to_rows(mat: np.ndarray) -> list[int]:
    rows = []
    for row in np.asarray(mat) & 1:
        mask = 0
        for j in np.flatnonzero(row):
            mask |= 1 << int(j)
        rows.append(mask)
    return rows


def array_rank(mat: np.ndarray) -> int:
    mat = np.asarray(mat)
    return rank(array_to_rows(mat), mat.shape[1])
