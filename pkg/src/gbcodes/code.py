"""Circulant matrices, GB/CSS code construction, and matrix export.

A generalized bicycle code is defined by a polynomial pair (a, b) over
F2[x]/(x^n - 1).  Its X-type check matrix is hx = [G_a | G_b] and its
Z-type check matrix is hz = [G_{b(1/x)} | G_{a(1/x)}], where G_p is the
circulant whose row i is the coefficient vector of x^i * p.  With this
orientation, row i of hx is the stabilizer x^i * (a, b), so check i of
the weight-(2,2) families touches data qubits i, i+1 in the left block.

Length-2n binary vectors are packed into ints with bit j (j < n) the
left-block coefficient of x^j and bit n+j the right-block coefficient.
"""

from __future__ import annotations

import functools
import json

import numpy as np

from . import linalg
from .errors import NotCoprimeError, ZeroPairError
from .poly import CyclicPoly, f2_degree, f2_gcd, gcd_with_modulus

__all__ = [
    "circulant",
    "GBCode",
    "build_gb",
    "shift_pair",
    "substitute_equivalence",
    "regularity",
    "export_alist",
    "import_alist",
]


def circulant(p: CyclicPoly) -> np.ndarray:
    """n x n circulant of p: row i is the coefficient vector of x^i * p.

    Equivalently column j holds x^j * p(1/x), so transposing a circulant
    is the same as substituting x -> 1/x in its polynomial.
    """
    base = np.array(p.coeffs, dtype=np.uint8)
    return np.stack([np.roll(base, i) for i in range(p.n)])


def circulant_rows(p: CyclicPoly) -> list[int]:
    """The same circulant as integer-packed rows.

    Note circulant_rows(p.reciprocal()) is the multiply-by-p map: its row
    i holds the coefficients feeding coefficient i of p * c.
    """
    return [p.shift(i).mask for i in range(p.n)]


class GBCode:
    """A generalized bicycle CSS code instance.

    Attributes:
        n:  ring length (the code has 2n physical qubits)
        a, b:  defining polynomials
        k:  logical count per sector; the code is [[2n, 2k]]
        hx, hz:  full n x 2n circulant check matrices (redundant rows kept
            so decoders may exploit check redundancy; a row basis is
            rows 0..n-2 for the weight-(2,2) families)
        family:  optional tag such as "odd-d5" for codes built by the
            family constructors
        distance:  design distance when known (family codes), else None

    Instances are immutable after construction and safe to share across
    concurrent workers.
    """

    def __init__(self, a: CyclicPoly, b: CyclicPoly,
                 family: str | None = None, distance: int | None = None):
        if a.n != b.n:
            raise ValueError(f"mismatched ring lengths {a.n} != {b.n}")
        if a.is_zero and b.is_zero:
            raise ZeroPairError("a and b cannot both be zero")
        self.a = a
        self.b = b
        self.n = a.n
        self.k = f2_degree(f2_gcd(f2_gcd(a.mask, b.mask), (1 << a.n) | 1))
        ar = a.reciprocal()
        br = b.reciprocal()
        self.hx = np.hstack([circulant(a), circulant(b)])
        self.hz = np.hstack([circulant(br), circulant(ar)])
        self.family = family
        self.distance = distance

    # -- integer-row views (cached; treat as read-only) ----------------------

    @functools.cached_property
    def hx_rows(self) -> list[int]:
        return [self.a.shift(i).mask | (self.b.shift(i).mask << self.n)
                for i in range(self.n)]

    @functools.cached_property
    def hz_rows(self) -> list[int]:
        ar, br = self.a.reciprocal(), self.b.reciprocal()
        return [br.shift(i).mask | (ar.shift(i).mask << self.n)
                for i in range(self.n)]

    @functools.cached_property
    def hx_rref(self):
        return linalg.rref(self.hx_rows, 2 * self.n)

    @functools.cached_property
    def hz_rref(self):
        return linalg.rref(self.hz_rows, 2 * self.n)

    def z_syndrome_is_zero(self, vec: int) -> bool:
        """True when the packed X-type vector commutes with every Z check."""
        return all((vec & row).bit_count() % 2 == 0 for row in self.hz_rows)

    def in_x_stabilizer(self, vec: int) -> bool:
        """True when the packed vector lies in the row space of hx."""
        return linalg.in_rowspace(vec, *self.hx_rref)

    def in_z_stabilizer(self, vec: int) -> bool:
        return linalg.in_rowspace(vec, *self.hz_rref)

    def pack(self, left: CyclicPoly, right: CyclicPoly) -> int:
        return left.mask | (right.mask << self.n)

    def unpack(self, vec: int) -> tuple[CyclicPoly, CyclicPoly]:
        full = (1 << self.n) - 1
        return CyclicPoly(self.n, vec & full), CyclicPoly(self.n, vec >> self.n)

    # -- descriptors ---------------------------------------------------------

    @property
    def num_qubits(self) -> int:
        return 2 * self.n

    @property
    def num_logicals(self) -> int:
        return 2 * self.k

    @property
    def params(self) -> tuple[int, int]:
        return (2 * self.n, 2 * self.k)

    @property
    def code_id(self) -> str:
        return self.family or f"gb-n{self.n}-a{self.a}-b{self.b}"

    def to_descriptor(self) -> dict:
        d: dict = {"n": self.n, "a": self.a.to_string(), "b": self.b.to_string()}
        if self.family:
            d["family"] = self.family
        if self.distance is not None:
            d["d"] = self.distance
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_descriptor(), sort_keys=True)

    @classmethod
    def from_descriptor(cls, desc: dict) -> "GBCode":
        n = int(desc["n"])
        a = CyclicPoly.parse(n, desc["a"])
        b = CyclicPoly.parse(n, desc["b"])
        return cls(a, b, family=desc.get("family"),
                   distance=desc.get("d"))

    def __repr__(self) -> str:
        return f"GBCode(n={self.n}, a={self.a}, b={self.b}, k={self.k})"


def build_gb(a: CyclicPoly, b: CyclicPoly, **meta) -> GBCode:
    """Construct the GB code of (a, b); parameters [[2n, 2k]] with
    k = deg gcd(a, b, x^n - 1)."""
    return GBCode(a, b, **meta)


def shift_pair(code: GBCode, i: int, j: int) -> GBCode:
    """GB code of (x^i a, x^j b); parameter-equal to the input."""
    n = code.n
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"shifts must lie in [0, {n})")
    return GBCode(code.a.shift(i), code.b.shift(j), distance=code.distance)


def substitute_equivalence(code: GBCode, s: int) -> GBCode:
    """GB code of (a(x^s), b(x^s)) for gcd(s, n) = 1; parameter-equal."""
    import math

    if math.gcd(s, code.n) != 1:
        raise NotCoprimeError(f"gcd({s}, {code.n}) != 1")
    return GBCode(code.a.substitute_power(s), code.b.substitute_power(s),
                  distance=code.distance)


def regularity(code: GBCode) -> tuple[set[int], set[int]]:
    """Distinct column and row weights of the combined stabilizer matrix
    diag(hx, hz)."""
    col_weights = set(code.hx.sum(axis=0)) | set(code.hz.sum(axis=0))
    row_weights = set(code.hx.sum(axis=1)) | set(code.hz.sum(axis=1))
    return ({int(w) for w in col_weights}, {int(w) for w in row_weights})


# ---------------------------------------------------------------------------
# alist import/export (MacKay's format, used by standard LDPC tooling)

def export_alist(mat: np.ndarray) -> str:
    """Serialize a binary matrix in alist format.

    Layout: "cols rows", "max_col_wt max_row_wt", per-column degrees,
    per-row degrees, then 1-based row-index lists per column and
    column-index lists per row, zero-padded to the maxima.
    """
    mat = np.asarray(mat) & 1
    rows, cols = mat.shape
    col_deg = mat.sum(axis=0).astype(int)
    row_deg = mat.sum(axis=1).astype(int)
    max_col = int(col_deg.max()) if cols else 0
    max_row = int(row_deg.max()) if rows else 0
    lines = [
        f"{cols} {rows}",
        f"{max_col} {max_row}",
        " ".join(str(d) for d in col_deg),
        " ".join(str(d) for d in row_deg),
    ]
    for j in range(cols):
        idx = [str(i + 1) for i in np.flatnonzero(mat[:, j])]
        idx += ["0"] * (max_col - len(idx))
        lines.append(" ".join(idx))
    for i in range(rows):
        idx = [str(j + 1) for j in np.flatnonzero(mat[i])]
        idx += ["0"] * (max_row - len(idx))
        lines.append(" ".join(idx))
    return "\n".join(lines) + "\n"


def import_alist(text: str) -> np.ndarray:
    """Parse alist text back into a dense binary matrix."""
    chunks = [[int(tok) for tok in line.split()]
              for line in text.splitlines() if line.strip()]
    cols, rows = chunks[0]
    col_deg = chunks[2]
    mat = np.zeros((rows, cols), dtype=np.uint8)
    for j in range(cols):
        for i in chunks[4 + j][: col_deg[j]]:
            if i:
                mat[i - 1, j] = 1
    # Validate against the redundant row-perspective lists when present.
    row_lines = chunks[4 + cols: 4 + cols + rows]
    if len(row_lines) == rows:
        for i, line in enumerate(row_lines):
            claimed = {j - 1 for j in line if j}
            if claimed != set(np.flatnonzero(mat[i]).tolist()):
                raise ValueError("alist row lists disagree with column lists")
    return mat
