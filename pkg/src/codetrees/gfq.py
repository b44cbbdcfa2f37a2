"""Exact dense linear algebra over prime fields GF(q).

Matrices are stored as immutable uint8 arrays with entries in [0, q).
Everything downstream (codes, realizations, width measures) reduces to
the handful of operations here, so determinism matters: rref always
picks the leftmost pivot column and the topmost available row.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_MAX_Q = 251


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(q), 2 <= q <= 251."""

    q: int

    def __post_init__(self):
        if not (2 <= self.q <= _MAX_Q) or not _is_prime(self.q):
            raise ValueError(f"modulus must be a prime in [2, {_MAX_Q}], got {self.q}")

    def inv(self, a: int) -> int:
        """Multiplicative inverse of a nonzero element."""
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.q)

    def neg(self, a: int) -> int:
        return (-a) % self.q


GF2 = FieldSpec(2)
GF3 = FieldSpec(3)


class FqMatrix:
    """An immutable matrix over a prime field.

    Entries live in a read-only uint8 array; all arithmetic reduces
    mod q through int64 intermediates so no overflow is possible for
    q <= 251.
    """

    __slots__ = ("field", "array", "_hash")

    def __init__(self, field: FieldSpec, array: np.ndarray):
        arr = np.asarray(array, dtype=np.int64) % field.q
        arr = np.ascontiguousarray(arr.astype(np.uint8))
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        arr.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "array", arr)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("FqMatrix is immutable")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> "FqMatrix":
        """Build from an iterable of rows; `rows` may be empty only via zeros()."""
        return cls(field, np.array(rows, dtype=np.int64))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "FqMatrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "FqMatrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.array.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, FqMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.array, other.array))
        )

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.field.q, self.shape, self.array.tobytes()))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"FqMatrix(q={self.field.q}, {self.rows}x{self.cols})"

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        prod = self.array.astype(np.int64) @ other.array.astype(np.int64)
        return FqMatrix(self.field, prod)

    def __add__(self, other: "FqMatrix") -> "FqMatrix":
        if self.field != other.field or self.shape != other.shape:
            raise ValueError("shape or field mismatch")
        return FqMatrix(self.field, self.array.astype(np.int64) + other.array)

    def __sub__(self, other: "FqMatrix") -> "FqMatrix":
        if self.field != other.field or self.shape != other.shape:
            raise ValueError("shape or field mismatch")
        return FqMatrix(self.field, self.array.astype(np.int64) - other.array)

    def transpose(self) -> "FqMatrix":
        return FqMatrix(self.field, self.array.T)

    def take_columns(self, indices) -> "FqMatrix":
        return FqMatrix(self.field, self.array[:, list(indices)])

    def take_rows(self, indices) -> "FqMatrix":
        return FqMatrix(self.field, self.array[list(indices), :])

    def tolist(self) -> list[list[int]]:
        return self.array.astype(int).tolist()


def hstack(mats: list[FqMatrix]) -> FqMatrix:
    field = mats[0].field
    if any(m.field != field for m in mats):
        raise ValueError("field mismatch")
    return FqMatrix(field, np.hstack([m.array for m in mats]))


def vstack(mats: list[FqMatrix]) -> FqMatrix:
    field = mats[0].field
    if any(m.field != field for m in mats):
        raise ValueError("field mismatch")
    return FqMatrix(field, np.vstack([m.array for m in mats]))


def _rref_array(arr: np.ndarray, q: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """In-place-style rref of an int64 working copy; returns (rref, pivot cols)."""
    m = arr.astype(np.int64) % q
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        inv = pow(int(m[r, c]), -1, q)
        m[r] = (m[r] * inv) % q
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % q
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def rref(m: FqMatrix) -> tuple[FqMatrix, tuple[int, ...]]:
    """Reduced row-echelon form and its pivot columns.

    Pivot selection is leftmost column, topmost remaining row, so the
    output is the unique rref with zero rows sorted to the bottom.
    """
    arr, pivots = _rref_array(m.array, m.field.q)
    return FqMatrix(m.field, arr), pivots


def rank(m: FqMatrix) -> int:
    """Number of pivots of rref(m); 0 for empty matrices."""
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = _rref_array(m.array, m.field.q)
    return len(pivots)


def remove_zero_rows(m: FqMatrix) -> FqMatrix:
    keep = np.any(m.array != 0, axis=1)
    return FqMatrix(m.field, m.array[keep])


def row_basis(m: FqMatrix) -> FqMatrix:
    """rref with zero rows removed: the canonical basis of the row space."""
    r, pivots = rref(m)
    return FqMatrix(m.field, r.array[: len(pivots)])


def nullspace(m: FqMatrix) -> FqMatrix:
    """Basis rows of {x : m x^T = 0}, in the standard form read off the rref.

    Row count is cols(m) - rank(m); the construction is deterministic
    (one basis vector per free column, in column order).
    """
    q = m.field.q
    r, pivots = _rref_array(m.array, q)
    cols = m.cols
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, p in enumerate(pivots):
            basis[i, p] = (-int(r[j, f])) % q
    return FqMatrix(m.field, basis)


def row_space_equal(a: FqMatrix, b: FqMatrix) -> bool:
    """True iff a and b generate the same row space (same field and width)."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    if a.cols != b.cols:
        raise ValueError(f"column-count mismatch: {a.cols} != {b.cols}")
    return row_basis(a) == row_basis(b)


def row_space_contains(a: FqMatrix, b: FqMatrix) -> bool:
    """True iff every row of b lies in the row space of a."""
    if a.field != b.field or a.cols != b.cols:
        raise ValueError("field or column-count mismatch")
    return rank(vstack([a, b])) == rank(a)


def matrix_inverse(m: FqMatrix) -> FqMatrix:
    """Inverse of a square invertible matrix."""
    n = m.rows
    if m.cols != n:
        raise ValueError("matrix is not square")
    aug = np.hstack([m.array.astype(np.int64), np.eye(n, dtype=np.int64)])
    red, pivots = _rref_array(aug, m.field.q)
    if len(pivots) < n or pivots[:n] != tuple(range(n)):
        raise ValueError("matrix is singular")
    return FqMatrix(m.field, red[:, n:])


def right_inverse(m: FqMatrix) -> FqMatrix:
    """R with m @ R = identity, for a full-row-rank m.

    R is supported on the pivot columns of m, which makes it the
    canonical choice for a given m.
    """
    red, pivots = rref(m)
    if len(pivots) != m.rows:
        raise ValueError("matrix does not have full row rank")
    inv = matrix_inverse(m.take_columns(pivots))
    out = np.zeros((m.cols, m.rows), dtype=np.int64)
    out[list(pivots), :] = inv.array
    return FqMatrix(m.field, out)


def express_in_rows(basis: FqMatrix, rows: FqMatrix) -> FqMatrix:
    """Coefficients alpha with alpha @ basis = rows.

    Requires basis to have full row rank and every row of `rows` to lie
    in its row space; solved by back-substitution against rref(basis).
    """
    if basis.field != rows.field or basis.cols != rows.cols:
        raise ValueError("field or column-count mismatch")
    red, pivots = rref(basis)
    if len(pivots) != basis.rows:
        raise ValueError("basis rows are dependent")
    # any row in the span is beta @ red with beta read off the pivot columns
    beta = rows.take_columns(pivots)
    residual = beta @ red - rows
    if np.any(residual.array != 0):
        raise ValueError("row not contained in the basis row space")
    # red = T @ basis with T = basis[:, pivots]^-1, hence alpha = beta @ T
    return beta @ matrix_inverse(basis.take_columns(pivots))


@lru_cache(maxsize=64)
def inverse_table(q: int) -> tuple[int, ...]:
    """Inverses of 1..q-1 (index 0 unused)."""
    return tuple(0 if a == 0 else pow(a, -1, q) for a in range(q))
