"""Star products, simplex codes, and exact r-sum (de)composition.

Two codes sharing a block of coordinates combine through the star
product (difference on the shared block) followed by a cross-section
that kills the shared block. When both parts project onto the rank-r
simplex code there and meet it trivially, the combination is an r-sum,
and conversely any partition of a code's index set whose rank surplus
is r splits it into an r-sum. The splitting below is fully explicit
and deterministic, so composing the parts returns the original code
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .codes import LinearCode, cross_section, fresh_labels, project
from .gfq import FieldSpec, FqMatrix, express_in_rows, rank, rref

DEFAULT_SIMPLEX_CAP = 4096


@dataclass(frozen=True)
class SimplexCode:
    """The [m_r, r] code whose generator columns hit every line of F_q^r.

    The generator d_matrix is canonical: its columns are all vectors
    with first nonzero entry 1, in lexicographic order. Any pair of
    columns is linearly independent and every nonzero vector is a
    scalar multiple of some column.
    """

    r: int
    field: FieldSpec
    labels: tuple[int, ...]
    d_matrix: FqMatrix
    code: LinearCode

    @property
    def length(self) -> int:
        return len(self.labels)


def simplex_length(r: int, q: int) -> int:
    return (q**r - 1) // (q - 1)


def build_simplex(r: int, field: FieldSpec, cap: int = DEFAULT_SIMPLEX_CAP) -> SimplexCode:
    """Construct the canonical rank-r simplex code on fresh labels.

    r = 0 yields the empty, zero-length code; it is what makes the
    0-sum the plain direct sum.
    """
    if r < 0:
        raise ValueError("rank must be non-negative")
    q = field.q
    m = simplex_length(r, q) if r else 0
    if m > cap:
        raise ValueError(f"simplex length {m} exceeds cap {cap}")
    def normalized(v):
        nz = [x for x in v if x]
        return bool(nz) and nz[0] == 1

    cols = [v for v in product(range(q), repeat=r) if normalized(v)]
    assert len(cols) == m
    arr = np.array(cols, dtype=np.int64).T if cols else np.zeros((r, 0), dtype=np.int64)
    d_mat = FqMatrix(field, arr)
    labels = fresh_labels(m)
    code = LinearCode.from_generators(field, labels, d_mat)
    assert code.dim == r
    return SimplexCode(r, field, labels, d_mat, code)


def star_product(c1: LinearCode, c2: LinearCode) -> LinearCode:
    """The code {x * y} on the union index set.

    On shared coordinates the combined word carries x - y, so the
    generator stacks c1's rows as-is with c2's rows negated there.
    """
    if c1.field != c2.field:
        raise ValueError("field mismatch")
    field = c1.field
    shared = set(c1.labels) & set(c2.labels)
    union = tuple(c1.labels) + tuple(l for l in c2.labels if l not in shared)
    pos = {l: i for i, l in enumerate(union)}
    rows = np.zeros((c1.dim + c2.dim, len(union)), dtype=np.int64)
    for j, l in enumerate(c1.labels):
        rows[: c1.dim, pos[l]] = c1.gen.array[:, j]
    for j, l in enumerate(c2.labels):
        sign = -1 if l in shared else 1
        rows[c1.dim :, pos[l]] = sign * c2.gen.array[:, j].astype(np.int64)
    return LinearCode.from_generators(field, union, rows)


def s_sum(c1: LinearCode, c2: LinearCode) -> LinearCode:
    """Cross-section of the star product onto the symmetric difference."""
    star = star_product(c1, c2)
    sym_diff = set(c1.labels) ^ set(c2.labels)
    return cross_section(star, sym_diff)


@dataclass(frozen=True)
class RSumDecomposition:
    """A witnessed split C = C1 (+)_r C2 across a coordinate partition."""

    r: int
    c1: LinearCode
    c2: LinearCode
    delta: SimplexCode
    j_labels: frozenset
    jbar_labels: frozenset

    def recompose(self) -> LinearCode:
        return s_sum(self.c1, self.c2)


def rsum_decompose(c: LinearCode, j_subset) -> RSumDecomposition:
    """Split c across the partition (J, Jbar) of its index set.

    The rank surplus r = dim(C|_J) + dim(C|_Jbar) - dim(C) determines
    the shared simplex block. The generator is brought to the block
    form [I A 0 B; 0 0 I C] by column permutations inside J and Jbar
    (labels migrate with their columns); a row basis of B is moved to
    the top, each row of B is expressed in that basis, and the same
    coefficients applied to the simplex generator give the shared
    block X of both parts.
    """
    j = frozenset(j_subset)
    jbar = frozenset(c.labels) - j
    if not j <= set(c.labels):
        raise ValueError("J is not a subset of the index set")
    field, q = c.field, c.field.q
    n, k = c.length, c.dim

    j_pos = c.label_positions(j)
    jbar_pos = [i for i in range(n) if c.labels[i] not in j]
    k1 = rank(c.gen.take_columns(j_pos))
    k2 = rank(c.gen.take_columns(jbar_pos))
    r = k1 + k2 - k
    if min(len(j), len(jbar)) < r:
        raise ValueError(f"partition sides too small for rank surplus {r}")

    if r == 0:
        c1 = project(c, j)
        c2 = project(c, jbar)
        return RSumDecomposition(0, c1, c2, build_simplex(0, field), j, jbar)

    # rref with J columns leading; pivots split k1 / k - k1 across the sides
    order0 = j_pos + jbar_pos
    labels0 = [c.labels[i] for i in order0]
    red, pivots = rref(c.gen.take_columns(order0))
    nj = len(j_pos)
    piv_j = [p for p in pivots if p < nj]
    piv_jb = [p for p in pivots if p >= nj]
    assert len(piv_j) == k1 and len(piv_jb) == k - k1
    nonpiv_j = [i for i in range(nj) if i not in set(piv_j)]
    nonpiv_jb = [i for i in range(nj, n) if i not in set(piv_jb)]
    order1 = piv_j + nonpiv_j + piv_jb + nonpiv_jb
    gbar = red.take_columns(order1).array.astype(np.int64)
    labels1 = [labels0[i] for i in order1]
    aw, bw = len(nonpiv_j), len(nonpiv_jb)

    b_block = FqMatrix(field, gbar[:k1, k1 + aw + (k - k1) :])
    assert rank(b_block) == r

    # move a row basis of B to the top; compensate inside the identity columns
    _, b_row_pivots = rref(b_block.transpose())
    basis_rows = list(b_row_pivots)
    row_perm = basis_rows + [i for i in range(k1) if i not in set(basis_rows)]
    gbar_top = gbar[:k1][row_perm]
    col_perm = row_perm + list(range(k1, n))
    gbar = np.vstack([gbar_top, gbar[k1:]])[:, col_perm]
    labels1 = [labels1[i] for i in col_perm]

    a_mat = gbar[:k1, k1 : k1 + aw]
    b_mat = FqMatrix(field, gbar[:k1, k1 + aw + (k - k1) :])
    c_mat = gbar[k1:, k1 + aw + (k - k1) :]
    b_basis = b_mat.take_rows(range(r))

    delta = build_simplex(r, field)
    alpha = express_in_rows(b_basis, b_mat)  # k1 x r, top block = identity
    x_mat = (alpha @ delta.d_matrix).array.astype(np.int64)

    g1 = np.hstack([np.eye(k1, dtype=np.int64), a_mat, x_mat])
    g1_labels = tuple(labels1[: k1 + aw]) + delta.labels
    c1 = LinearCode.from_generators(field, g1_labels, g1)

    g2_top = np.hstack([x_mat, np.zeros((k1, k - k1), dtype=np.int64), b_mat.array.astype(np.int64)])
    g2_bot = np.hstack([np.zeros((k - k1, delta.length), dtype=np.int64),
                        np.eye(k - k1, dtype=np.int64), c_mat])
    g2_labels = delta.labels + tuple(labels1[k1 + aw :])
    c2 = LinearCode.from_generators(field, g2_labels, np.vstack([g2_top, g2_bot]))

    assert c1.dim == k1 and c2.dim == k2
    return RSumDecomposition(r, c1, c2, delta, j, jbar)


def verify_rsum_preconditions(d: RSumDecomposition) -> bool:
    """Check the defining conditions of an r-sum plus its dimension law.

    Both parts must project onto the simplex code on the shared block,
    meet it trivially, and recompose to a code of dimension
    dim(C1) + dim(C2) - r.
    """
    shared = set(d.c1.labels) & set(d.c2.labels)
    if shared != set(d.delta.labels):
        return False
    if d.r == 0:
        if shared:
            return False
    else:
        for part in (d.c1, d.c2):
            if project(part, shared) != d.delta.code:
                return False
            if cross_section(part, shared).dim != 0:
                return False
    composed = s_sum(d.c1, d.c2)
    return composed.dim == d.c1.dim + d.c2.dim - d.r
