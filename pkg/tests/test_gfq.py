import random

import numpy as np
import pytest

from codetrees.gfq import (
    GF2,
    GF3,
    FieldSpec,
    FqMatrix,
    express_in_rows,
    matrix_inverse,
    nullspace,
    rank,
    right_inverse,
    row_space_contains,
    row_space_equal,
    rref,
    vstack,
)


def hand_rref(rows, q):
    """Independent elimination oracle: plain lists, no shared code."""
    m = [list(r) for r in rows]
    if not m:
        return m
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    for c in range(n_cols):
        piv = None
        for i in range(r, n_rows):
            if m[i][c] % q != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], q - 2, q) if q > 2 else m[r][c]
        m[r] = [(x * inv) % q for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] % q:
                f = m[i][c]
                m[i] = [(a - f * b) % q for a, b in zip(m[i], m[r])]
        r += 1
        if r == n_rows:
            break
    return m


def test_field_validation():
    FieldSpec(2)
    FieldSpec(251)
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(1)
    with pytest.raises(ValueError):
        FieldSpec(257)


def test_field_inverse():
    f = FieldSpec(7)
    for a in range(1, 7):
        assert (a * f.inv(a)) % 7 == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_rref_identity_fixed():
    m = FqMatrix.identity(GF2, 3)
    r, piv = rref(m)
    assert r == m
    assert piv == (0, 1, 2)


def test_rref_zeros_fixed():
    m = FqMatrix.zeros(GF2, 2, 3)
    r, piv = rref(m)
    assert r == m
    assert piv == ()


def test_rref_example_matches_hand_elimination():
    m = FqMatrix.from_rows(GF2, [[1, 1, 0], [0, 1, 1]])
    r, piv = rref(m)
    assert r.tolist() == [[1, 0, 1], [0, 1, 1]]
    assert r.tolist() == hand_rref([[1, 1, 0], [0, 1, 1]], 2)
    assert piv == (0, 1)


def test_rref_matches_hand_elimination_randomized():
    rng = random.Random(7)
    for q in (2, 3, 5):
        f = FieldSpec(q)
        for _ in range(40):
            rows = [[rng.randrange(q) for _ in range(rng.randint(1, 6))] for _ in range(rng.randint(1, 5))]
            width = max(len(r) for r in rows)
            rows = [r + [0] * (width - len(r)) for r in rows]
            got, _ = rref(FqMatrix.from_rows(f, rows))
            assert got.tolist() == hand_rref(rows, q)


def test_rref_idempotent_randomized():
    rng = random.Random(9)
    for q in (2, 3, 5):
        f = FieldSpec(q)
        for _ in range(30):
            rows = [[rng.randrange(q) for _ in range(5)] for _ in range(4)]
            once, _ = rref(FqMatrix.from_rows(f, rows))
            twice, _ = rref(once)
            assert once == twice


def test_rank_examples():
    assert rank(FqMatrix.identity(GF3, 4)) == 4
    assert rank(FqMatrix.zeros(GF2, 3, 5)) == 0
    assert rank(FqMatrix.zeros(GF2, 0, 5)) == 0


def test_rank_of_block_form():
    # [I A 0 B; 0 0 I C] with k1 = 2, k = 3 over GF(2) has full rank 3
    g = FqMatrix.from_rows(
        GF2,
        [
            [1, 0, 1, 0, 1, 1],
            [0, 1, 1, 0, 0, 1],
            [0, 0, 0, 1, 1, 0],
        ],
    )
    assert rank(g) == 3


def test_rank_nullity_randomized():
    rng = random.Random(3)
    for q in (2, 3, 5):
        f = FieldSpec(q)
        for _ in range(30):
            rows, cols = rng.randint(1, 5), rng.randint(1, 6)
            m = FqMatrix.from_rows(f, [[rng.randrange(q) for _ in range(cols)] for _ in range(rows)])
            assert rank(m) + nullspace(m).rows == cols


def test_nullspace_examples():
    assert nullspace(FqMatrix.identity(GF2, 3)).rows == 0
    z = nullspace(FqMatrix.zeros(GF3, 2, 4))
    assert z == FqMatrix.identity(GF3, 4)
    n = nullspace(FqMatrix.from_rows(GF2, [[1, 1, 1]]))
    assert n.rows == 2
    # enumerate all 8 vectors: the kernel is exactly the even-weight words
    kernel = set()
    for a in range(2):
        for b in range(2):
            vec = (a * n.array[0] + b * n.array[1]) % 2
            kernel.add(tuple(int(x) for x in vec))
    assert kernel == {(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)}


def test_nullspace_orthogonality_randomized():
    rng = random.Random(5)
    for q in (2, 3, 5):
        f = FieldSpec(q)
        for _ in range(30):
            m = FqMatrix.from_rows(f, [[rng.randrange(q) for _ in range(5)] for _ in range(3)])
            ns = nullspace(m)
            if ns.rows:
                prod = m @ ns.transpose()
                assert not np.any(prod.array)


def test_row_space_equal():
    g = FqMatrix.from_rows(GF2, [[1, 1, 0], [0, 1, 1]])
    assert row_space_equal(g, rref(g)[0])
    doubled = FqMatrix.from_rows(GF3, [[1, 2, 0], [2, 4, 0]])
    single = FqMatrix.from_rows(GF3, [[1, 2, 0]])
    assert row_space_equal(doubled, single)
    assert not row_space_equal(g, FqMatrix.identity(GF2, 3))
    with pytest.raises(ValueError):
        row_space_equal(g, FqMatrix.identity(GF2, 4))


def test_row_space_contains():
    g = FqMatrix.from_rows(GF2, [[1, 1, 0], [0, 1, 1]])
    sub = FqMatrix.from_rows(GF2, [[1, 0, 1]])
    assert row_space_contains(g, sub)
    assert not row_space_contains(sub, g)


def test_matrix_inverse_and_right_inverse():
    rng = random.Random(11)
    for q in (2, 5):
        f = FieldSpec(q)
        for _ in range(20):
            n = rng.randint(1, 4)
            while True:
                m = FqMatrix.from_rows(f, [[rng.randrange(q) for _ in range(n)] for _ in range(n)])
                if rank(m) == n:
                    break
            assert m @ matrix_inverse(m) == FqMatrix.identity(f, n)
        for _ in range(20):
            r, c = rng.randint(1, 3), rng.randint(3, 6)
            while True:
                m = FqMatrix.from_rows(f, [[rng.randrange(q) for _ in range(c)] for _ in range(r)])
                if rank(m) == r:
                    break
            assert m @ right_inverse(m) == FqMatrix.identity(f, r)


def test_express_in_rows():
    basis = FqMatrix.from_rows(GF3, [[1, 0, 2], [0, 1, 1]])
    rows = FqMatrix.from_rows(GF3, [[1, 1, 0], [2, 0, 1]])
    alpha = express_in_rows(basis, rows)
    assert alpha @ basis == rows
    outside = FqMatrix.from_rows(GF3, [[0, 0, 1]])
    with pytest.raises(ValueError):
        express_in_rows(basis, outside)


def test_matrix_immutability():
    m = FqMatrix.identity(GF2, 2)
    with pytest.raises(AttributeError):
        m.field = GF3
    with pytest.raises(ValueError):
        m.array[0, 0] = 1
