import random

import pytest

from codetrees.codes import LinearCode, fresh_labels
from codetrees.gfq import GF2, GF3

HAMMING_7_4 = [
    [1, 0, 0, 0, 0, 1, 1],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 1, 0],
    [0, 0, 0, 1, 1, 1, 1],
]


@pytest.fixture
def hamming74():
    return LinearCode.from_generators(GF2, fresh_labels(7), HAMMING_7_4)


@pytest.fixture
def even_weight3():
    return LinearCode.from_generators(GF2, fresh_labels(3), [[1, 1, 0], [0, 1, 1]])


@pytest.fixture
def even_weight4():
    return LinearCode.from_generators(
        GF2, fresh_labels(4), [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]
    )


@pytest.fixture
def rng():
    return random.Random(1234)


def all_words(q, n):
    """Every vector of F_q^n, lexicographically."""
    out = [[]]
    for _ in range(n):
        out = [w + [x] for w in out for x in range(q)]
    return [tuple(w) for w in out]


def span_words(code):
    """All codewords by brute-force span enumeration (test-side oracle)."""
    q = code.field.q
    words = {tuple([0] * code.length)}
    rows = code.gen.tolist()
    for coeffs in all_words(q, len(rows)):
        w = [0] * code.length
        for a, row in zip(coeffs, rows):
            for i, x in enumerate(row):
                w[i] = (w[i] + a * x) % q
        words.add(tuple(w))
    return words
