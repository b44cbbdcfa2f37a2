import random

import numpy as np
import pytest

from codetrees.codes import (
    LABELS,
    LinearCode,
    code_intersection,
    code_sum,
    cross_section,
    direct_sum,
    dual,
    fresh_labels,
    min_weight,
    project,
    read_code,
    write_code,
)
from codetrees.gfq import GF2, GF3, FieldSpec
from codetrees.graphcodes import gap_family_code
from codetrees.sampling import random_code, random_subset

from conftest import span_words


def test_dim_examples(even_weight3):
    assert LinearCode.zero(GF2, fresh_labels(4)).dim == 0
    assert LinearCode.full_space(GF2, fresh_labels(3)).dim == 3
    assert even_weight3.dim == 2
    assert len(span_words(even_weight3)) == 4


def test_project_examples(even_weight3):
    assert project(even_weight3, even_weight3.labels) == even_weight3
    empty = project(even_weight3, ())
    assert empty.length == 0 and empty.dim == 0
    first_two = project(even_weight3, even_weight3.labels[:2])
    got = span_words(first_two)
    want = {w[:2] for w in span_words(even_weight3)}
    assert got == want == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_cross_section_examples(even_weight3):
    assert cross_section(even_weight3, even_weight3.labels) == even_weight3
    cs = cross_section(even_weight3, even_weight3.labels[:2])
    assert cs.dim == 1
    want = {w[:2] for w in span_words(even_weight3) if w[2] == 0}
    assert span_words(cs) == want == {(0, 0), (1, 1)}


def test_cross_section_dim_identity_randomized(rng):
    for _ in range(40):
        q = rng.choice([2, 3])
        c = random_code(rng, FieldSpec(q), rng.randint(1, 7), rng.randint(1, 4))
        j = random_subset(rng, c.labels)
        jbar = set(c.labels) - j
        assert cross_section(c, j).dim == c.dim - project(c, jbar).dim


def test_dual_examples(even_weight3):
    full = LinearCode.full_space(GF3, fresh_labels(4))
    assert dual(full).dim == 0
    rep = dual(even_weight3)
    assert span_words(rep) == {(0, 0, 0), (1, 1, 1)}
    assert dual(rep) == even_weight3


def test_duality_laws_randomized(rng):
    for _ in range(30):
        q = rng.choice([2, 3])
        c = random_code(rng, FieldSpec(q), rng.randint(1, 7), rng.randint(1, 4))
        j = random_subset(rng, c.labels)
        assert dual(project(c, j)) == cross_section(dual(c), j)
        assert dual(cross_section(c, j)) == project(dual(c), j)


def test_cross_section_contained_in_projection(rng):
    for _ in range(30):
        c = random_code(rng, GF2, rng.randint(1, 7), rng.randint(1, 4))
        j = random_subset(rng, c.labels)
        assert project(c, j).contains_code(cross_section(c, j))


def test_direct_sum_examples():
    a = LinearCode.full_space(GF2, fresh_labels(1))
    assert direct_sum([a]) == a
    b = LinearCode.full_space(GF2, fresh_labels(1))
    assert direct_sum([a, b]) == LinearCode.full_space(GF2, a.labels + b.labels)


def test_direct_sum_dims_and_recovery(rng):
    parts = [random_code(rng, GF3, rng.randint(1, 4), rng.randint(1, 3)) for _ in range(3)]
    total = direct_sum(parts)
    assert total.dim == sum(p.dim for p in parts)
    for p in parts:
        assert project(total, p.labels) == p
        assert cross_section(total, p.labels) == p


def test_direct_sum_overlap_error():
    a = LinearCode.full_space(GF2, fresh_labels(2))
    with pytest.raises(ValueError):
        direct_sum([a, a])


def test_min_weight_examples(even_weight3):
    rep = LinearCode.from_generators(GF2, fresh_labels(3), [[1, 1, 1]])
    assert min_weight(rep) == 3
    assert min_weight(even_weight3) == 2
    cover_code, _ = gap_family_code(1, GF2)
    assert min_weight(cover_code) == 4


def test_min_weight_guards():
    zero = LinearCode.zero(GF2, fresh_labels(3))
    with pytest.raises(ValueError):
        min_weight(zero)
    big = LinearCode.full_space(GF2, fresh_labels(30))
    with pytest.raises(ValueError):
        min_weight(big, enum_bound=2**10)


def test_canonical_equality_across_construction_paths():
    labels = fresh_labels(3)
    a = LinearCode.from_generators(GF2, labels, [[1, 1, 0], [0, 1, 1]])
    b = LinearCode.from_generators(GF2, labels, [[1, 0, 1], [1, 1, 0], [0, 1, 1]])
    assert a == b and hash(a) == hash(b)
    assert a.gen == b.gen
    # same subspace presented in a different stored label order
    permuted = (labels[2], labels[0], labels[1])
    c = LinearCode.from_generators(GF2, permuted, [[0, 1, 1], [1, 0, 1]])
    assert c == a and hash(c) == hash(a)


def test_scaled_rows_same_code():
    labels = fresh_labels(3)
    a = LinearCode.from_generators(GF3, labels, [[1, 2, 0]])
    b = LinearCode.from_generators(GF3, labels, [[2, 4, 0]])
    assert a == b


def test_membership_via_parity(even_weight3):
    assert even_weight3.contains_word(np.array([1, 0, 1]))
    assert not even_weight3.contains_word(np.array([1, 0, 0]))


def test_file_round_trip(hamming74):
    text = write_code(hamming74)
    back = read_code(text)
    assert back == hamming74
    assert write_code(back) == text
    assert back.labels == hamming74.labels


def test_file_reader_reserves_labels():
    text = "q 2\nlabels 900000 900001\n1 1\n"
    code = read_code(text)
    fresh = fresh_labels(1)[0]
    assert fresh > 900001
    assert code.labels == (900000, 900001)


def test_fresh_labels_unique():
    a = fresh_labels(5)
    b = fresh_labels(3)
    assert len(set(a) | set(b)) == 8


def test_code_sum_and_intersection(rng):
    for _ in range(20):
        labels = fresh_labels(5)
        a = LinearCode.from_generators(GF2, labels, [[rng.randrange(2) for _ in range(5)] for _ in range(2)])
        b = LinearCode.from_generators(GF2, labels, [[rng.randrange(2) for _ in range(5)] for _ in range(2)])
        s = code_sum(a, b)
        i = code_intersection(a, b)
        assert s.dim == a.dim + b.dim - i.dim
        assert s.contains_code(a) and s.contains_code(b)
        assert a.contains_code(i) and b.contains_code(i)
