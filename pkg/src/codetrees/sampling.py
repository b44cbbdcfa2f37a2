"""Seeded generators for codes, decompositions, graphs and observations.

Everything draws from `random.Random`, whose bit stream is stable
across platforms and versions, so a seed pins every randomized battery
byte for byte.
"""

from __future__ import annotations

import bisect
import random
from itertools import combinations, permutations

from .codes import LinearCode, fresh_labels
from .decode import ChannelObservation
from .gfq import FieldSpec
from .graphcodes import Multigraph
from .trees import IndexTreeDecomposition, Tree


def random_code(
    rng: random.Random, field: FieldSpec, n: int, k: int, min_dim: int = 0
) -> LinearCode:
    """Random code from k random generator rows (dimension may be < k)."""
    while True:
        rows = [[rng.randrange(field.q) for _ in range(n)] for _ in range(k)]
        code = LinearCode.from_generators(field, fresh_labels(n), rows)
        if code.dim >= min_dim:
            return code


def random_tree(rng: random.Random, n_vertices: int) -> Tree:
    """Uniform labeled tree on 0..n-1 via a random builder sequence."""
    n = n_vertices
    if n == 1:
        return Tree((0,), ())
    if n == 2:
        return Tree((0, 1), ((0, 1),))
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = sorted(v for v in range(n) if degree[v] == 1)
    edges = []
    for v in seq:
        leaf = leaves.pop(0)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
        if degree[v] == 1:
            bisect.insort(leaves, v)
    u, w = [v for v in range(n) if degree[v] == 1]
    edges.append((u, w))
    return Tree(tuple(range(n)), tuple(edges))


def random_decomposition(
    rng: random.Random, code: LinearCode, n_vertices: int
) -> IndexTreeDecomposition:
    tree = random_tree(rng, n_vertices)
    omega = {l: rng.choice(tree.vertices) for l in code.labels}
    return IndexTreeDecomposition(tree, omega)


def random_connected_multigraph(
    rng: random.Random,
    max_vertices: int = 6,
    max_edges: int = 8,
    allow_parallel: bool = True,
    allow_loops: bool = True,
) -> Multigraph:
    """Connected multigraph: a random spanning tree plus random extras."""
    nv = rng.randint(2, max_vertices)
    tree = random_tree(rng, nv)
    pairs = [tuple(e) for e in tree.edges]
    extra = rng.randint(0, max(0, max_edges - len(pairs)))
    for _ in range(extra):
        u = rng.randrange(nv)
        v = rng.randrange(nv)
        if u == v and not allow_loops:
            continue
        pair = (min(u, v), max(u, v))
        if not allow_parallel and (pair in pairs or u == v):
            continue
        pairs.append(pair)
    names = fresh_labels(len(pairs))
    return Multigraph(tuple(range(nv)), tuple((u, v, names[i]) for i, (u, v) in enumerate(pairs)))


def random_observation(
    rng: random.Random, field: FieldSpec, labels, max_cost: int = 9
) -> ChannelObservation:
    costs = {l: tuple(float(rng.randint(0, max_cost)) for _ in range(field.q)) for l in labels}
    return ChannelObservation(field, costs)


def random_subset(rng: random.Random, items, allow_empty: bool = True):
    out = [x for x in items if rng.random() < 0.5]
    if not allow_empty and not out:
        out = [rng.choice(list(items))]
    return frozenset(out)


def simple_graph_representatives(n: int) -> list[tuple[tuple[int, int], ...]]:
    """One labeled representative per isomorphism class of simple graphs on n vertices."""
    all_pairs = list(combinations(range(n), 2))
    seen = set()
    reps = []
    for bits in range(1 << len(all_pairs)):
        edges = tuple(p for i, p in enumerate(all_pairs) if bits >> i & 1)
        canon = min(
            tuple(sorted((min(pi[u], pi[v]), max(pi[u], pi[v])) for u, v in edges))
            for pi in permutations(range(n))
        )
        if canon not in seen:
            seen.add(canon)
            reps.append(edges)
    return reps


def multigraph_on(n: int, pairs) -> Multigraph:
    """Multigraph on vertices 0..n-1 from (u, v) pairs, labels assigned fresh."""
    names = fresh_labels(len(pairs))
    return Multigraph(tuple(range(n)), tuple((u, v, names[i]) for i, (u, v) in enumerate(pairs)))
