"""Multigraphs, incidence-matrix codes, and the doubled-cover families.

The code of a graph is generated by its oriented vertex-edge incidence
matrix (orientation: low vertex id to high), with one coordinate per
edge label; over GF(2) this is the cut-set code. The bar transform
doubles every adjacency and joins one extra vertex to everything, and
the branching tree family has bounded treewidth with growing pathwidth,
which together produce codes whose trellis width outruns their tree
width.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .codes import LinearCode, fresh_labels, min_weight
from .gfq import FieldSpec

Y_FAMILY_MAX = 8
GAP_FAMILY_DISTANCE_MAX = 3


@dataclass(frozen=True)
class Multigraph:
    """Vertices plus labeled edges; self-loops and parallel edges allowed."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (u, v, edge label)

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        vs = set(verts)
        if len(vs) != len(verts):
            raise ValueError("duplicate vertex ids")
        labels = [l for _, _, l in self.edges]
        if len(set(labels)) != len(labels):
            raise ValueError("edge labels must be unique")
        for u, v, _ in self.edges:
            if u not in vs or v not in vs:
                raise ValueError(f"edge endpoint outside vertex set: {(u, v)}")

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def simple_adjacent_pairs(self) -> set[tuple[int, int]]:
        """Distinct adjacent pairs, loops dropped, multiplicities collapsed."""
        return {(min(u, v), max(u, v)) for u, v, _ in self.edges if u != v}

    def loops(self) -> list[tuple[int, int]]:
        return [(u, l) for u, v, l in self.edges if u == v]

    def neighbor_sets(self) -> dict[int, set[int]]:
        nbr: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.simple_adjacent_pairs():
            nbr[u].add(v)
            nbr[v].add(u)
        return nbr

    def connected_components(self) -> list[set[int]]:
        nbr = self.neighbor_sets()
        remaining = set(self.vertices)
        comps = []
        while remaining:
            start = min(remaining)
            seen = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in nbr[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(seen)
            remaining -= seen
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1


def incidence_code(g: Multigraph, field: FieldSpec) -> LinearCode:
    """Code generated by the oriented incidence matrix, coordinates = edges.

    Every non-loop edge is oriented from its lower to its higher vertex
    id, so the construction is canonical; loop columns are zero. The
    dimension is |V| minus the number of connected components.
    """
    vpos = {v: i for i, v in enumerate(g.vertices)}
    arr = np.zeros((g.num_vertices, g.num_edges), dtype=np.int64)
    for j, (u, v, _) in enumerate(g.edges):
        if u == v:
            continue
        lo, hi = (u, v) if vpos[u] < vpos[v] else (v, u)
        arr[vpos[lo], j] = 1
        arr[vpos[hi], j] = -1
    labels = tuple(l for _, _, l in g.edges)
    return LinearCode.from_generators(field, labels, arr)


def g_bar(g: Multigraph) -> Multigraph:
    """Double every adjacency, drop loops, then join a new apex to all.

    |V| grows by one and |E| becomes 2*(adjacent pairs) + 2*|V(g)|,
    with fresh edge labels assigned in sorted pair order then sorted
    vertex order.
    """
    apex = max(g.vertices, default=-1) + 1
    pairs = sorted(g.simple_adjacent_pairs())
    new_edges = []
    names = iter(fresh_labels(2 * len(pairs) + 2 * g.num_vertices))
    for u, v in pairs:
        new_edges.append((u, v, next(names)))
        new_edges.append((u, v, next(names)))
    for v in sorted(g.vertices):
        new_edges.append((apex, v, next(names)))
        new_edges.append((apex, v, next(names)))
    return Multigraph(tuple(g.vertices) + (apex,), tuple(new_edges))


def y_family(i: int) -> Multigraph:
    """Branching trees: the 3-star, then two new leaves per current leaf.

    |V| = 1 + 3(2^i - 1); treewidth stays 1 while pathwidth grows like
    ceil((i+1)/2).
    """
    if i < 1:
        raise ValueError("family index starts at 1")
    if i > Y_FAMILY_MAX:
        raise ValueError(f"family index capped at {Y_FAMILY_MAX}")
    verts = [0, 1, 2, 3]
    pairs = [(0, 1), (0, 2), (0, 3)]
    leaves = [1, 2, 3]
    for _ in range(i - 1):
        next_leaves = []
        for leaf in leaves:
            for _ in range(2):
                w = len(verts)
                verts.append(w)
                pairs.append((leaf, w))
                next_leaves.append(w)
        leaves = next_leaves
    names = fresh_labels(len(pairs))
    edges = tuple((u, v, names[j]) for j, (u, v) in enumerate(pairs))
    return Multigraph(tuple(verts), edges)


def gap_family_code(i: int, field: FieldSpec) -> tuple[LinearCode, dict]:
    """Incidence code of the bar transform of the i-th branching tree.

    Returns the code plus its parameter record; the minimum distance is
    computed by exhaustive enumeration and therefore guarded to i <= 3.
    """
    tree = y_family(i)
    cover = g_bar(tree)
    code = incidence_code(cover, field)
    params = {
        "i": i,
        "q": field.q,
        "n": code.length,
        "k": code.dim,
        "n_formula": 12 * (2**i - 1) + 2,
        "k_formula": 3 * (2**i - 1) + 1,
    }
    if i <= GAP_FAMILY_DISTANCE_MAX:
        params["d"] = min_weight(code)
    return code, params


# ---------------------------------------------------------------------------
# file format: "vertex <id>" lines then "edge <label> <u> <v>" lines.


def write_graph(g: Multigraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {l} {u} {v}" for u, v, l in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> Multigraph:
    verts: list[int] = []
    edges: list[tuple[int, int, int]] = []
    for ln in text.strip().splitlines():
        parts = ln.split()
        if not parts:
            continue
        if parts[0] == "vertex":
            verts.append(int(parts[1]))
        elif parts[0] == "edge":
            edges.append((int(parts[2]), int(parts[3]), int(parts[1])))
        else:
            raise ValueError(f"unrecognized line: {ln!r}")
    return Multigraph(tuple(verts), tuple(edges))


def path_graph(n: int) -> Multigraph:
    names = fresh_labels(n - 1)
    return Multigraph(tuple(range(n)), tuple((i, i + 1, names[i]) for i in range(n - 1)))


def cycle_graph(n: int) -> Multigraph:
    names = fresh_labels(n)
    edges = tuple((i, (i + 1) % n, names[i]) for i in range(n))
    return Multigraph(tuple(range(n)), edges)


def complete_graph(n: int) -> Multigraph:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    names = fresh_labels(len(pairs))
    return Multigraph(tuple(range(n)), tuple((u, v, names[k]) for k, (u, v) in enumerate(pairs)))


def star_graph(n_leaves: int) -> Multigraph:
    names = fresh_labels(n_leaves)
    edges = tuple((0, i, names[i - 1]) for i in range(1, n_leaves + 1))
    return Multigraph(tuple(range(n_leaves + 1)), edges)
