"""Trees, index-set tree decompositions, and bag-style graph decompositions.

An index decomposition (tree plus a total map omega from coordinate
labels to tree vertices) is the combinatorial skeleton that every
realization extends. Leaf-labeled cubic trees and coordinate orderings
are enumerated here exhaustively; the double-factorial count of the
cubic enumeration is what keeps it free of isomorphism filtering.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Sequence

if TYPE_CHECKING:
    from .graphcodes import Multigraph

DEFAULT_CUBIC_CAP = 10
DEFAULT_PATH_CAP = 9

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Tree:
    """A connected acyclic graph with integer vertex ids."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        verts = tuple(self.vertices)
        edges = tuple(sorted(canonical_edge(u, v) for u, v in self.edges))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertex ids")
        vs = set(verts)
        for u, v in edges:
            if u == v or u not in vs or v not in vs:
                raise ValueError(f"bad edge {(u, v)}")
        if len(edges) != len(verts) - 1 or len(set(edges)) != len(edges):
            raise ValueError("edge count must be |V| - 1 with no repeats")
        if verts and len(self.component(verts[0])) != len(verts):
            raise ValueError("tree must be connected")

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def leaves(self) -> list[int]:
        return [v for v in self.vertices if self.degree(v) == 1]

    def component(self, start: int, removed: Edge | None = None) -> set[int]:
        """Vertices reachable from start, optionally with one edge removed."""
        adj = self.adjacency()
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if removed and canonical_edge(u, w) == canonical_edge(*removed):
                    continue
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def subtree(self, verts: Iterable[int]) -> "Tree":
        keep = set(verts)
        return Tree(
            tuple(v for v in self.vertices if v in keep),
            tuple(e for e in self.edges if e[0] in keep and e[1] in keep),
        )

    def path_between(self, a: int, b: int) -> list[int]:
        adj = self.adjacency()
        prev = {a: a}
        stack = [a]
        while stack:
            u = stack.pop()
            if u == b:
                break
            for w in adj[u]:
                if w not in prev:
                    prev[w] = u
                    stack.append(w)
        path = [b]
        while path[-1] != a:
            path.append(prev[path[-1]])
        return path[::-1]


def path_tree(n: int) -> Tree:
    """Simple path on vertices 0..n-1."""
    return Tree(tuple(range(n)), tuple((i, i + 1) for i in range(n - 1)))


def star_tree(n_leaves: int) -> Tree:
    """Center 0 joined to leaves 1..n_leaves."""
    return Tree(tuple(range(n_leaves + 1)), tuple((0, i) for i in range(1, n_leaves + 1)))


@dataclass(eq=False)
class IndexTreeDecomposition:
    """A tree plus a total map omega: labels -> vertices.

    omega need be neither injective nor surjective; its domain is the
    full index set of whatever code the decomposition is used with.
    """

    tree: Tree
    omega: dict[int, int]

    def __post_init__(self):
        vs = set(self.tree.vertices)
        for l, v in self.omega.items():
            if v not in vs:
                raise ValueError(f"omega maps label {l} to unknown vertex {v}")

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(self.omega))

    def labels_at(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(l for l, w in self.omega.items() if w == v))


def split(td: IndexTreeDecomposition, e: Edge) -> tuple[frozenset, frozenset, Tree, Tree]:
    """Partition induced by removing an edge.

    Returns (J, Jbar, T_e, Tbar_e) where T_e is the component containing
    the smaller endpoint of e and J its label preimage.
    """
    e = canonical_edge(*e)
    if e not in td.tree.edges:
        raise ValueError(f"{e} is not an edge of the tree")
    side = td.tree.component(e[0], removed=e)
    other = set(td.tree.vertices) - side
    j = frozenset(l for l, v in td.omega.items() if v in side)
    jbar = frozenset(td.omega) - j
    return j, jbar, td.tree.subtree(side), td.tree.subtree(other)


def side_labels(td: IndexTreeDecomposition, e: Edge, away_from: int) -> frozenset:
    """Labels mapped into the component of tree - e that excludes `away_from`."""
    e = canonical_edge(*e)
    if e not in td.tree.edges:
        raise ValueError(f"{e} is not an edge of the tree")
    if away_from not in e:
        raise ValueError("away_from must be an endpoint of e")
    start = e[0] if e[1] == away_from else e[1]
    side = td.tree.component(start, removed=e)
    return frozenset(l for l, v in td.omega.items() if v in side)


def _cubic_trees(n: int) -> Iterator[Tree]:
    """Leaf-labeled cubic trees with leaves 0..n-1 and internals n, n+1, ...

    Grown by edge insertion: the tree on leaves 0..i arises from each
    tree on leaves 0..i-1 by subdividing one of its edges, which yields
    each labeled shape exactly once.
    """
    if n == 2:
        yield Tree((0, 1), ((0, 1),))
        return

    def grow(edges: list[Edge], next_leaf: int, next_internal: int):
        if next_leaf == n:
            verts = tuple(range(n)) + tuple(range(n, next_internal))
            yield Tree(verts, tuple(edges))
            return
        for idx in range(len(edges)):
            a, b = edges[idx]
            w = next_internal
            rest = edges[:idx] + edges[idx + 1 :]
            new_edges = rest + [
                canonical_edge(a, w),
                canonical_edge(w, b),
                canonical_edge(w, next_leaf),
            ]
            yield from grow(new_edges, next_leaf + 1, next_internal + 1)

    yield from grow([(0, 1)], 2, n)


def enumerate_cubic_decompositions(
    labels: Sequence[int], cap: int = DEFAULT_CUBIC_CAP
) -> Iterator[IndexTreeDecomposition]:
    """All decompositions on leaf-labeled cubic trees, each exactly once.

    The count is (2n-5)!! for n >= 3. Labels are attached to leaves in
    sorted label order, so the stream is deterministic.
    """
    labels = tuple(sorted(labels))
    n = len(labels)
    if n < 2:
        raise ValueError("need at least two labels")
    if n > cap:
        raise ValueError(f"cubic enumeration capped at {cap} labels, got {n}")
    for tree in _cubic_trees(n):
        yield IndexTreeDecomposition(tree, {labels[i]: i for i in range(n)})


def enumerate_path_decompositions(
    labels: Sequence[int], cap: int = DEFAULT_PATH_CAP
) -> Iterator[IndexTreeDecomposition]:
    """All coordinate orderings up to reversal, as path decompositions.

    Orderings are deduplicated by keeping the lexicographic minimum of
    each {order, reversed order} pair: n!/2 decompositions for n >= 2.
    """
    labels = tuple(sorted(labels))
    n = len(labels)
    if n < 1:
        raise ValueError("need at least one label")
    if n > cap:
        raise ValueError(f"path enumeration capped at {cap} labels, got {n}")
    tree = path_tree(n)
    for perm in permutations(range(n)):
        if perm > perm[::-1]:
            continue
        yield IndexTreeDecomposition(tree, {labels[p]: i for i, p in enumerate(perm)})


@dataclass(eq=False)
class GraphTreeDecomposition:
    """A tree of bags over the vertex set of some target graph."""

    tree: Tree
    beta: dict[int, frozenset]

    def __post_init__(self):
        self.beta = {v: frozenset(b) for v, b in self.beta.items()}
        missing = set(self.tree.vertices) - set(self.beta)
        if missing:
            raise ValueError(f"bags missing for tree vertices {sorted(missing)}")

    def width(self) -> int:
        return max(len(b) for b in self.beta.values()) - 1


@dataclass(frozen=True)
class DecompositionCheck:
    ok: bool
    width: int | None
    violation: tuple | None  # (condition, witness)


def check_graph_decomposition(g: "Multigraph", gtd: GraphTreeDecomposition) -> DecompositionCheck:
    """Validate bag cover, edge cover and path-intersection; report width.

    Violations are returned as data: the first failed condition with a
    witness. Loops and edge multiplicities never affect validity.
    """
    bags = gtd.beta
    union = set().union(*bags.values()) if bags else set()
    for v in g.vertices:
        if v not in union:
            return DecompositionCheck(False, None, ("T1", v))
    for u, v in sorted(g.simple_adjacent_pairs()):
        if not any({u, v} <= bags[x] for x in gtd.tree.vertices):
            return DecompositionCheck(False, None, ("T2", (u, v)))
    verts = gtd.tree.vertices
    for x in verts:
        for z in verts:
            if x >= z:
                continue
            common = bags[x] & bags[z]
            if not common:
                continue
            for y in gtd.tree.path_between(x, z):
                if not common <= bags[y]:
                    return DecompositionCheck(False, None, ("T3", (x, z, y)))
    return DecompositionCheck(True, gtd.width(), None)


def check_t3_by_connectivity(g: "Multigraph", gtd: GraphTreeDecomposition) -> bool:
    """Alternative path-intersection test: each vertex's bag set spans a subtree."""
    for v in g.vertices:
        holding = [x for x in gtd.tree.vertices if v in gtd.beta[x]]
        if not holding:
            continue
        keep = set(holding)
        seen = {holding[0]}
        stack = [holding[0]]
        adj = gtd.tree.adjacency()
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in keep and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != keep:
            return False
    return True


# ---------------------------------------------------------------------------
# file format: "vertices <n>", one "edge u v" line per edge, one
# "omega <label> <vertex>" line per coordinate. Vertex ids are 0..n-1.


def write_tree_decomposition(td: IndexTreeDecomposition) -> str:
    n = len(td.tree.vertices)
    if tuple(td.tree.vertices) != tuple(range(n)):
        raise ValueError("serialization requires vertex ids 0..n-1")
    lines = [f"vertices {n}"]
    lines += [f"edge {u} {v}" for u, v in td.tree.edges]
    lines += [f"omega {l} {v}" for l, v in sorted(td.omega.items())]
    return "\n".join(lines) + "\n"


def read_tree_decomposition(text: str) -> IndexTreeDecomposition:
    n = None
    edges: list[Edge] = []
    omega: dict[int, int] = {}
    for ln in text.strip().splitlines():
        parts = ln.split()
        if not parts:
            continue
        if parts[0] == "vertices":
            n = int(parts[1])
        elif parts[0] == "edge":
            edges.append((int(parts[1]), int(parts[2])))
        elif parts[0] == "omega":
            omega[int(parts[1])] = int(parts[2])
        else:
            raise ValueError(f"unrecognized line: {ln!r}")
    if n is None:
        raise ValueError("missing 'vertices' line")
    return IndexTreeDecomposition(Tree(tuple(range(n)), tuple(edges)), omega)
