"""Width measures of codes and graphs, all exact.

For codes: state/constraint complexity of one decomposition, their
minima over leaf-bijective cubic trees (treewidth/branchwidth of the
code) and over coordinate orderings (trellis widths, via a minimax
sweep of the subset lattice). For graphs: exact treewidth through the
eliminated-subset recurrence and exact pathwidth through vertex
separation, each cross-checkable against a purely definitional search
over bag decompositions. Every report carries a witness that
re-evaluates to the reported value.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
import bisect
from itertools import combinations, permutations, product

import numpy as np

from . import _kernels
from .codes import LinearCode
from .gfq import inverse_table
from .graphcodes import Multigraph
from .realization import minimal_constraint_dim, minimal_state_dim
from .trees import (
    GraphTreeDecomposition,
    IndexTreeDecomposition,
    Tree,
    check_graph_decomposition,
    _cubic_trees,
)

DEFAULT_CUBIC_CAP = 10
DEFAULT_SUBSET_CAP = 22
DEFAULT_GRAPH_CAP = 24


@dataclass
class WidthReport:
    """A width value plus the witness decomposition that achieves it."""

    measure: str
    value: int
    witness: dict
    search_space: int
    method: str  # exhaustive | subset-dp | elimination-dp | theorem-assisted
    notes: dict = dc_field(default_factory=dict)
    witness_object: object = None

    def to_dict(self) -> dict:
        out = {
            "measure": self.measure,
            "value": self.value,
            "witness": self.witness,
            "search_space": self.search_space,
            "method": self.method,
        }
        if self.notes:
            out["notes"] = self.notes
        return out


def sigma(c: LinearCode, td: IndexTreeDecomposition) -> int:
    """State complexity of the minimal realization on (tree, omega)."""
    if not td.tree.edges:
        return 0
    return max(minimal_state_dim(c, td, e) for e in td.tree.edges)


def kappa(c: LinearCode, td: IndexTreeDecomposition) -> int:
    """Constraint complexity of the minimal realization on (tree, omega)."""
    return max(minimal_constraint_dim(c, td, v) for v in td.tree.vertices)


# ---------------------------------------------------------------------------
# rank tables and cubic-tree templates


def subset_rank_table_for(c: LinearCode) -> np.ndarray:
    """rank of the generator restricted to every label subset (bit i = labels[i]).

    Cached per instance: the bit layout follows this instance's stored
    label order, which equal codes need not share.
    """
    cached = c._cache.get("rank_table")
    if cached is None:
        q = c.field.q
        gen = c.gen.array.astype(np.int64)
        inv = np.array(inverse_table(q), dtype=np.int64)
        cached = _kernels.subset_rank_table(gen, q, inv)
        c._cache["rank_table"] = cached
    return cached


@dataclass(frozen=True)
class _CubicTemplate:
    tree: Tree
    edge_masks: tuple[int, ...]  # leaf mask of the side containing edge[0]
    vertex_masks: tuple[tuple[int, ...], ...]  # per vertex: side-of-v mask per incident edge


def _build_template(tree: Tree, n: int) -> _CubicTemplate:
    full = (1 << n) - 1
    edge_masks = []
    for a, b in tree.edges:
        comp = tree.component(a, removed=(a, b))
        edge_masks.append(sum(1 << v for v in comp if v < n))
    vmasks = []
    for v in tree.vertices:
        ms = []
        for idx, (a, b) in enumerate(tree.edges):
            if v == a:
                ms.append(edge_masks[idx])
            elif v == b:
                ms.append(full ^ edge_masks[idx])
        vmasks.append(tuple(ms))
    return _CubicTemplate(tree, tuple(edge_masks), tuple(vmasks))


@lru_cache(maxsize=8)
def _cubic_templates_cached(n: int) -> tuple[_CubicTemplate, ...]:
    return tuple(_build_template(t, n) for t in _cubic_trees(n))


def _cubic_templates(n: int):
    if n <= 8:
        return _cubic_templates_cached(n)
    return (_build_template(t, n) for t in _cubic_trees(n))


def _template_sigma(t: _CubicTemplate, rt: np.ndarray, k: int, full: int) -> int:
    best = 0
    for m in t.edge_masks:
        v = int(rt[m]) + int(rt[full ^ m]) - k
        if v > best:
            best = v
    return best


def _template_kappa(t: _CubicTemplate, rt: np.ndarray, k: int) -> int:
    best = 0
    for ms in t.vertex_masks:
        v = k
        for m in ms:
            v -= k - int(rt[m])
        if v > best:
            best = v
    return best


def _double_factorial_count(n: int) -> int:
    out = 1
    for i in range(3, n + 1):
        out *= 2 * i - 5
    return out


def _decomposition_witness(td: IndexTreeDecomposition) -> dict:
    return {
        "tree": {"vertices": list(td.tree.vertices), "edges": [list(e) for e in td.tree.edges]},
        "omega": {str(l): v for l, v in sorted(td.omega.items())},
    }


def _single_vertex_report(c: LinearCode, measure: str, value: int) -> WidthReport:
    td = IndexTreeDecomposition(Tree((0,), ()), {l: 0 for l in c.labels})
    return WidthReport(measure, value, _decomposition_witness(td), 1, "exhaustive", witness_object=td)


def _cubic_min(c: LinearCode, measure: str, objective, cap: int) -> WidthReport:
    n = c.length
    if n > cap:
        raise ValueError(f"cubic enumeration capped at {cap} coordinates, got {n}")
    if n == 1:
        value = c.dim if measure == "code_treewidth" else 0
        return _single_vertex_report(c, measure, value)
    rt = subset_rank_table_for(c)
    full = (1 << n) - 1
    k = c.dim
    best = None
    best_t = None
    count = 0
    for t in _cubic_templates(n):
        count += 1
        val = objective(t, rt, k, full)
        if best is None or val < best:
            best, best_t = val, t
    labels = sorted(c.labels)
    td = IndexTreeDecomposition(best_t.tree, {labels[i]: i for i in range(n)})
    assert count == max(_double_factorial_count(n), 1)
    return WidthReport(
        measure,
        best,
        _decomposition_witness(td),
        count,
        "exhaustive",
        notes={"search": "leaf-bijective cubic trees"},
        witness_object=td,
    )


def code_treewidth(c: LinearCode, cap: int = DEFAULT_CUBIC_CAP) -> WidthReport:
    """Least constraint complexity over leaf-bijective cubic decompositions."""
    return _cubic_min(c, "code_treewidth", lambda t, rt, k, full: _template_kappa(t, rt, k), cap)


def code_branchwidth(c: LinearCode, cap: int = DEFAULT_CUBIC_CAP) -> WidthReport:
    """Least state complexity over leaf-bijective cubic decompositions.

    The minimum is taken over that family only; it can differ from the
    infimum over arbitrary decompositions.
    """
    return _cubic_min(c, "code_branchwidth", _template_sigma, cap)


def sigma_over_all_small_decompositions(c: LinearCode, max_tree_vertices: int | None = None) -> int:
    """Experimental: minimize state complexity over every (tree, omega).

    Exhausts all labeled trees up to the given size with all label
    assignments, so it is only usable at toy lengths. No claim is
    attached to how this compares with the cubic minimum in general.
    """
    n = c.length
    if n > 5:
        raise ValueError("experimental search is limited to length <= 5")
    cap = max_tree_vertices or n
    best = sigma(c, IndexTreeDecomposition(Tree((0,), ()), {l: 0 for l in c.labels}))
    for m in range(2, cap + 1):
        for edges in _labeled_trees(m):
            tree = Tree(tuple(range(m)), edges)
            for assign in product(range(m), repeat=n):
                om = {l: assign[i] for i, l in enumerate(c.labels)}
                best = min(best, sigma(c, IndexTreeDecomposition(tree, om)))
    return best


# ---------------------------------------------------------------------------
# trellis widths by minimax subset DP


def _popcount_order(size: int) -> tuple[np.ndarray, np.ndarray]:
    masks = np.arange(size, dtype=np.int64)
    pc = np.bitwise_count(masks.astype(np.uint64)).astype(np.int64)
    order = np.argsort(pc, kind="stable")
    return order, pc


def _trellis_tables(c: LinearCode) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(w, f, g): per-subset state weight, sigma DP, kappa DP."""
    n, k = c.length, c.dim
    rt = subset_rank_table_for(c).astype(np.int32)
    size = 1 << n
    full = size - 1
    masks = np.arange(size, dtype=np.int64)
    w = rt[masks] + rt[full ^ masks] - k
    f = np.zeros(size, np.int32)
    g = np.zeros(size, np.int32)
    order, pc = _popcount_order(size)
    big = np.int32(1 << 20)
    for level in range(1, n + 1):
        layer = order[np.searchsorted(pc[order], level) : np.searchsorted(pc[order], level + 1)]
        fmin = np.full(layer.size, big, np.int32)
        gmin = np.full(layer.size, big, np.int32)
        for b in range(n):
            has = ((layer >> b) & 1) == 1
            if not has.any():
                continue
            sub = layer[has] ^ (1 << b)
            fmin[has] = np.minimum(fmin[has], f[sub])
            bcost = rt[layer[has]] + rt[full ^ sub] - k
            gmin[has] = np.minimum(gmin[has], np.maximum(g[sub], bcost))
        f[layer] = np.maximum(w[layer], fmin)
        g[layer] = gmin
    return w, f, g


def _walk_sigma(c: LinearCode, w: np.ndarray, f: np.ndarray) -> list[int]:
    n = c.length
    s = (1 << n) - 1
    rev = []
    while s:
        target = None
        for b in range(n):
            if s >> b & 1:
                cand = max(int(w[s]), int(f[s ^ (1 << b)]))
                if cand == int(f[s]):
                    target = b
                    break
        assert target is not None
        rev.append(target)
        s ^= 1 << target
    return [c.labels[b] for b in reversed(rev)]


def _walk_kappa(c: LinearCode, g: np.ndarray, rt: np.ndarray) -> list[int]:
    n, k = c.length, c.dim
    full = (1 << n) - 1
    s = full
    rev = []
    while s:
        target = None
        for b in range(n):
            if s >> b & 1:
                sub = s ^ (1 << b)
                bcost = int(rt[s]) + int(rt[full ^ sub]) - k
                if max(int(g[sub]), bcost) == int(g[s]):
                    target = b
                    break
        assert target is not None
        rev.append(target)
        s ^= 1 << target
    return [c.labels[b] for b in reversed(rev)]


def _ordering_witness(ordering: list[int]) -> tuple[dict, IndexTreeDecomposition]:
    from .trees import path_tree

    td = IndexTreeDecomposition(path_tree(len(ordering)), {l: i for i, l in enumerate(ordering)})
    return {"ordering": list(ordering), **_decomposition_witness(td)}, td


def _ordering_count(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return max(out // 2, 1)


def trellis_widths(c: LinearCode, cap: int = DEFAULT_SUBSET_CAP) -> tuple[WidthReport, WidthReport]:
    """Exact minimum trellis state and constraint widths, with witnesses.

    Both depend on an ordering only through its prefix sets, so they
    minimize over monotone chains of the subset lattice instead of the
    n!/2 orderings.
    """
    n = c.length
    if n < 1:
        raise ValueError("code must have at least one coordinate")
    if n > cap:
        raise ValueError(f"subset DP capped at {cap} coordinates, got {n}")
    rt = subset_rank_table_for(c).astype(np.int32)
    w, f, g = _trellis_tables(c)
    full = (1 << n) - 1
    sig_order = _walk_sigma(c, w, f)
    kap_order = _walk_kappa(c, g, rt)
    sig_witness, sig_td = _ordering_witness(sig_order)
    kap_witness, kap_td = _ordering_witness(kap_order)
    space = _ordering_count(n)
    sig = WidthReport("sigma_trellis", int(f[full]), sig_witness, space, "subset-dp",
                      witness_object=sig_td)
    kap = WidthReport("kappa_trellis", int(g[full]), kap_witness, space, "subset-dp",
                      witness_object=kap_td)
    return sig, kap


def trellis_widths_exhaustive(c: LinearCode, cap: int = 8) -> tuple[int, int]:
    """(sigma, kappa) over all coordinate orderings, by direct search."""
    n, k = c.length, c.dim
    if n > cap:
        raise ValueError(f"factorial search capped at {cap} coordinates")
    rt = subset_rank_table_for(c)
    full = (1 << n) - 1
    best_s, best_k = None, None
    for perm in permutations(range(n)):
        if n > 1 and perm > perm[::-1]:
            continue
        s_val = 0
        k_val = 0
        prev = 0
        cur = 0
        for pos in perm:
            cur |= 1 << pos
            k_val = max(k_val, int(rt[cur]) + int(rt[full ^ prev]) - k)
            if cur != full:
                s_val = max(s_val, int(rt[cur]) + int(rt[full ^ cur]) - k)
            prev = cur
        best_s = s_val if best_s is None else min(best_s, s_val)
        best_k = k_val if best_k is None else min(best_k, k_val)
    return best_s, best_k


# ---------------------------------------------------------------------------
# graph treewidth (eliminated-subset DP) and pathwidth (vertex separation)


def _neighbor_masks(g: Multigraph) -> tuple[list[int], np.ndarray]:
    verts = sorted(g.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    nbr = np.zeros(len(verts), dtype=np.int64)
    for u, v in g.simple_adjacent_pairs():
        nbr[pos[u]] |= 1 << pos[v]
        nbr[pos[v]] |= 1 << pos[u]
    return verts, nbr


def _component_outside_degree(nbr: np.ndarray, s: int, v: int) -> int:
    comp = 1 << v
    frontier = comp
    while True:
        nxt = 0
        fr = frontier
        while fr:
            u = (fr & -fr).bit_length() - 1
            fr &= fr - 1
            nxt |= int(nbr[u])
        nxt &= s
        nxt &= ~comp
        if not nxt:
            break
        comp |= nxt
        frontier = nxt
    outn = 0
    cc = comp
    while cc:
        u = (cc & -cc).bit_length() - 1
        cc &= cc - 1
        outn |= int(nbr[u])
    outn &= ~s
    return bin(outn).count("1")


def graph_treewidth(g: Multigraph, cap: int = DEFAULT_GRAPH_CAP) -> WidthReport:
    """Exact treewidth; the witness is a validated bag decomposition.

    Parallel edges and loops are collapsed before the sweep since bags
    only see the underlying simple adjacency.
    """
    n = g.num_vertices
    if n == 0:
        raise ValueError("graph has no vertices")
    if n > cap:
        raise ValueError(f"subset DP capped at {cap} vertices, got {n}")
    verts, nbr = _neighbor_masks(g)
    table = _kernels.treewidth_table(nbr)
    full = (1 << n) - 1
    value = int(table[full])

    # recover an optimal elimination order (last-removed first)
    order_rev = []
    s = full
    while s:
        pick = None
        for v in range(n):
            if s >> v & 1:
                sub = s ^ (1 << v)
                cand = max(int(table[sub]), _component_outside_degree(nbr, s, v))
                if cand == int(table[s]):
                    pick = v
                    break
        assert pick is not None
        order_rev.append(pick)
        s ^= 1 << pick
    elim = order_rev[::-1]

    gtd = _decomposition_from_elimination(verts, nbr, elim)
    checked = check_graph_decomposition(g, gtd)
    assert checked.ok and checked.width == value, "witness failed to re-evaluate"
    witness = {
        "elimination_order": [verts[v] for v in elim],
        "bags": {str(x): sorted(gtd.beta[x]) for x in gtd.tree.vertices},
        "tree_edges": [list(e) for e in gtd.tree.edges],
    }
    return WidthReport("graph_treewidth", value, witness, 1 << n, "elimination-dp",
                       witness_object=gtd)


def _decomposition_from_elimination(verts: list[int], nbr: np.ndarray, elim: list[int]) -> GraphTreeDecomposition:
    n = len(verts)
    filled = {v: set(int(x) for x in range(n) if nbr[v] >> x & 1) for v in range(n)}
    position = {v: i for i, v in enumerate(elim)}
    bags: dict[int, frozenset] = {}
    parent: dict[int, int | None] = {}
    alive = set(range(n))
    for i, v in enumerate(elim):
        later = {u for u in filled[v] if u in alive and u != v}
        bags[i] = frozenset({verts[v]} | {verts[u] for u in later})
        parent[i] = min((position[u] for u in later), default=None)
        if parent[i] is None and i + 1 < n:
            parent[i] = i + 1
        for a in later:
            for b in later:
                if a != b:
                    filled[a].add(b)
        alive.discard(v)
        for u in alive:
            filled[u].discard(v)
    edges = tuple((i, p) for i, p in parent.items() if p is not None)
    tree = Tree(tuple(range(n)), edges)
    return GraphTreeDecomposition(tree, bags)


def graph_pathwidth(g: Multigraph, cap: int = DEFAULT_GRAPH_CAP) -> WidthReport:
    """Exact pathwidth via vertex separation; witness is a path of bags."""
    n = g.num_vertices
    if n == 0:
        raise ValueError("graph has no vertices")
    if n > cap:
        raise ValueError(f"subset DP capped at {cap} vertices, got {n}")
    verts, nbr = _neighbor_masks(g)
    table = _kernels.pathwidth_table(nbr)
    full = (1 << n) - 1
    value = int(table[full])

    def boundary(s: int) -> int:
        b = 0
        t = s
        while t:
            u = (t & -t).bit_length() - 1
            t &= t - 1
            if int(nbr[u]) & ~s:
                b += 1
        return b

    order_rev = []
    s = full
    while s:
        pick = None
        for v in range(n):
            if s >> v & 1:
                if max(boundary(s), int(table[s ^ (1 << v)])) == int(table[s]):
                    pick = v
                    break
        assert pick is not None
        order_rev.append(pick)
        s ^= 1 << pick
    ordering = order_rev[::-1]

    gtd = _path_decomposition_from_ordering(verts, nbr, ordering)
    checked = check_graph_decomposition(g, gtd)
    assert checked.ok and checked.width == value, "witness failed to re-evaluate"
    witness = {
        "ordering": [verts[v] for v in ordering],
        "bags": {str(x): sorted(gtd.beta[x]) for x in gtd.tree.vertices},
    }
    return WidthReport("graph_pathwidth", value, witness, 1 << n, "subset-dp",
                       witness_object=gtd)


def _path_decomposition_from_ordering(verts: list[int], nbr: np.ndarray, ordering: list[int]) -> GraphTreeDecomposition:
    from .trees import path_tree

    n = len(ordering)
    bags = {}
    for i in range(n):
        prefix = set(ordering[:i])
        suffix_mask = 0
        for u in ordering[i:]:
            suffix_mask |= 1 << u
        bag = {ordering[i]}
        for u in prefix:
            if int(nbr[u]) & suffix_mask:
                bag.add(u)
        bags[i] = frozenset(verts[u] for u in bag)
    return GraphTreeDecomposition(path_tree(n), bags)


# ---------------------------------------------------------------------------
# definitional brute-force oracles (bag decompositions checked literally)


def _labeled_trees(m: int):
    """Edge sets of all labeled trees on vertices 0..m-1."""
    if m == 1:
        yield ()
        return
    if m == 2:
        yield ((0, 1),)
        return
    for seq in product(range(m), repeat=m - 2):
        degree = [1] * m
        for v in seq:
            degree[v] += 1
        seq_list = list(seq)
        edges = []
        leaves = sorted(v for v in range(m) if degree[v] == 1)
        for v in seq_list:
            leaf = leaves.pop(0)
            edges.append((min(leaf, v), max(leaf, v)))
            degree[leaf] -= 1
            degree[v] -= 1
            if degree[v] == 1:
                bisect.insort(leaves, v)
        u, w = [v for v in range(m) if degree[v] == 1]
        edges.append((min(u, w), max(u, w)))
        yield tuple(edges)


def _candidate_bag_sets(g: Multigraph, width: int):
    """Antichain bag families of size <= |V| covering vertices and edges.

    Any decomposition can be normalized so no bag contains another and
    at most |V| bags remain, so searching these families is exhaustive
    for the decision problem at each width.
    """
    verts = sorted(g.vertices)
    n = len(verts)
    pairs = sorted(g.simple_adjacent_pairs())
    bags = []
    for size in range(1, width + 2):
        bags.extend(frozenset(c) for c in combinations(verts, size))
    all_v = set(verts)
    for m in range(1, n + 1):
        for combo in combinations(bags, m):
            if any(a < b or b < a for a, b in combinations(combo, 2)):
                continue
            union = set().union(*combo)
            if union != all_v:
                continue
            if any(not any({u, v} <= bag for bag in combo) for u, v in pairs):
                continue
            yield combo


def _definitional_decision(g: Multigraph, width: int, paths_only: bool) -> GraphTreeDecomposition | None:
    for combo in _candidate_bag_sets(g, width):
        m = len(combo)
        if paths_only:
            from .trees import path_tree

            for perm in permutations(range(m)):
                if m > 1 and perm > perm[::-1]:
                    continue
                gtd = GraphTreeDecomposition(path_tree(m), {i: combo[perm[i]] for i in range(m)})
                if check_graph_decomposition(g, gtd).ok:
                    return gtd
        else:
            for edges in _labeled_trees(m):
                gtd = GraphTreeDecomposition(Tree(tuple(range(m)), edges), dict(enumerate(combo)))
                if check_graph_decomposition(g, gtd).ok:
                    return gtd
    return None


def graph_treewidth_definitional(g: Multigraph) -> tuple[int, GraphTreeDecomposition]:
    """Treewidth by literal search over bag decompositions (tiny graphs only)."""
    if g.num_vertices > 5:
        raise ValueError("definitional search is limited to 5 vertices")
    for w in range(0, g.num_vertices):
        found = _definitional_decision(g, w, paths_only=False)
        if found is not None:
            return w, found
    raise AssertionError("a one-bag decomposition always exists")


def graph_pathwidth_definitional(g: Multigraph) -> tuple[int, GraphTreeDecomposition]:
    """Pathwidth by literal search over path decompositions (tiny graphs only)."""
    if g.num_vertices > 5:
        raise ValueError("definitional search is limited to 5 vertices")
    for w in range(0, g.num_vertices):
        found = _definitional_decision(g, w, paths_only=True)
        if found is not None:
            return w, found
    raise AssertionError("a one-bag decomposition always exists")
