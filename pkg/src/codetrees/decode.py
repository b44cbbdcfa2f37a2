"""Exact min-sum decoding on tree realizations, with a brute-force oracle.

One leaf-to-root pass accumulates, per reachable state of each edge,
the cheapest subtree assignment (carrying the lexicographically least
one among ties, compared in coordinate order, so the root selection is
the deterministic global tie-break); the root pass reads off the
winning codeword. Local constraints are traversed by enumerating their
own codewords, never the ambient product space, which keeps the
constraint dimension as the governing exponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping

import numpy as np

from .codes import LinearCode, iter_codeword_chunks
from .gfq import FieldSpec
from .realization import TreeRealization
from .trees import Edge, canonical_edge

DEFAULT_NODE_ENUM_BOUND = 2**24


@dataclass(frozen=True)
class ChannelObservation:
    """Per-coordinate cost of assigning each field element."""

    field: FieldSpec
    costs: dict[int, tuple[float, ...]]  # label -> cost per element value

    def __post_init__(self):
        for l, vec in self.costs.items():
            if len(vec) != self.field.q:
                raise ValueError(f"coordinate {l} needs {self.field.q} costs")
            if any(not np.isfinite(x) or x < 0 for x in vec):
                raise ValueError(f"costs must be finite and non-negative at {l}")

    @classmethod
    def hamming_from_word(cls, field: FieldSpec, labels, word) -> "ChannelObservation":
        """Cost 0 for the observed symbol, 1 for everything else."""
        costs = {}
        for l, v in zip(labels, word):
            costs[l] = tuple(0.0 if x == int(v) % field.q else 1.0 for x in range(field.q))
        return cls(field, costs)


@dataclass
class DecodeResult:
    labels: tuple[int, ...]
    codeword: tuple[int, ...]
    cost: float
    op_counts: dict[int, int] = dc_field(default_factory=dict)
    tie_broken: bool = False
    min_count: int = 1

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "codeword": list(self.codeword),
            "cost": self.cost,
            "op_counts": {str(v): c for v, c in sorted(self.op_counts.items())},
            "tie_broken": self.tie_broken,
            "min_count": self.min_count,
        }


def _orient(r: TreeRealization, root: int) -> tuple[list[int], dict[int, int | None]]:
    """Vertices in post-order plus each vertex's parent."""
    adj = r.td.tree.adjacency()
    parent: dict[int, int | None] = {root: None}
    order = []
    stack = [root]
    seen = {root}
    while stack:
        v = stack.pop()
        order.append(v)
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                parent[w] = v
                stack.append(w)
    return order[::-1], parent


def ml_decode(
    r: TreeRealization,
    obs: ChannelObservation,
    expected: LinearCode | None = None,
    node_enum_bound: int = DEFAULT_NODE_ENUM_BOUND,
) -> DecodeResult:
    """Minimum-cost codeword of the realized code under the observation.

    Exact for any tree realization; ties are broken toward the
    lexicographically smallest codeword in the stored label order.
    """
    if set(obs.costs) != set(r.symbol_labels):
        raise ValueError("observation does not cover the symbol coordinates")
    q = r.field.q
    for cv in r.constraints.values():
        if q**cv.dim > node_enum_bound:
            raise ValueError(f"local constraint enumeration exceeds bound: q^{cv.dim}")

    sym_pos = {l: i for i, l in enumerate(r.symbol_labels)}
    root = min(r.td.tree.vertices)
    order, parent = _orient(r, root)

    # per-subtree symbol scopes, ordered by coordinate position
    scope: dict[int, tuple[int, ...]] = {}
    for v in order:
        own = [l for l in r.symbol_labels if r.td.omega[l] == v]
        merged = set(own)
        for w, p in parent.items():
            if p == v:
                merged |= set(scope[w])
        scope[v] = tuple(sorted(merged, key=sym_pos.get))

    messages: dict[int, dict[tuple, tuple]] = {}
    op_counts: dict[int, int] = {}
    for v in order:
        cv = r.constraints[v]
        col = {l: i for i, l in enumerate(cv.labels)}
        own = [l for l in r.symbol_labels if r.td.omega[l] == v]
        own_pos = [col[l] for l in own]
        own_costs = [obs.costs[l] for l in own]
        children = [w for w, p in parent.items() if p == v]
        child_edges = [canonical_edge(v, w) for w in children]
        child_pos = [
            [col[l] for l in r.state_spaces[e].labels] for e in child_edges
        ]
        up_pos = []
        if parent[v] is not None:
            up = canonical_edge(v, parent[v])
            up_pos = [col[l] for l in r.state_spaces[up].labels]

        degree = len(children) + (1 if parent[v] is not None else 0)
        per_word = max(degree + len(own), 1)
        table: dict[tuple, tuple] = {}
        evaluated = 0
        for chunk in iter_codeword_chunks(cv):
            for word in chunk:
                evaluated += 1
                cost = 0.0
                for i, p in enumerate(own_pos):
                    cost += own_costs[i][int(word[p])]
                count = 1
                parts = []
                feasible = True
                for ci, w in enumerate(children):
                    s_key = tuple(int(word[p]) for p in child_pos[ci])
                    entry = messages[w].get(s_key)
                    if entry is None:
                        feasible = False
                        break
                    cost += entry[0]
                    count *= entry[2]
                    parts.append(entry[1])
                if not feasible:
                    continue
                assign = {l: int(word[p]) for l, p in zip(own, own_pos)}
                for part in parts:
                    assign.update(part)
                key = tuple(int(word[p]) for p in up_pos)
                lex = tuple(assign[l] for l in scope[v])
                prev = table.get(key)
                if prev is None:
                    table[key] = (cost, assign, count, lex)
                elif cost < prev[0]:
                    table[key] = (cost, assign, count, lex)
                elif cost == prev[0]:
                    total = prev[2] + count
                    if lex < prev[3]:
                        table[key] = (cost, assign, total, lex)
                    else:
                        table[key] = (prev[0], prev[1], total, prev[3])
        op_counts[v] = evaluated * per_word
        messages[v] = table

    best = messages[root][()]
    cost, assign, count, _ = best
    codeword = tuple(assign[l] for l in r.symbol_labels)
    if expected is not None and not expected.contains_word(np.array(codeword)):
        raise AssertionError("decoded word is not in the expected code")
    return DecodeResult(
        tuple(r.symbol_labels), codeword, cost, op_counts, count > 1, count
    )


def brute_force_ml(
    c: LinearCode, obs: ChannelObservation, enum_bound: int = DEFAULT_NODE_ENUM_BOUND
) -> DecodeResult:
    """Reference decoder: enumerate every codeword, same tie-break rule."""
    if set(obs.costs) != set(c.labels):
        raise ValueError("observation does not cover the code's coordinates")
    if c.field.q**c.dim > enum_bound:
        raise ValueError("enumeration bound exceeded")
    cost_mat = np.array([obs.costs[l] for l in c.labels], dtype=np.float64).T  # q x n
    cols = np.arange(c.length)
    best_cost = None
    best_word = None
    count = 0
    for words in iter_codeword_chunks(c):
        costs = cost_mat[words.astype(np.int64), cols].sum(axis=1)
        m = float(costs.min()) if costs.size else None
        if m is None:
            continue
        if best_cost is None or m < best_cost:
            best_cost = m
            count = 0
            best_word = None
        if m <= best_cost:
            hits = words[costs == best_cost]
            count += hits.shape[0]
            for row in hits:
                t = tuple(int(x) for x in row)
                if best_word is None or t < best_word:
                    best_word = t
    return DecodeResult(tuple(c.labels), best_word, best_cost, {}, count > 1, count)


def complexity_profile(r: TreeRealization) -> dict:
    """Per-vertex cost model of message passing on this realization.

    The modeled count of a vertex is deg*(deg-2)*q^dim, which the
    standard analysis attaches to internal nodes; for degrees <= 2 the
    model degenerates to zero or below and the measured counter is the
    meaningful figure. On a cubic tree whose symbols sit bijectively on
    the leaves, every internal model is bounded by 3*q^t with t the
    constraint complexity.
    """
    tree = r.td.tree
    q = r.field.q
    t = max(cv.dim for cv in r.constraints.values())
    degrees = {v: tree.degree(v) for v in tree.vertices}
    leaves = {v for v, d in degrees.items() if d == 1}
    internal = [v for v in tree.vertices if v not in leaves]
    cubic = all(degrees[v] == 3 for v in internal)
    leaf_bijective = (
        len(r.symbol_labels) == len(leaves)
        and set(r.td.omega.values()) <= leaves
        and len(set(r.td.omega.values())) == len(r.symbol_labels)
    )
    bound = 3 * q**t
    records = []
    internal_total = 0
    for v in tree.vertices:
        d = degrees[v]
        dim = r.constraints[v].dim
        modeled = d * (d - 2) * q**dim
        rec = {
            "vertex": v,
            "degree": d,
            "constraint_dim": dim,
            "modeled_ops": modeled,
            "model_degenerate": d <= 2,
        }
        if v in internal:
            internal_total += max(modeled, 0)
            rec["within_3qt"] = modeled <= bound
        records.append(rec)
    return {
        "q": q,
        "constraint_complexity": t,
        "cubic": cubic,
        "leaf_bijective": leaf_bijective,
        "per_node_bound": bound,
        "internal_total": internal_total,
        "internal_total_bound": max(len(r.symbol_labels) - 2, 0) * bound,
        "applies": cubic and leaf_bijective,
        "vertices": records,
    }


# ---------------------------------------------------------------------------
# costs file: one line per coordinate in code label order, q costs per line


def write_costs(obs: ChannelObservation, labels) -> str:
    lines = []
    for l in labels:
        lines.append(" ".join(repr(float(x)) for x in obs.costs[l]))
    return "\n".join(lines) + "\n"


def read_costs(text: str, field: FieldSpec, labels) -> ChannelObservation:
    rows = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if len(rows) != len(labels):
        raise ValueError(f"need {len(labels)} cost lines, found {len(rows)}")
    costs = {}
    for l, row in zip(labels, rows):
        costs[l] = tuple(float(x) for x in row)
    return ChannelObservation(field, costs)
