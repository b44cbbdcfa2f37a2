"""Recursive construction of minimal realizations through r-sum splits.

Peeling a leaf edge splits the code across that edge, leaves the leaf's
part behind as the local constraint there with the shared simplex code
as the edge's state space, and continues with the other part on the
smaller tree. Because shared coordinates are mapped to the surviving
endpoint, every intermediate piece lines up with the final tree without
any re-stitching.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

from .codes import LinearCode
from .gfq import rank
from .realization import TreeRealization
from .rsum import rsum_decompose
from .trees import Edge, IndexTreeDecomposition, Tree, side_labels, split


@dataclass(frozen=True)
class BuildStep:
    """One split: the edge handled, its rank surplus, and problem sizes."""

    edge: Edge
    r: int
    code_length: int
    code_dim: int
    shared_len: int
    work_units: int  # deterministic cost estimate: k^2 n + |J| r q^r


@dataclass
class BuildTrace:
    r_max: int
    steps: list[BuildStep] = dc_field(default_factory=list)

    def total_work(self) -> int:
        return sum(s.work_units for s in self.steps)

    def to_dict(self) -> dict:
        return {
            "r_max": self.r_max,
            "total_work_units": self.total_work(),
            "steps": [
                {
                    "edge": list(s.edge),
                    "r": s.r,
                    "code_length": s.code_length,
                    "code_dim": s.code_dim,
                    "shared_len": s.shared_len,
                    "work_units": s.work_units,
                }
                for s in self.steps
            ],
        }


def r_max_of(c: LinearCode, td: IndexTreeDecomposition) -> int:
    """Largest rank surplus across any tree edge (0 for edgeless trees)."""
    best = 0
    for e in td.tree.edges:
        j, jbar, _, _ = split(td, e)
        kj = rank(c.gen.take_columns(c.label_positions(j)))
        kjb = rank(c.gen.take_columns(c.label_positions(jbar)))
        best = max(best, kj + kjb - c.dim)
    return best


def choose_edge(t: Tree) -> Edge:
    """Smallest edge incident with a leaf (every tree with an edge has one)."""
    if not t.edges:
        raise ValueError("tree has no edges")
    degrees = {v: t.degree(v) for v in t.vertices}
    for e in t.edges:
        if degrees[e[0]] == 1 or degrees[e[1]] == 1:
            return e
    raise AssertionError("a finite tree always has a leaf edge")


def min_realzn(
    c: LinearCode,
    td: IndexTreeDecomposition,
    edge_chooser: Callable[[Tree], Edge] | None = None,
) -> tuple[TreeRealization, BuildTrace]:
    """Build the minimal realization of c extending (tree, omega).

    The default peels leaf edges iteratively, so exactly one split per
    edge occurs and no recursion is needed. Passing `edge_chooser`
    switches to the general recursive variant, which may pick any edge;
    no performance claim is attached to custom choices.
    """
    if set(td.omega) != set(c.labels):
        raise ValueError("decomposition must cover exactly the code's labels")
    trace = BuildTrace(r_max=r_max_of(c, td))
    states: dict[Edge, LinearCode] = {}
    constraints: dict[int, LinearCode] = {}

    if edge_chooser is None:
        _build_by_leaf_peeling(c, td, states, constraints, trace)
    else:
        _build_general(c, td.tree, dict(td.omega), edge_chooser, states, constraints, trace)

    real = TreeRealization(td, tuple(c.labels), states, constraints)
    return real, trace


def _record(trace: BuildTrace, e: Edge, dec, code: LinearCode, j_size: int) -> None:
    q = code.field.q
    work = code.dim**2 * code.length + j_size * dec.r * q**dec.r
    trace.steps.append(
        BuildStep(e, dec.r, code.length, code.dim, dec.delta.length, work)
    )
    if dec.r > trace.r_max:
        raise AssertionError(
            f"split rank {dec.r} exceeded the global bound {trace.r_max}"
        )


def _build_by_leaf_peeling(c, td, states, constraints, trace) -> None:
    cur_code = c
    cur_tree = td.tree
    cur_omega = dict(td.omega)
    while cur_tree.edges:
        cur_td = IndexTreeDecomposition(cur_tree, cur_omega)
        e = choose_edge(cur_tree)
        # peel the single-vertex side; on a lone edge, peel the larger id
        leaf = e[1] if cur_tree.degree(e[1]) == 1 else e[0]
        keep = e[0] if leaf == e[1] else e[1]
        j = side_labels(cur_td, e, away_from=leaf)
        dec = rsum_decompose(cur_code, j)
        _record(trace, e, dec, cur_code, len(j))
        states[e] = dec.delta.code
        constraints[leaf] = dec.c2
        remaining = cur_tree.subtree(set(cur_tree.vertices) - {leaf})
        next_omega = {l: cur_omega[l] for l in dec.c1.labels if l in cur_omega}
        for l in dec.delta.labels:
            next_omega[l] = keep
        cur_code, cur_tree, cur_omega = dec.c1, remaining, next_omega
    constraints[cur_tree.vertices[0]] = cur_code


def _build_general(c, tree, omega, chooser, states, constraints, trace) -> None:
    if not tree.edges:
        constraints[tree.vertices[0]] = c
        return
    e = chooser(tree)
    td = IndexTreeDecomposition(tree, omega)
    j, jbar, t_side, tbar_side = split(td, e)
    v1 = e[0]  # lives in t_side by the split convention
    v2 = e[1]
    dec = rsum_decompose(c, j)
    _record(trace, e, dec, c, len(j))
    states[e] = dec.delta.code
    omega1 = {l: omega[l] for l in j}
    omega2 = {l: omega[l] for l in jbar}
    for l in dec.delta.labels:
        omega1[l] = v1
        omega2[l] = v2
    _build_general(dec.c1, t_side, omega1, chooser, states, constraints, trace)
    _build_general(dec.c2, tbar_side, omega2, chooser, states, constraints, trace)
