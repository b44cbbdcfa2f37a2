"""Tree models of codes: full behaviors, essentialization, state merging.

A realization attaches a state alphabet (a linear code on its own fresh
labels) to every tree edge and a local constraint code to every vertex.
The full behavior, the space of global symbol+state assignments meeting
every constraint, is the nullspace of one stacked parity system, so all
of the classical constructions (essentialize, merge states at an edge,
read off the minimal realization) are exact linear algebra rather than
configuration enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .codes import (
    LinearCode,
    cross_section,
    direct_sum,
    fresh_labels,
    parity_check,
)
from .gfq import (
    FqMatrix,
    nullspace,
    rank,
    right_inverse,
    row_basis,
    row_space_contains,
    row_space_equal,
    vstack,
)
from .trees import Edge, IndexTreeDecomposition, canonical_edge, side_labels, split

DEFAULT_BEHAVIOR_CAP = 10_000


@dataclass(eq=False)
class TreeRealization:
    """A tree decomposition extended with state spaces and local constraints.

    State label sets are pairwise disjoint and disjoint from the symbol
    labels; the constraint at v lives on the symbols mapped to v plus
    the state labels of the edges incident to v.
    """

    td: IndexTreeDecomposition
    symbol_labels: tuple[int, ...]
    state_spaces: dict[Edge, LinearCode]
    constraints: dict[int, LinearCode]

    def __post_init__(self):
        self.state_spaces = {canonical_edge(*e): s for e, s in self.state_spaces.items()}
        tree = self.td.tree
        if set(self.state_spaces) != set(tree.edges):
            raise ValueError("need exactly one state space per edge")
        if set(self.constraints) != set(tree.vertices):
            raise ValueError("need exactly one constraint per vertex")
        if set(self.td.omega) != set(self.symbol_labels):
            raise ValueError("omega domain must be the symbol label set")
        seen = set(self.symbol_labels)
        for e, s in self.state_spaces.items():
            overlap = seen & set(s.labels)
            if overlap:
                raise ValueError(f"state labels reused: {sorted(overlap)}")
            seen |= set(s.labels)
        for v, cv in self.constraints.items():
            expected = set(self.td.labels_at(v))
            for e in tree.edges:
                if v in e:
                    expected |= set(self.state_spaces[e].labels)
            if set(cv.labels) != expected:
                raise ValueError(f"constraint at {v} is on the wrong label set")

    @property
    def field(self):
        return self.constraints[self.td.tree.vertices[0]].field

    def incident_edges(self, v: int) -> list[Edge]:
        return [e for e in self.td.tree.edges if v in e]

    def local_labels(self, v: int) -> tuple[int, ...]:
        """Symbols at v (in symbol order) then states per incident edge."""
        out = [l for l in self.symbol_labels if self.td.omega[l] == v]
        for e in self.incident_edges(v):
            out.extend(self.state_spaces[e].labels)
        return tuple(out)

    def state_dims(self) -> dict[Edge, int]:
        return {e: s.dim for e, s in self.state_spaces.items()}

    def constraint_dims(self) -> dict[int, int]:
        return {v: c.dim for v, c in self.constraints.items()}


@dataclass(eq=False)
class FullBehavior:
    """Basis of all valid global configurations of a tree model."""

    realization: TreeRealization
    labels: tuple[int, ...]
    basis: FqMatrix

    @property
    def dim(self) -> int:
        return self.basis.rows

    def positions(self, subset: Iterable[int]) -> list[int]:
        want = set(subset)
        missing = want - set(self.labels)
        if missing:
            raise KeyError(f"unknown labels: {sorted(missing)}")
        return [i for i, l in enumerate(self.labels) if l in want]


def _global_labels(r: TreeRealization) -> tuple[int, ...]:
    out = list(r.symbol_labels)
    for e in r.td.tree.edges:
        out.extend(r.state_spaces[e].labels)
    return tuple(out)


def full_behavior(r: TreeRealization, cap: int = DEFAULT_BEHAVIOR_CAP) -> FullBehavior:
    """Solve the stacked parity system of every constraint and state space."""
    labels = _global_labels(r)
    if len(labels) > cap:
        raise ValueError(f"behavior has {len(labels)} variables, cap is {cap}")
    field = r.field
    pos = {l: i for i, l in enumerate(labels)}
    blocks = []
    checked = list(r.constraints.values()) + list(r.state_spaces.values())
    for local in checked:
        h = parity_check(local)
        if h.rows == 0:
            continue
        rows = np.zeros((h.rows, len(labels)), dtype=np.int64)
        for j, l in enumerate(local.labels):
            rows[:, pos[l]] = h.array[:, j]
        blocks.append(rows)
    if blocks:
        stacked = FqMatrix(field, np.vstack(blocks))
        basis = nullspace(stacked)
    else:
        basis = FqMatrix.identity(field, len(labels))
    return FullBehavior(r, labels, row_basis(basis))


def restrict_behavior(b: FullBehavior, where: Iterable[int]) -> LinearCode:
    """Projection of the behavior row space onto a label subset."""
    pos = b.positions(where)
    sub_labels = tuple(b.labels[i] for i in pos)
    return LinearCode.from_generators(
        b.realization.field, sub_labels, b.basis.take_columns(pos)
    )


def realized_code(r: TreeRealization) -> LinearCode:
    return restrict_behavior(full_behavior(r), r.symbol_labels)


def _model_from_behavior(
    td: IndexTreeDecomposition,
    symbol_labels: tuple[int, ...],
    state_labels: dict[Edge, tuple[int, ...]],
    behavior_labels: tuple[int, ...],
    basis: FqMatrix,
    field,
) -> TreeRealization:
    """Essential model whose state spaces and constraints are projections."""
    pos = {l: i for i, l in enumerate(behavior_labels)}

    def proj(labels: Sequence[int]) -> LinearCode:
        cols = [pos[l] for l in labels]
        return LinearCode.from_generators(field, tuple(labels), basis.take_columns(cols))

    states = {e: proj(state_labels[e]) for e in td.tree.edges}
    constraints = {}
    for v in td.tree.vertices:
        local = [l for l in symbol_labels if td.omega[l] == v]
        for e in td.tree.edges:
            if v in e:
                local.extend(state_labels[e])
        constraints[v] = proj(local)
    return TreeRealization(td, symbol_labels, states, constraints)


def trivial_extension(c: LinearCode, td: IndexTreeDecomposition, root: int) -> TreeRealization:
    """Relay model: the whole code sits at `root`, states copy symbols outward.

    The state space of an edge is the full space on one fresh label per
    symbol on the far side of the edge; every non-root vertex forwards
    its subtree's symbols unchanged, and the root constraint is the code
    itself read through those copies.
    """
    tree = td.tree
    if root not in tree.vertices:
        raise ValueError(f"unknown root {root}")
    if set(td.omega) != set(c.labels):
        raise ValueError("decomposition must cover exactly the code's labels")

    # states carry copies of the symbols in the component away from the root
    carried: dict[Edge, tuple[int, ...]] = {}
    copy_label: dict[Edge, dict[int, int]] = {}
    states: dict[Edge, LinearCode] = {}
    for e in tree.edges:
        far = sorted(side_labels(td, e, away_from=_near_endpoint(tree, e, root)))
        names = fresh_labels(len(far))
        carried[e] = tuple(far)
        copy_label[e] = dict(zip(far, names))
        states[e] = LinearCode.full_space(c.field, names)

    constraints: dict[int, LinearCode] = {}
    for v in tree.vertices:
        own = [l for l in c.labels if td.omega[l] == v]
        incident = [e for e in tree.edges if v in e]
        local = list(own)
        for e in incident:
            local.extend(states[e].labels)
        if v == root:
            # rows = codewords of C expressed through symbols at root + copies
            rows = np.zeros((c.dim, len(local)), dtype=np.int64)
            colpos = {l: i for i, l in enumerate(local)}
            for j, l in enumerate(c.labels):
                if td.omega[l] == v:
                    rows[:, colpos[l]] = c.gen.array[:, j]
                for e in incident:
                    if l in copy_label[e]:
                        rows[:, colpos[copy_label[e][l]]] = c.gen.array[:, j]
            constraints[v] = LinearCode.from_generators(c.field, tuple(local), rows)
        else:
            # relay: the state toward the root repeats symbols here and the
            # states of the edges leading away from the root
            up = _edge_toward(tree, v, root)
            sources: dict[int, int] = {l: l for l in own}
            for e in incident:
                if e == up:
                    continue
                for l, name in copy_label[e].items():
                    sources[l] = name
            rows = np.zeros((len(carried[up]), len(local)), dtype=np.int64)
            colpos = {l: i for i, l in enumerate(local)}
            for i, l in enumerate(carried[up]):
                rows[i, colpos[copy_label[up][l]]] = 1
                rows[i, colpos[sources[l]]] = 1
            constraints[v] = LinearCode.from_generators(c.field, tuple(local), rows)

    return TreeRealization(td, tuple(c.labels), states, constraints)


def _near_endpoint(tree, e: Edge, root: int) -> int:
    """Endpoint of e on the root's side."""
    u, v = canonical_edge(*e)
    return u if root in tree.component(u, removed=(u, v)) else v


def _edge_toward(tree, v: int, root: int) -> Edge:
    """First edge on the path from v to the root."""
    path = tree.path_between(v, root)
    return canonical_edge(path[0], path[1])


def _complete_basis(partial: FqMatrix, spanning: FqMatrix) -> FqMatrix:
    """Extend independent rows to a basis of the span of `spanning`'s rows.

    Greedy over the spanning rows in order, so the completion is
    deterministic; `partial` rows stay on top.
    """
    rows = [partial.array[i] for i in range(partial.rows)]
    span = partial
    for i in range(spanning.rows):
        cand = spanning.array[i]
        trial = FqMatrix(partial.field, np.vstack([span.array, cand[None, :]]))
        if rank(trial) > span.rows:
            rows.append(cand)
            span = row_basis(trial)
    arr = np.array(rows, dtype=np.int64) if rows else np.zeros((0, partial.cols), dtype=np.int64)
    return FqMatrix(partial.field, arr)


def _vanishing_pair_code(c: LinearCode, j: frozenset, jbar: frozenset) -> LinearCode:
    """The subcode (cross-section on J) + (cross-section on Jbar), on all of I."""
    parts = []
    cj = cross_section(c, j)
    cjb = cross_section(c, jbar)
    if j:
        parts.append(cj)
    if jbar:
        parts.append(cjb)
    if not parts:
        return LinearCode.zero(c.field, c.labels)
    summed = direct_sum(parts) if len(parts) == 2 else parts[0]
    if set(summed.labels) != set(c.labels):
        raise AssertionError("partition does not cover the index set")
    return summed


def essentialize(r: TreeRealization, cap: int = DEFAULT_BEHAVIOR_CAP) -> TreeRealization:
    """Replace every state space and constraint by its behavior projection."""
    b = full_behavior(r, cap)
    state_labels = {e: tuple(r.state_spaces[e].labels) for e in r.td.tree.edges}
    return _model_from_behavior(r.td, r.symbol_labels, state_labels, b.labels, b.basis, r.field)


def is_essential(r: TreeRealization) -> bool:
    b = full_behavior(r)
    return all(
        restrict_behavior(b, s.labels) == s for s in r.state_spaces.values()
    )


def merge_at(r: TreeRealization, e_hat: Edge) -> TreeRealization:
    """Merge cosets of unobservable states at one edge.

    W collects the states of e_hat reachable by behaviors whose symbol
    part already splits across the edge (lies in the sum of the two
    cross-sections). States in the same W-coset are identified through
    a surjection onto a fresh full space of dimension dim(S) - dim(W);
    everything else is rebuilt as a projection of the mapped behavior.
    """
    e_hat = canonical_edge(*e_hat)
    if e_hat not in r.td.tree.edges:
        raise ValueError(f"{e_hat} is not a tree edge")
    b = full_behavior(r)
    s_hat = r.state_spaces[e_hat]
    if not is_essential(r):
        raise ValueError("merge requires an essential realization")

    code = restrict_behavior(b, r.symbol_labels)
    j, jbar, _, _ = split(r.td, e_hat)
    kernel_pair = _vanishing_pair_code(code, j, jbar)

    # behaviors whose symbol part lies in the split subcode
    h = parity_check(kernel_pair)
    pos_map = {l: i for i, l in enumerate(b.labels)}
    sym_pos = [pos_map[l] for l in kernel_pair.labels]
    cond = b.basis.take_columns(sym_pos) @ h.transpose()
    coeffs = nullspace(cond.transpose())
    w_rows = coeffs @ b.basis
    state_pos = b.positions(s_hat.labels)
    order = [b.labels[i] for i in state_pos]
    s_gen = s_hat.gen_in_order(order)
    w_basis = row_basis(w_rows.take_columns(state_pos))
    if not row_space_contains(s_gen, w_basis):
        raise AssertionError("merged subspace escapes the state space")

    # complete a basis of W to a basis of S and keep the quotient coordinates
    f_mat = _complete_basis(w_basis, s_gen)
    assert f_mat.rows == s_hat.dim
    d_prime = s_hat.dim - w_basis.rows
    r_inv = right_inverse(f_mat)
    quot = r_inv.take_columns(range(w_basis.rows, s_hat.dim))  # n_e x d'

    new_names = fresh_labels(d_prime)
    mapped = b.basis.array.astype(np.int64)
    keep_cols = [i for i in range(len(b.labels)) if i not in set(state_pos)]
    new_block = (b.basis.take_columns(state_pos) @ quot).array
    new_basis = np.hstack([mapped[:, keep_cols], new_block])
    new_labels = tuple(b.labels[i] for i in keep_cols) + new_names

    state_labels = {
        e: (new_names if e == e_hat else tuple(r.state_spaces[e].labels))
        for e in r.td.tree.edges
    }
    return _model_from_behavior(
        r.td, r.symbol_labels, state_labels, new_labels,
        FqMatrix(r.field, new_basis), r.field,
    )


def minimize_by_merging(
    r: TreeRealization, edge_order: Sequence[Edge] | None = None
) -> TreeRealization:
    """Essentialize, then merge once at every edge; the result is minimal."""
    current = essentialize(r)
    order = list(edge_order) if edge_order is not None else list(r.td.tree.edges)
    if sorted(canonical_edge(*e) for e in order) != list(r.td.tree.edges):
        raise ValueError("edge order must list every tree edge exactly once")
    for e in order:
        current = merge_at(current, e)
    return current


@dataclass(frozen=True)
class DimensionProfile:
    """Per-edge state dims and per-vertex constraint dims of a realization."""

    state_dims: tuple[tuple[Edge, int], ...]
    constraint_dims: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, r: TreeRealization) -> "DimensionProfile":
        return cls(
            tuple(sorted(r.state_dims().items())),
            tuple(sorted(r.constraint_dims().items())),
        )

    def dominates(self, other: "DimensionProfile") -> bool:
        """True if every dimension here is <= the matching one in other."""
        se, oe = dict(self.state_dims), dict(other.state_dims)
        sv, ov = dict(self.constraint_dims), dict(other.constraint_dims)
        return all(se[e] <= oe[e] for e in se) and all(sv[v] <= ov[v] for v in sv)


def minimal_state_dim(c: LinearCode, td: IndexTreeDecomposition, e: Edge) -> int:
    """State dimension of the minimal realization at e, via both rank forms."""
    j, jbar, _, _ = split(td, e)
    by_quotient = c.dim - cross_section(c, j).dim - cross_section(c, jbar).dim
    j_pos = c.label_positions(j)
    jb_pos = c.label_positions(jbar)
    by_ranks = (
        rank(c.gen.take_columns(j_pos)) + rank(c.gen.take_columns(jb_pos)) - c.dim
    )
    assert by_quotient == by_ranks
    return by_ranks


def minimal_constraint_dim(c: LinearCode, td: IndexTreeDecomposition, v: int) -> int:
    """Constraint dimension at v in the minimal realization."""
    total = c.dim
    for e in td.tree.edges:
        if v in e:
            away = side_labels(td, e, away_from=v)
            total -= cross_section(c, away).dim
    return total


def minimal_profile(c: LinearCode, td: IndexTreeDecomposition) -> DimensionProfile:
    return DimensionProfile(
        tuple(sorted((e, minimal_state_dim(c, td, e)) for e in td.tree.edges)),
        tuple(sorted((v, minimal_constraint_dim(c, td, v)) for v in td.tree.vertices)),
    )


def minimal_by_formula(
    c: LinearCode, td: IndexTreeDecomposition
) -> tuple[DimensionProfile, TreeRealization]:
    """Materialize the minimal realization from its closed-form state maps.

    For each edge the state map is any linear map on the code whose
    kernel is the sum of the two cross-sections across that edge; it is
    built by completing a kernel basis to a basis of the code and
    keeping the complementary coordinates.
    """
    if set(td.omega) != set(c.labels):
        raise ValueError("decomposition must cover exactly the code's labels")
    k = c.dim
    state_maps: dict[Edge, np.ndarray] = {}
    state_labels: dict[Edge, tuple[int, ...]] = {}
    for e in td.tree.edges:
        j, jbar, _, _ = split(td, e)
        kernel = _vanishing_pair_code(c, j, jbar)
        k_basis = kernel.gen_in_order(c.labels)
        f_mat = _complete_basis(row_basis(k_basis), c.gen)
        assert f_mat.rows == k
        t = k_basis.rows
        quot = right_inverse(f_mat).take_columns(range(t, k))  # n x (k - t)
        state_maps[e] = quot.array.astype(np.int64)
        state_labels[e] = fresh_labels(k - t)

    blocks = [c.gen.array.astype(np.int64)]
    for e in td.tree.edges:
        blocks.append((c.gen @ FqMatrix(c.field, state_maps[e])).array.astype(np.int64))
    basis = FqMatrix(c.field, np.hstack(blocks))
    labels = tuple(c.labels) + tuple(l for e in td.tree.edges for l in state_labels[e])
    real = _model_from_behavior(td, tuple(c.labels), state_labels, labels, basis, c.field)

    profile = minimal_profile(c, td)
    if DimensionProfile.of(real) != profile:
        raise AssertionError("materialized realization misses the closed-form dims")
    return profile, real


def zero_state_factorization(r: TreeRealization, require_equality: bool = False) -> bool:
    """Check that behaviors vanishing at an edge split across it.

    For every edge, the behaviors with zero state there must project
    into the sum of the two cross-sections of the realized code; with
    require_equality=True the projection must equal that sum, which
    characterizes minimal realizations.
    """
    b = full_behavior(r)
    code = restrict_behavior(b, r.symbol_labels)
    sym_pos = b.positions(r.symbol_labels)
    for e in r.td.tree.edges:
        state_pos = b.positions(r.state_spaces[e].labels)
        sub = b.basis.take_columns(state_pos)
        coeffs = nullspace(sub.transpose())
        vanishing = coeffs @ b.basis
        proj = LinearCode.from_generators(
            r.field,
            tuple(b.labels[i] for i in sym_pos),
            vanishing.take_columns(sym_pos),
        )
        j, jbar, _, _ = split(r.td, e)
        target = _vanishing_pair_code(code, j, jbar)
        if not target.contains_code(proj):
            return False
        if require_equality and proj != target:
            return False
    return True


def realization_report(r: TreeRealization, expected: LinearCode | None = None) -> dict:
    """JSON-ready summary: dims, generators, omega, realized-code check."""
    b = full_behavior(r)
    realized = restrict_behavior(b, r.symbol_labels)
    report = {
        "q": r.field.q,
        "symbol_labels": list(r.symbol_labels),
        "omega": {str(l): v for l, v in sorted(r.td.omega.items())},
        "edges": [
            {
                "edge": list(e),
                "state_dim": r.state_spaces[e].dim,
                "state_labels": list(r.state_spaces[e].labels),
                "state_gen": r.state_spaces[e].gen.tolist(),
            }
            for e in r.td.tree.edges
        ],
        "vertices": [
            {
                "vertex": v,
                "constraint_dim": r.constraints[v].dim,
                "constraint_labels": list(r.constraints[v].labels),
                "constraint_gen": r.constraints[v].gen.tolist(),
            }
            for v in r.td.tree.vertices
        ],
        "behavior_dim": b.dim,
        "realized_dim": realized.dim,
    }
    if expected is not None:
        report["realizes_expected_code"] = bool(realized == expected)
    return report
