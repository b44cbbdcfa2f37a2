"""Figure rendering for reports: decompositions, graphs, growth tables.

Used by the CLI when a figure path is requested next to the JSON
output. Layouts are computed deterministically (layered for trees,
circular for multigraphs) so reruns redraw the same picture.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .graphcodes import Multigraph
from .realization import TreeRealization
from .trees import GraphTreeDecomposition, IndexTreeDecomposition


def _tree_layout(tree, root=None) -> dict[int, tuple[float, float]]:
    adj = tree.adjacency()
    if root is None:
        root = min(tree.vertices)
    pos: dict[int, tuple[float, float]] = {}
    next_x = [0.0]

    def place(v: int, depth: int, parent: int | None):
        kids = [w for w in adj[v] if w != parent]
        if not kids:
            pos[v] = (next_x[0], -float(depth))
            next_x[0] += 1.0
            return
        for w in kids:
            place(w, depth + 1, v)
        xs = [pos[w][0] for w in kids]
        pos[v] = (sum(xs) / len(xs), -float(depth))

    place(root, 0, None)
    return pos


def draw_decomposition(
    td: IndexTreeDecomposition,
    path: str,
    state_dims: dict | None = None,
    constraint_dims: dict | None = None,
    title: str = "",
) -> None:
    """Tree with square vertices, half-edge ticks per assigned label."""
    tree = td.tree
    pos = _tree_layout(tree)
    fig, ax = plt.subplots(figsize=(max(4, len(tree.vertices) * 0.9), 4))
    for u, v in tree.edges:
        (x1, y1), (x2, y2) = pos[u], pos[v]
        ax.plot([x1, x2], [y1, y2], color="0.3", zorder=1)
        if state_dims is not None:
            e = (min(u, v), max(u, v))
            ax.annotate(
                f"dim {state_dims.get(e, '?')}",
                ((x1 + x2) / 2, (y1 + y2) / 2),
                fontsize=8,
                color="tab:blue",
                ha="center",
            )
    for v in tree.vertices:
        x, y = pos[v]
        count = len(td.labels_at(v))
        for i in range(count):
            ax.plot([x, x + 0.12 + 0.07 * i], [y, y + 0.25], color="0.6", lw=0.8, zorder=0)
        label = str(v)
        if constraint_dims is not None:
            label += f"\n[{constraint_dims.get(v, '?')}]"
        ax.scatter([x], [y], marker="s", s=420, color="white", edgecolor="black", zorder=2)
        ax.annotate(label, (x, y), ha="center", va="center", fontsize=8, zorder=3)
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def draw_realization(r: TreeRealization, path: str, title: str = "") -> None:
    draw_decomposition(
        r.td, path, state_dims=r.state_dims(), constraint_dims=r.constraint_dims(), title=title
    )


def draw_multigraph(g: Multigraph, path: str, title: str = "") -> None:
    """Circular layout; parallel edges bow apart, loops draw as circles."""
    verts = sorted(g.vertices)
    n = len(verts)
    angle = {v: 2 * math.pi * i / max(n, 1) for i, v in enumerate(verts)}
    pos = {v: (math.cos(a), math.sin(a)) for v, a in angle.items()}
    fig, ax = plt.subplots(figsize=(5, 5))
    seen: dict[tuple[int, int], int] = {}
    for u, v, _ in g.edges:
        if u == v:
            x, y = pos[u]
            ax.add_patch(plt.Circle((x * 1.12, y * 1.12), 0.07, fill=False, color="0.4"))
            continue
        pair = (min(u, v), max(u, v))
        k = seen.get(pair, 0)
        seen[pair] = k + 1
        (x1, y1), (x2, y2) = pos[u], pos[v]
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        dx, dy = x2 - x1, y2 - y1
        norm = math.hypot(dx, dy) or 1.0
        off = 0.08 * ((k + 1) // 2) * (1 if k % 2 else -1)
        cx, cy = mx - dy / norm * off, my + dx / norm * off
        t = np.linspace(0, 1, 24)
        bx = (1 - t) ** 2 * x1 + 2 * (1 - t) * t * cx + t**2 * x2
        by = (1 - t) ** 2 * y1 + 2 * (1 - t) * t * cy + t**2 * y2
        ax.plot(bx, by, color="0.3", lw=1.0)
    for v in verts:
        x, y = pos[v]
        ax.scatter([x], [y], s=260, color="white", edgecolor="black", zorder=2)
        ax.annotate(str(v), (x, y), ha="center", va="center", fontsize=8, zorder=3)
    ax.set_xlim(-1.4, 1.4)
    ax.set_ylim(-1.4, 1.4)
    ax.set_aspect("equal")
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def draw_bag_decomposition(gtd: GraphTreeDecomposition, path: str, title: str = "") -> None:
    tree = gtd.tree
    pos = _tree_layout(tree)
    fig, ax = plt.subplots(figsize=(max(4, len(tree.vertices) * 1.1), 4))
    for u, v in tree.edges:
        (x1, y1), (x2, y2) = pos[u], pos[v]
        ax.plot([x1, x2], [y1, y2], color="0.3", zorder=1)
    for v in tree.vertices:
        x, y = pos[v]
        bag = ",".join(str(b) for b in sorted(gtd.beta[v]))
        ax.scatter([x], [y], marker="s", s=700, color="white", edgecolor="black", zorder=2)
        ax.annotate("{" + bag + "}", (x, y), ha="center", va="center", fontsize=7, zorder=3)
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def draw_width_report(report, path: str) -> None:
    """Dispatch on the witness shape stored in a width report."""
    obj = report.witness_object
    title = f"{report.measure} = {report.value} ({report.method})"
    if isinstance(obj, GraphTreeDecomposition):
        draw_bag_decomposition(obj, path, title)
    elif isinstance(obj, IndexTreeDecomposition):
        draw_decomposition(obj, path, title=title)
    else:
        fig, ax = plt.subplots(figsize=(4, 2))
        ax.text(0.5, 0.5, title, ha="center", va="center")
        ax.set_axis_off()
        fig.savefig(path, dpi=150)
        plt.close(fig)


def draw_growth_table(rows: list[dict], path: str, title: str = "") -> None:
    """Bar chart of per-index values, e.g. width gaps across a family."""
    fig, ax = plt.subplots(figsize=(5, 3))
    xs = [r["i"] for r in rows]
    keys = [k for k in rows[0] if k != "i"]
    width = 0.8 / len(keys)
    for j, key in enumerate(keys):
        ax.bar([x + j * width for x in xs], [r[key] for r in rows], width=width, label=key)
    ax.set_xticks([x + 0.4 - width / 2 for x in xs])
    ax.set_xticklabels([str(x) for x in xs])
    ax.set_xlabel("family index")
    ax.legend(fontsize=8)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
