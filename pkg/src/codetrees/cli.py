"""Command-line interface: file I/O, JSON reports, verification runner.

JSON is the machine-readable output; text is a rendering of the same
payload. Reports are deterministic for a fixed seed (timings are only
attached on request), and any report-producing subcommand can also
render a figure next to its output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .codes import (
    LinearCode,
    cross_section,
    direct_sum,
    dual,
    min_weight,
    project,
    read_code,
    write_code,
)
from .decode import brute_force_ml, complexity_profile, ml_decode, read_costs
from .gfq import FieldSpec
from .graphcodes import (
    g_bar,
    gap_family_code,
    incidence_code,
    read_graph,
    write_graph,
    y_family,
)
from .minrealzn import min_realzn
from .realization import (
    DimensionProfile,
    minimal_by_formula,
    minimize_by_merging,
    realization_report,
    trivial_extension,
)
from .rsum import rsum_decompose, s_sum
from .trees import read_tree_decomposition
from .verify import CHECKS, run_suite
from .widths import (
    code_branchwidth,
    code_treewidth,
    graph_pathwidth,
    graph_treewidth,
    trellis_widths,
)


def _emit(payload: dict, fmt: str, out: str | None = None) -> None:
    if fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = _render_text(payload) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _render_text(payload: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key in sorted(payload):
        val = payload[key]
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render_text(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(_render_text(item, indent + 1))
                lines.append(f"{pad}  -")
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(l for l in lines if l)


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_code(path: str) -> LinearCode:
    return read_code(Path(path).read_text())


def _load_decomposition(path: str, code: LinearCode):
    td = read_tree_decomposition(Path(path).read_text())
    if set(td.omega) != set(code.labels):
        raise ValueError("tree file does not cover the code's coordinate labels")
    return td


# ---------------------------------------------------------------------------


def _cmd_code(args) -> int:
    if args.action == "info":
        c = _load_code(args.code)
        payload = {"q": c.field.q, "n": c.length, "k": c.dim, "labels": list(c.labels)}
        if args.min_weight and c.dim >= 1:
            payload["d"] = min_weight(c, args.enum_bound)
        _emit(payload, args.format)
        return 0
    if args.action == "dual":
        c = _load_code(args.code)
        _write_or_print(write_code(dual(c)), args.out)
        return 0
    if args.action in ("project", "cross-section"):
        c = _load_code(args.code)
        op = project if args.action == "project" else cross_section
        result = op(c, args.labels)
        _write_or_print(write_code(result), args.out)
        return 0
    if args.action == "direct-sum":
        cs = [_load_code(p) for p in args.code]
        _write_or_print(write_code(direct_sum(cs)), args.out)
        return 0
    raise ValueError(f"unknown code action {args.action}")


def _cmd_rsum(args) -> int:
    if args.action == "decompose":
        c = _load_code(args.code)
        dec = rsum_decompose(c, args.labels)
        payload = {
            "r": dec.r,
            "q": c.field.q,
            "j_labels": sorted(dec.j_labels),
            "jbar_labels": sorted(dec.jbar_labels),
            "shared_labels": list(dec.delta.labels),
            "part1": {"labels": list(dec.c1.labels), "gen": dec.c1.gen.tolist(), "k": dec.c1.dim},
            "part2": {"labels": list(dec.c2.labels), "gen": dec.c2.gen.tolist(), "k": dec.c2.dim},
            "recomposes_exactly": bool(dec.recompose() == c),
        }
        _emit(payload, args.format, args.report)
        return 0
    if args.action == "compose":
        c1 = _load_code(args.c1)
        c2 = _load_code(args.c2)
        _write_or_print(write_code(s_sum(c1, c2)), args.out)
        return 0
    raise ValueError(f"unknown rsum action {args.action}")


def _cmd_realize(args) -> int:
    c = _load_code(args.code)
    td = _load_decomposition(args.tree, c)
    trace = None
    if args.method == "recursive":
        real, trace = min_realzn(c, td)
    elif args.method == "formula":
        _, real = minimal_by_formula(c, td)
    else:
        real = minimize_by_merging(trivial_extension(c, td, root=min(td.tree.vertices)))
    payload = realization_report(real, expected=c)
    payload["method"] = args.method
    profile = DimensionProfile.of(real)
    payload["state_dims"] = {f"{e[0]}-{e[1]}": d for e, d in profile.state_dims}
    payload["constraint_dims"] = {str(v): d for v, d in profile.constraint_dims}
    if trace is not None:
        payload["build_trace"] = trace.to_dict()
    _emit(payload, args.format, args.report)
    if args.figure:
        from . import viz

        viz.draw_realization(real, args.figure, title=f"minimal realization ({args.method})")
    return 0


def _cmd_width(args) -> int:
    if args.measure in ("tree", "branch", "trellis"):
        c = _load_code(args.code)
        if args.measure == "tree":
            reports = [code_treewidth(c, args.cubic_cap)]
        elif args.measure == "branch":
            reports = [code_branchwidth(c, args.cubic_cap)]
        else:
            reports = list(trellis_widths(c, args.subset_cap))
    else:
        g = read_graph(Path(args.graph).read_text())
        if args.measure == "graph-tree":
            reports = [graph_treewidth(g, args.graph_cap)]
        else:
            reports = [graph_pathwidth(g, args.graph_cap)]
    payload = {r.measure: r.to_dict() for r in reports}
    _emit(payload, args.format, args.report)
    if args.figure:
        from . import viz

        viz.draw_width_report(reports[0], args.figure)
    return 0


def _cmd_graph(args) -> int:
    if args.action == "code":
        g = read_graph(Path(args.graph).read_text())
        code = incidence_code(g, FieldSpec(args.q))
        _write_or_print(write_code(code), args.out)
        return 0
    if args.action == "bar":
        g = read_graph(Path(args.graph).read_text())
        result = g_bar(g)
        _write_or_print(write_graph(result), args.out)
        if args.figure:
            from . import viz

            viz.draw_multigraph(result, args.figure, title="doubled cover with apex")
        return 0
    if args.action == "yfamily":
        g = y_family(args.i)
        _write_or_print(write_graph(g), args.out)
        if args.figure:
            from . import viz

            viz.draw_multigraph(g, args.figure, title=f"branching tree {args.i}")
        return 0
    if args.action == "cor64":
        code, params = gap_family_code(args.i, FieldSpec(args.q))
        _emit(params, args.format)
        if args.out:
            Path(args.out).write_text(write_code(code))
        return 0
    raise ValueError(f"unknown graph action {args.action}")


def _cmd_decode(args) -> int:
    c = _load_code(args.code)
    td = _load_decomposition(args.tree, c)
    obs = read_costs(Path(args.costs).read_text(), c.field, c.labels)
    _, real = minimal_by_formula(c, td)
    result = ml_decode(real, obs, expected=c)
    payload = result.to_dict()
    payload["profile"] = complexity_profile(real)
    if args.check_brute_force:
        ref = brute_force_ml(c, obs)
        payload["matches_brute_force"] = bool(
            ref.cost == result.cost and ref.codeword == result.codeword
        )
    _emit(payload, args.format, args.report)
    return 0


def _cmd_verify(args) -> int:
    report = run_suite(seed=args.seed, only=args.only or None, threads=args.threads)
    if args.format == "json":
        text = json.dumps(report.to_dict(include_timings=args.timings), sort_keys=True, indent=2)
        sys.stdout.write(text + "\n")
    else:
        sys.stdout.write(report.to_text() + "\n")
    if args.out:
        Path(args.out).write_text(
            json.dumps(report.to_dict(include_timings=args.timings), sort_keys=True, indent=2) + "\n"
        )
    if args.figures:
        from . import viz

        figdir = Path(args.figures)
        figdir.mkdir(parents=True, exist_ok=True)
        rows = None
        for r in report.results:
            if r.check_id == "gap-family-reproduction" and r.passed:
                rows = [
                    {"i": row["i"], "pathwidth": row["pathwidth"],
                     "code_treewidth": row["code_treewidth"],
                     "gap_lower_bound": row["gap_lower_bound"]}
                    for row in r.details.get("family", [])
                ]
        if rows:
            viz.draw_growth_table(rows, str(figdir / "width_gap_growth.png"),
                                  title="trellis-vs-tree width gap across the family")
        _draw_suite_summary(report, str(figdir / "verification_summary.png"))
    return 0 if report.passed else 1


def _draw_suite_summary(report, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 0.45 * len(report.results) + 1))
    names = [r.check_id for r in report.results]
    vals = [1 if r.passed else 0 for r in report.results]
    colors = ["tab:green" if v else "tab:red" for v in vals]
    ax.barh(range(len(names)), [1] * len(names), color=colors, height=0.6)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=8)
    ax.set_xticks([])
    ax.invert_yaxis()
    ax.set_title(f"verification checks: {sum(vals)}/{len(vals)} passed", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codetrees",
        description="tree realizations, decompositions and width measures of linear codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, report=True, figure=False):
        p.add_argument("--format", choices=["json", "text"], default="json")
        if report:
            p.add_argument("--report", help="write the report to this path instead of stdout")
        if figure:
            p.add_argument("--figure", help="render a figure of the result to this file")

    p_code = sub.add_parser("code", help="inspect and transform code files")
    p_code.add_argument("action", choices=["info", "dual", "project", "cross-section", "direct-sum"])
    p_code.add_argument("--code", action="append", required=True, help="code file (repeatable for direct-sum)")
    p_code.add_argument("--labels", type=int, nargs="*", default=[], help="label subset for project/cross-section")
    p_code.add_argument("--min-weight", action="store_true")
    p_code.add_argument("--enum-bound", type=int, default=2**24)
    p_code.add_argument("--out")
    p_code.add_argument("--format", choices=["json", "text"], default="json")
    p_code.set_defaults(fn=_cmd_code_dispatch)

    p_rsum = sub.add_parser("rsum", help="split a code across a coordinate partition or recompose parts")
    p_rsum.add_argument("action", choices=["decompose", "compose"])
    p_rsum.add_argument("--code", help="code file (decompose)")
    p_rsum.add_argument("--labels", type=int, nargs="*", default=[], help="the J side of the partition")
    p_rsum.add_argument("--c1")
    p_rsum.add_argument("--c2")
    p_rsum.add_argument("--out")
    add_common(p_rsum)
    p_rsum.set_defaults(fn=_cmd_rsum)

    p_real = sub.add_parser("realize", help="build the minimal realization on a tree decomposition")
    p_real.add_argument("action", choices=["min"])
    p_real.add_argument("--code", required=True)
    p_real.add_argument("--tree", required=True)
    p_real.add_argument("--method", choices=["recursive", "formula", "merge"], default="recursive")
    add_common(p_real, figure=True)
    p_real.set_defaults(fn=_cmd_realize)

    p_width = sub.add_parser("width", help="exact width measures of codes and graphs")
    p_width.add_argument("measure", choices=["tree", "branch", "trellis", "graph-tree", "graph-path"])
    p_width.add_argument("--code")
    p_width.add_argument("--graph")
    p_width.add_argument("--cubic-cap", type=int, default=10)
    p_width.add_argument("--subset-cap", type=int, default=22)
    p_width.add_argument("--graph-cap", type=int, default=24)
    add_common(p_width, figure=True)
    p_width.set_defaults(fn=_cmd_width)

    p_graph = sub.add_parser("graph", help="incidence codes and the named graph families")
    p_graph.add_argument("action", choices=["code", "bar", "yfamily", "cor64"])
    p_graph.add_argument("--graph")
    p_graph.add_argument("--q", type=int, default=2)
    p_graph.add_argument("--i", type=int, default=1)
    p_graph.add_argument("--out")
    p_graph.add_argument("--figure")
    p_graph.add_argument("--format", choices=["json", "text"], default="json")
    p_graph.set_defaults(fn=_cmd_graph)

    p_dec = sub.add_parser("decode", help="exact min-cost decoding on the minimal realization")
    p_dec.add_argument("--code", required=True)
    p_dec.add_argument("--tree", required=True)
    p_dec.add_argument("--costs", required=True)
    p_dec.add_argument("--check-brute-force", action="store_true")
    add_common(p_dec)
    p_dec.set_defaults(fn=_cmd_decode)

    p_ver = sub.add_parser("verify-paper", help="run the built-in exact verification suite")
    p_ver.add_argument("--seed", type=int, default=7)
    p_ver.add_argument("--only", nargs="*", choices=[c[0] for c in CHECKS])
    p_ver.add_argument("--threads", type=int, default=1)
    p_ver.add_argument("--format", choices=["json", "text"], default="text")
    p_ver.add_argument("--out", help="also write the JSON report here")
    p_ver.add_argument("--figures", help="directory for summary figures")
    p_ver.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON")
    p_ver.set_defaults(fn=_cmd_verify)

    return parser


def _cmd_code_dispatch(args) -> int:
    if args.action == "direct-sum":
        return _cmd_code(args)
    if len(args.code) != 1:
        raise ValueError("exactly one --code expected for this action")
    single = argparse.Namespace(**vars(args))
    single.code = args.code[0]
    return _cmd_code(single)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError, FileNotFoundError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
