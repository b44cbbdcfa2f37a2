"""Built-in verification suite: exact, seeded, desk-scale checks.

Each check pins one guarantee of the library: agreement of the three
minimal-realization constructions, exactness of the r-sum round trip,
monotonicity of state merging, width inequalities, DP-vs-brute-force
equivalence, the graph/code width correspondences, the width-gap
family, and decoder exactness. Same seed means byte-identical results;
wall-clock timings are kept out of the comparable payload.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .codes import LinearCode, fresh_labels, min_weight, project
from .decode import (
    ChannelObservation,
    brute_force_ml,
    complexity_profile,
    ml_decode,
)
from .gfq import GF2, GF3, FieldSpec
from .graphcodes import (
    Multigraph,
    cycle_graph,
    complete_graph,
    g_bar,
    gap_family_code,
    incidence_code,
    path_graph,
    star_graph,
    y_family,
)
from .minrealzn import min_realzn
from .realization import (
    DimensionProfile,
    essentialize,
    merge_at,
    minimal_by_formula,
    minimize_by_merging,
    minimal_profile,
    realized_code,
    trivial_extension,
    zero_state_factorization,
)
from .rsum import rsum_decompose, s_sum, verify_rsum_preconditions
from .sampling import (
    multigraph_on,
    random_code,
    random_connected_multigraph,
    random_decomposition,
    random_observation,
    random_subset,
    simple_graph_representatives,
)
from .trees import IndexTreeDecomposition, Tree, enumerate_cubic_decompositions
from .widths import (
    code_treewidth,
    graph_pathwidth,
    graph_pathwidth_definitional,
    graph_treewidth,
    graph_treewidth_definitional,
    kappa,
    sigma,
    subset_rank_table_for,
    trellis_widths,
    trellis_widths_exhaustive,
)

HAMMING_7_4 = [
    [1, 0, 0, 0, 0, 1, 1],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 1, 0],
    [0, 0, 0, 1, 1, 1, 1],
]


def _rng(seed: int, check_id: str) -> random.Random:
    return random.Random(f"{seed}:{check_id}")


def _fail(details: dict, key: str, payload) -> tuple[bool, dict]:
    details["first_failure"] = {key: payload}
    return False, details


# ---------------------------------------------------------------------------


def check_minimal_threeway_agreement(seed: int, trials: int = 100) -> tuple[bool, dict]:
    """Recursive splitting, closed-form dims, and merging build one realization."""
    rng = _rng(seed, "threeway")
    details = {"trials": trials}
    for t in range(trials):
        field = GF2 if rng.random() < 0.5 else GF3
        n = rng.randint(2, 12)
        k = rng.randint(1, min(n, 6))
        c = random_code(rng, field, n, k)
        td = random_decomposition(rng, c, rng.randint(1, 8))
        want = minimal_profile(c, td)

        built, _ = min_realzn(c, td)
        prof_formula, real_formula = minimal_by_formula(c, td)
        merged = None
        if n <= 10 and len(td.tree.vertices) <= 7:
            ext = trivial_extension(c, td, root=rng.choice(td.tree.vertices))
            merged = minimize_by_merging(ext)

        if DimensionProfile.of(built) != want or prof_formula != want:
            return _fail(details, "profile_mismatch", {"trial": t, "n": n, "k": k})
        if merged is not None and DimensionProfile.of(merged) != want:
            return _fail(details, "merge_profile_mismatch", {"trial": t})
        for real in filter(None, (built, real_formula, merged)):
            if realized_code(real) != c:
                return _fail(details, "realized_code_mismatch", {"trial": t})
    return True, details


def check_rsum_roundtrip(seed: int, trials: int = 200, subsets_per_side: int = 10) -> tuple[bool, dict]:
    """Splitting across any partition recomposes exactly, with all side identities."""
    rng = _rng(seed, "rsum")
    details = {"trials": trials}
    for t in range(trials):
        field = GF2 if rng.random() < 0.5 else GF3
        n = rng.randint(2, 12)
        k = rng.randint(1, min(n, 7))
        c = random_code(rng, field, n, k)
        j = random_subset(rng, c.labels)
        dec = rsum_decompose(c, j)
        if not verify_rsum_preconditions(dec):
            return _fail(details, "preconditions", {"trial": t})
        if dec.c1.dim + dec.c2.dim - dec.r != c.dim:
            return _fail(details, "dimension_identity", {"trial": t})
        if s_sum(dec.c1, dec.c2) != c:
            return _fail(details, "recomposition", {"trial": t})

        # connectivity-profile identities between each part and the whole
        i_all = set(c.labels)
        i1, i2 = set(dec.c1.labels), set(dec.c2.labels)
        for _ in range(subsets_per_side):
            j1 = random_subset(rng, sorted(dec.j_labels))
            lhs = project(dec.c1, j1).dim + project(dec.c1, i1 - j1).dim - dec.c1.dim
            rhs = project(c, j1).dim + project(c, i_all - j1).dim - c.dim
            if lhs != rhs:
                return _fail(details, "side_identity_j1", {"trial": t})
            j2 = random_subset(rng, sorted(dec.jbar_labels))
            lhs = project(dec.c2, j2).dim + project(dec.c2, i2 - j2).dim - dec.c2.dim
            rhs = project(c, j2).dim + project(c, i_all - j2).dim - c.dim
            if lhs != rhs:
                return _fail(details, "side_identity_j2", {"trial": t})
    return True, details


def check_merge_dominance(seed: int, trials: int = 30) -> tuple[bool, dict]:
    """Merging never increases a dimension and lands on the minimum."""
    rng = _rng(seed, "dominance")
    details = {"trials": trials}
    for t in range(trials):
        field = GF2 if rng.random() < 0.5 else GF3
        n = rng.randint(2, 9)
        k = rng.randint(1, min(n, 5))
        c = random_code(rng, field, n, k)
        td = random_decomposition(rng, c, rng.randint(1, 6))
        ext = trivial_extension(c, td, root=rng.choice(td.tree.vertices))
        want = minimal_profile(c, td)

        current = essentialize(ext)
        prev = DimensionProfile.of(current)
        if not prev.dominates(DimensionProfile.of(ext)):
            return _fail(details, "essentialize_grew", {"trial": t})
        edges = list(td.tree.edges)
        rng.shuffle(edges)
        for e in edges:
            current = merge_at(current, e)
            cur_prof = DimensionProfile.of(current)
            if not cur_prof.dominates(prev):
                return _fail(details, "merge_grew", {"trial": t, "edge": e})
            prev = cur_prof
        if prev != want:
            return _fail(details, "final_not_minimal", {"trial": t})
        if not want.dominates(DimensionProfile.of(ext)):
            return _fail(details, "minimal_not_dominating", {"trial": t})
    return True, details


def check_zero_state_factorization(seed: int, trials: int = 20) -> tuple[bool, dict]:
    """Behaviors vanishing at an edge split; with equality exactly at minimality."""
    rng = _rng(seed, "zerostate")
    details = {"trials": trials}
    for t in range(trials):
        field = GF2 if rng.random() < 0.5 else GF3
        n = rng.randint(2, 8)
        k = rng.randint(1, min(n, 4))
        c = random_code(rng, field, n, k)
        td = random_decomposition(rng, c, rng.randint(1, 5))
        ext = trivial_extension(c, td, root=rng.choice(td.tree.vertices))
        if not zero_state_factorization(ext):
            return _fail(details, "extension_containment", {"trial": t})
        if not zero_state_factorization(essentialize(ext)):
            return _fail(details, "essential_containment", {"trial": t})
        _, minimal = minimal_by_formula(c, td)
        if not zero_state_factorization(minimal, require_equality=True):
            return _fail(details, "minimal_equality", {"trial": t})
    return True, details


def _sandwich_codes(rng: random.Random) -> list[LinearCode]:
    named = [
        LinearCode.from_generators(GF2, fresh_labels(4), [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]),
        LinearCode.from_generators(GF2, fresh_labels(7), HAMMING_7_4),
        LinearCode.from_generators(GF2, fresh_labels(4), [[1, 1, 1, 1]]),
        LinearCode.full_space(GF2, fresh_labels(3)),
        incidence_code(cycle_graph(3), GF2),
    ]
    randoms = []
    for _ in range(12):
        field = GF2 if rng.random() < 0.5 else GF3
        n = rng.randint(2, 7)
        randoms.append(random_code(rng, field, n, rng.randint(1, min(n, 5))))
    return named + randoms


def check_width_sandwiches(seed: int) -> tuple[bool, dict]:
    """State/constraint width inequalities on every decomposition evaluated.

    On leaf-bijective cubic decompositions the constraint width is
    between the state width and twice it whenever the state width is
    positive; fully decomposable codes force state width 0, where the
    constraint width can still be 1 (never more).
    """
    rng = _rng(seed, "sandwich")
    codes = _sandwich_codes(rng)
    details = {"codes": len(codes), "cubic_decompositions": 0}
    for idx, c in enumerate(codes):
        if 2 <= c.length <= 7:
            for td in enumerate_cubic_decompositions(c.labels):
                s = sigma(c, td)
                kap = kappa(c, td)
                details["cubic_decompositions"] += 1
                if not (s <= kap <= max(2 * s, 1)):
                    return _fail(details, "cubic_sandwich", {"code": idx, "sigma": s, "kappa": kap})
        s_rep, k_rep = trellis_widths(c)
        if not (s_rep.value <= k_rep.value <= s_rep.value + 1):
            return _fail(details, "trellis_sandwich", {"code": idx})
        if c.dim >= 1:
            d = min_weight(c)
            if s_rep.value < (c.dim / c.length) * (d - 1) - 1e-12:
                return _fail(details, "rate_distance_bound", {"code": idx, "d": d})
    return True, details


def check_dp_vs_exhaustive(seed: int, trellis_trials: int = 25) -> tuple[bool, dict]:
    """Subset DPs agree with factorial/definitional search everywhere tested."""
    rng = _rng(seed, "dpx")
    details = {"trellis_trials": trellis_trials, "graph_classes": 0}
    for t in range(trellis_trials):
        field = GF2 if rng.random() < 0.5 else GF3
        n = rng.randint(1, 8)
        c = random_code(rng, field, n, rng.randint(1, min(n, 5)))
        s_rep, k_rep = trellis_widths(c)
        bs, bk = trellis_widths_exhaustive(c)
        if (s_rep.value, k_rep.value) != (bs, bk):
            return _fail(details, "trellis", {"trial": t, "dp": (s_rep.value, k_rep.value), "brute": (bs, bk)})

    for n in range(1, 6):
        for edges in simple_graph_representatives(n):
            g = multigraph_on(n, edges)
            details["graph_classes"] += 1
            tw_def, _ = graph_treewidth_definitional(g)
            pw_def, _ = graph_pathwidth_definitional(g)
            if graph_treewidth(g).value != tw_def:
                return _fail(details, "treewidth", {"n": n, "edges": edges})
            if graph_pathwidth(g).value != pw_def:
                return _fail(details, "pathwidth", {"n": n, "edges": edges})

    # multigraph spot checks: widths ignore loops and multiplicity
    for pairs in [((0, 1), (0, 1), (1, 1)), ((0, 1), (1, 2), (0, 2), (2, 2), (0, 1)), ((0, 0),)]:
        nv = max((v for p in pairs for v in p), default=0) + 1
        g = multigraph_on(nv, pairs)
        if graph_treewidth(g).value != graph_treewidth_definitional(g)[0]:
            return _fail(details, "multigraph_treewidth", {"pairs": pairs})
        if graph_pathwidth(g).value != graph_pathwidth_definitional(g)[0]:
            return _fail(details, "multigraph_pathwidth", {"pairs": pairs})
    return True, details


def _named_match_battery() -> list[tuple[str, Multigraph]]:
    return [
        ("P2", path_graph(2)),
        ("P3", path_graph(3)),
        ("P4", path_graph(4)),
        ("C3", cycle_graph(3)),
        ("C4", cycle_graph(4)),
        ("C5", cycle_graph(5)),
        ("K4", complete_graph(4)),
        ("K13", star_graph(3)),
    ]


def check_graph_code_treewidth_match(seed: int, random_graphs: int = 25) -> tuple[bool, dict]:
    """Graph treewidth equals the treewidth of the incidence code."""
    rng = _rng(seed, "twmatch")
    battery = _named_match_battery()
    for _ in range(random_graphs):
        battery.append(("random", random_connected_multigraph(rng, 6, 8)))
    details = {"graphs": len(battery), "fields": [2, 3]}
    for name, g in battery:
        gw = graph_treewidth(g).value
        for field in (GF2, GF3):
            cw = code_treewidth(incidence_code(g, field)).value
            if cw != gw:
                return _fail(details, "mismatch", {"graph": name, "q": field.q, "graph_width": gw, "code_width": cw})
    return True, details


def check_trellis_width_vs_pathwidth(seed: int) -> tuple[bool, dict]:
    """Trellis state width of the doubled-cover code is pathwidth plus one."""
    battery = [
        ("P2", path_graph(2)),
        ("P3", path_graph(3)),
        ("K13", star_graph(3)),
        ("triangle", cycle_graph(3)),
        ("C4", cycle_graph(4)),
    ]
    details = {"instances": []}
    for name, g in battery:
        cover = g_bar(g)
        code = incidence_code(cover, GF2)
        s_rep, _ = trellis_widths(code)
        pw = graph_pathwidth(g).value
        details["instances"].append({"graph": name, "n": code.length, "sigma_trellis": s_rep.value, "pathwidth": pw})
        if s_rep.value != pw + 1:
            return _fail(details, "mismatch", {"graph": name})
    return True, details


def check_gap_family(seed: int) -> tuple[bool, dict]:
    """Parameters, pathwidth growth, and the trellis-vs-tree width gap."""
    expected_params = {1: (14, 4, 4), 2: (38, 10, 4), 3: (86, 22, 4)}
    details = {"family": []}
    growth = []
    for i in (1, 2, 3):
        code, params = gap_family_code(i, GF2)
        n, k, d = params["n"], params["k"], params["d"]
        if (n, k, d) != expected_params[i]:
            return _fail(details, "parameters", {"i": i, "got": (n, k, d)})
        tree = y_family(i)
        pw = graph_pathwidth(tree).value
        if pw != math.ceil((i + 1) / 2):
            return _fail(details, "pathwidth", {"i": i, "got": pw})
        tw_cover = graph_treewidth(g_bar(tree)).value
        if tw_cover != 2:
            return _fail(details, "cover_treewidth", {"i": i, "got": tw_cover})
        # through the verified graph-code correspondence, the code's
        # treewidth is the cover's treewidth; through the verified
        # trellis-pathwidth correspondence, its trellis state width is
        # pathwidth + 1, so the constraint gap is at least pw - 1
        code_tw = tw_cover
        sigma_tr = pw + 1
        gap_lower = sigma_tr - code_tw
        expected_gap = math.ceil((i + 3) / 2) - 2
        if gap_lower != expected_gap:
            return _fail(details, "gap", {"i": i, "got": gap_lower, "want": expected_gap})
        growth.append({"i": i, "n": n, "k": k, "d": d, "pathwidth": pw,
                       "code_treewidth": code_tw, "sigma_trellis_lower": sigma_tr,
                       "gap_lower_bound": gap_lower, "method": "theorem-assisted"})
        details["family"] = growth
    if growth[1]["gap_lower_bound"] < 1:
        return _fail(details, "second_member_gap", growth[1])
    return True, details


def check_decode_oracle(seed: int, trials: int = 500) -> tuple[bool, dict]:
    """Message passing equals brute force, and the op model stays bounded."""
    rng = _rng(seed, "decode")
    details = {"trials": trials, "hamming_cases": 0, "profiled": 0}
    for t in range(trials):
        field = GF2 if rng.random() < 0.5 else GF3
        n = rng.randint(2, 7)
        c = random_code(rng, field, n, rng.randint(1, min(n, 4)))
        td = random_decomposition(rng, c, rng.randint(1, 5))
        _, real = minimal_by_formula(c, td)
        obs = random_observation(rng, field, c.labels)
        a = ml_decode(real, obs, expected=c)
        b = brute_force_ml(c, obs)
        if (a.cost, a.codeword) != (b.cost, b.codeword):
            return _fail(details, "oracle", {"trial": t})
        if (a.min_count, a.tie_broken) != (b.min_count, b.tie_broken):
            return _fail(details, "tie_count", {"trial": t})

    ham = LinearCode.from_generators(GF2, fresh_labels(7), HAMMING_7_4)
    td = random_decomposition(_rng(seed, "decode-ham"), ham, 3)
    _, real = minimal_by_formula(ham, td)
    from .codes import iter_codeword_chunks

    for chunk in iter_codeword_chunks(ham):
        for word in chunk:
            for flip in range(-1, 7):
                received = [int(x) for x in word]
                if flip >= 0:
                    received[flip] ^= 1
                obs = ChannelObservation.hamming_from_word(GF2, ham.labels, received)
                a = ml_decode(real, obs, expected=ham)
                b = brute_force_ml(ham, obs)
                details["hamming_cases"] += 1
                if (a.cost, a.codeword) != (b.cost, b.codeword):
                    return _fail(details, "hamming_oracle", {"word": received})
                if a.codeword != tuple(int(x) for x in word):
                    return _fail(details, "hamming_correction", {"word": received})

    # op model on cubic, leaf-bijective minimal realizations
    profile_rng = _rng(seed, "decode-profile")
    profile_codes = [incidence_code(cycle_graph(3), GF2), incidence_code(cycle_graph(3), GF3)]
    for _ in range(5):
        field = GF2 if profile_rng.random() < 0.5 else GF3
        n = profile_rng.randint(3, 6)
        profile_codes.append(random_code(profile_rng, field, n, profile_rng.randint(1, min(n, 4))))
    for c in profile_codes:
        witness = code_treewidth(c).witness_object
        _, real = minimal_by_formula(c, witness)
        prof = complexity_profile(real)
        details["profiled"] += 1
        if not prof["applies"]:
            return _fail(details, "profile_shape", {"n": c.length})
        if prof["constraint_complexity"] > code_treewidth(c).value:
            return _fail(details, "profile_width", {"n": c.length})
        bad = [r for r in prof["vertices"] if r.get("within_3qt") is False]
        if bad or prof["internal_total"] > prof["internal_total_bound"]:
            return _fail(details, "profile_bound", {"n": c.length})
    return True, details


# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    check_id: str
    title: str
    passed: bool
    details: dict
    elapsed: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.check_id}: {self.title} ({self.elapsed:.1f}s)"


@dataclass
class VerificationReport:
    seed: int
    results: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "seed": self.seed,
            "passed": self.passed,
            "checks": [
                {
                    "id": r.check_id,
                    "title": r.title,
                    "passed": r.passed,
                    "details": r.details,
                    **({"elapsed_s": round(r.elapsed, 3)} if include_timings else {}),
                }
                for r in self.results
            ],
        }
        return out

    def to_text(self) -> str:
        lines = [r.line() for r in self.results]
        status = "all checks passed" if self.passed else "SOME CHECKS FAILED"
        lines.append(f"{sum(r.passed for r in self.results)}/{len(self.results)} passed: {status}")
        return "\n".join(lines)


CHECKS: list[tuple[str, str, object]] = [
    ("minimal-threeway-agreement",
     "three independent minimal-realization constructions coincide and realize the code",
     check_minimal_threeway_agreement),
    ("rsum-roundtrip",
     "decompose/recompose is exact with all dimension and precondition identities",
     check_rsum_roundtrip),
    ("merge-dominance",
     "state merging is monotone and the minimum dominates every extension",
     check_merge_dominance),
    ("zero-state-factorization",
     "vanishing-state behaviors split across each edge; equality at minimality",
     check_zero_state_factorization),
    ("width-sandwiches",
     "state/constraint width inequalities and the rate-distance lower bound",
     check_width_sandwiches),
    ("dp-vs-exhaustive",
     "subset DPs match factorial and definitional searches",
     check_dp_vs_exhaustive),
    ("graph-code-treewidth-match",
     "graph treewidth equals incidence-code treewidth on the battery",
     check_graph_code_treewidth_match),
    ("trellis-width-vs-pathwidth",
     "trellis state width of doubled covers is graph pathwidth plus one",
     check_trellis_width_vs_pathwidth),
    ("gap-family-reproduction",
     "width-gap family: parameters, pathwidth growth, and the widening gap",
     check_gap_family),
    ("decode-oracle",
     "message passing equals brute-force decoding; op model within bounds",
     check_decode_oracle),
]


def run_suite(seed: int = 7, only: list[str] | None = None, threads: int = 1) -> VerificationReport:
    chosen = [c for c in CHECKS if only is None or c[0] in only]
    if only is not None:
        missing = set(only) - {c[0] for c in chosen}
        if missing:
            raise ValueError(f"unknown checks: {sorted(missing)}")

    def run_one(entry) -> CheckResult:
        check_id, title, fn = entry
        start = time.perf_counter()
        passed, details = fn(seed)
        return CheckResult(check_id, title, passed, details, time.perf_counter() - start)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_one, chosen))
    else:
        results = [run_one(entry) for entry in chosen]
    return VerificationReport(seed, results)
