"""Exact tree realizations, decompositions and width measures of linear codes."""

from .codes import (
    LinearCode,
    cross_section,
    direct_sum,
    dual,
    fresh_labels,
    min_weight,
    project,
    read_code,
    write_code,
)
from .decode import ChannelObservation, DecodeResult, brute_force_ml, complexity_profile, ml_decode
from .gfq import GF2, GF3, FieldSpec, FqMatrix, nullspace, rank, row_space_equal, rref
from .graphcodes import Multigraph, g_bar, gap_family_code, incidence_code, read_graph, write_graph, y_family
from .minrealzn import BuildTrace, choose_edge, min_realzn, r_max_of
from .realization import (
    DimensionProfile,
    FullBehavior,
    TreeRealization,
    essentialize,
    full_behavior,
    merge_at,
    minimal_by_formula,
    minimize_by_merging,
    restrict_behavior,
    trivial_extension,
    zero_state_factorization,
)
from .rsum import RSumDecomposition, SimplexCode, build_simplex, rsum_decompose, s_sum, star_product, verify_rsum_preconditions
from .trees import (
    GraphTreeDecomposition,
    IndexTreeDecomposition,
    Tree,
    check_graph_decomposition,
    enumerate_cubic_decompositions,
    enumerate_path_decompositions,
    read_tree_decomposition,
    split,
    write_tree_decomposition,
)
from .verify import run_suite
from .widths import (
    WidthReport,
    code_branchwidth,
    code_treewidth,
    graph_pathwidth,
    graph_treewidth,
    kappa,
    sigma,
    trellis_widths,
)

__version__ = "0.1.0"
