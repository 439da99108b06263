"""Local-optimality certificates, exact decoding and decomposition checks for Tanner codes."""

from .certify import CertificateReport, certify, min_cost_tree, relative_costs
from .channel import (
    ChannelSpec,
    LlrVector,
    llr_from_values,
    parse_channel_spec,
    transmit,
)
from .codefile import format_code_file, load_code, parse_code_file, save_code
from .codes import (
    InducedSubgraph,
    LocalCode,
    TannerCode,
    TannerGraph,
    relative_point,
)
from .covers import (
    CoverCheckReport,
    MCover,
    check_cover_optimality,
    cyclic_cover,
    lift,
    lift_llr,
    project_down,
    random_cover,
)
from .decoders import LpResult, MlResult, lp_decode, lp_unique_optimum, ml_decode
from .decomposition import (
    DecompositionReport,
    verify_codeword_expectation,
    verify_itree_expectation,
    verify_prefix_decomposition,
)
from .errors import BudgetError, InputError, SolverFault
from .generate import generate_code, random_regular_code
from .harness import ExperimentConfig, parse_omega, run_experiment
from .trees import (
    ITree,
    PathPrefixTree,
    WeightedTree,
    attach_weights,
    build_path_prefix_tree,
    count_i_trees,
    dump_tree,
    enumerate_i_trees,
    project,
    sample_i_tree,
)

__version__ = "0.1.0"
