"""Minimum flow decomposition toolkit for s-t DAG multigraphs."""
from .decompose import (
    Decomposition,
    DecompositionStats,
    IterationStats,
    Verdict,
    WeightedPath,
    greedy_decompose,
    mfd_lower_bound,
    parity_fix_decompose,
    verify,
)
from .errors import FlowDecError
from .exact import ExactResult, exact_mfd
from .graph import Edge, FlowNetwork, MultiDag, flow_subgraph, validate, yv_contract
from .minflow import BoundedFlowProblem, flow_width, parity_cover_flow, solve_min_flow, width
from .structure import (
    ParallelWidth,
    analyze_structure,
    d_minor_step,
    has_pc_minor,
    is_width_stable,
    make_chk,
    make_pc,
    parallel_width,
)

__version__ = "0.1.0"
