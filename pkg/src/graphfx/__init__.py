"""graphfx: a frontier-centric bulk-synchronous graph analytics engine.

Graphs live in CSR form; algorithms are sequences of bulk-synchronous
operator calls (advance / filter / segmented intersection / compute) over
explicit frontiers, with pluggable work partitioning, push/pull direction
switching, and a near/far priority queue.
"""
from .graph import (
    NO_PRED,
    UNVISITED,
    CooGraph,
    CsrGraph,
    GraphFormatError,
    assign_random_weights,
    coo_to_csr,
    csr_to_coo,
    csr_to_csc,
)
from .io import load_csr_cache, load_graph, load_matrix_market, save_csr_cache
from .generators import (
    generate_erdos_renyi,
    generate_rgg,
    generate_rmat,
    rgg_threshold_for_scale,
)
from .frontier import (
    Frontier,
    FrontierPair,
    StatusBitmap,
    generate_unvisited_frontier,
)
from .load_balance import (
    Chunk,
    LbParams,
    LoadBalancePlan,
    Strategy,
    build_plan,
    choose_strategy,
    compute_scan_offsets,
    plan_lb_input,
    plan_lb_output,
    plan_pairs,
    plan_thread_expand,
    plan_twc,
)
from .operators import (
    AdvanceKind,
    CullingConfig,
    FilterMode,
    FunctorSet,
    IntersectResult,
    advance,
    advance_filter_fused,
    atomic_add,
    atomic_min,
    compare_and_swap,
    compute,
    filter_frontier,
    pull_expand,
    segmented_intersect,
)
from .direction import (
    DirectionState,
    decide_direction,
    estimate_mf_mu,
    pull_step,
)
from .near_far import NearFarPile, advance_bucket, split
from .primitives import bc, bfs, cc, pagerank, sssp, tc
from .stats import RunStats, compute_mteps

__version__ = "0.1.0"
