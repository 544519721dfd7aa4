"""Push/pull direction switching for traversal primitives.

Rather than counting the exact edges hanging off the active and unvisited
frontiers (which would cost extra prefix-sum passes), both quantities are
estimated from the frontier sizes:

    m_f = n_f * m / n
    m_u = n_u * n / (n - n_u)

and the switch points are scaled by two tuning multipliers: push flips to
pull when ``m_f > m_u * do_a`` and pull flips back when
``m_f < m_u * do_b``. The unvisited count ``n_u`` is maintained by
subtracting the active frontier size every iteration, since the unvisited
frontier is not materialized during the push phase.

The m_u estimate is implemented exactly as stated above; its numerator
uses the vertex count, which makes it dimensionally unlike an edge count.
``mu_edge_based=True`` switches to the edge-count variant
``m_u = n_u * m / (n - n_u)`` for empirical comparison.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .frontier import Frontier
from .load_balance import LbParams, LoadBalancePlan, Strategy
from .operators import FunctorSet, pull_expand

PUSH = "push"
PULL = "pull"


@dataclass
class DirectionState:
    """Per-traversal switching state, owned by the primitive's loop."""

    n: int
    m: int
    mode: str = PUSH
    n_f: int = 0
    n_u: int = 0
    do_a: float = 0.001
    do_b: float = 0.2
    mu_edge_based: bool = False

    def __post_init__(self):
        if self.n_u == 0:
            self.n_u = self.n


def estimate_mf_mu(state: DirectionState) -> tuple[float, float]:
    """Estimated edges to check from the frontier and from the unvisited
    set. With every vertex unvisited the unvisited estimate is undefined;
    +inf is returned so pull can never win that iteration."""
    m_f = state.n_f * state.m / state.n
    if state.n_u >= state.n:
        return m_f, math.inf
    numerator = state.m if state.mu_edge_based else state.n
    m_u = state.n_u * numerator / (state.n - state.n_u)
    return m_f, m_u


def decide_direction(state: DirectionState) -> str:
    if state.do_a <= 0 or state.do_b <= 0:
        raise ValueError("do_a and do_b must be positive")
    m_f, m_u = estimate_mf_mu(state)
    if state.mode == PUSH:
        return PULL if m_f > m_u * state.do_a else PUSH
    return PUSH if m_f < m_u * state.do_b else PULL


def pull_step(
    g,
    unvisited: Frontier,
    functors: FunctorSet,
    data=None,
    strategy: Strategy = Strategy.AUTO,
    plan: LoadBalancePlan | None = None,
    params: LbParams | None = None,
    num_threads: int = 1,
) -> tuple[Frontier, Frontier]:
    """One reverse-advance step: partition the unvisited frontier into the
    vertices that just gained a cond-true in-neighbor (new active) and the
    rest (new unvisited)."""
    return pull_expand(
        g, unvisited, functors, data,
        strategy=strategy, plan=plan, params=params, num_threads=num_threads,
    )
