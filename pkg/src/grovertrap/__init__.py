"""Trapped states and asymptotic transport of percolated flip-flop Grover walks."""

from .cycles import FundamentalCycle, SpanningTree, fundamental_cycles, is_bipartite, spanning_tree
from .families import generate
from .graph import (
    StateGraph,
    StructureGraph,
    WalkInstance,
    build_state_graph,
    load_instance,
    parse_instance,
    serialize_instance,
    validate,
)
from .report import analyze, verify
from .simulator import simulate
from .transport import Projector, atp, average_atp, closed_form, projector
from .trapped import (
    TrappedState,
    all_ones_state,
    expected_dimension,
    null_space_oracle,
    reduce_by_sink,
    sr_trapped_basis,
    trapped_basis,
)

__all__ = [
    "FundamentalCycle",
    "Projector",
    "SpanningTree",
    "StateGraph",
    "StructureGraph",
    "TrappedState",
    "WalkInstance",
    "all_ones_state",
    "analyze",
    "atp",
    "average_atp",
    "build_state_graph",
    "closed_form",
    "expected_dimension",
    "fundamental_cycles",
    "generate",
    "is_bipartite",
    "load_instance",
    "null_space_oracle",
    "parse_instance",
    "projector",
    "reduce_by_sink",
    "serialize_instance",
    "simulate",
    "spanning_tree",
    "sr_trapped_basis",
    "trapped_basis",
    "validate",
    "verify",
]
