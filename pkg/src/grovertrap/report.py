"""End-to-end analysis and verification of a walk instance."""

from __future__ import annotations

import logging
from fractions import Fraction

import numpy as np

from .attractors import (
    ATTRACTOR_DIM_CAP,
    attractor_space_dimension,
    check_coin_condition,
    check_common_eigenstate,
    check_shift_condition,
)
from .graph import WalkInstance
from .simulator import EXACT_EDGE_CAP, maximally_mixed, simulate
from .trapped import basis_to_json, instance_oracle, reduce_by_sink, same_subspace, sr_trapped_basis
from .trapped import expected_dimension
from .transport import average_atp, projector

log = logging.getLogger(__name__)

EXHAUSTIVE_EDGE_LIMIT = 10
SAMPLED_CONFIGS = 200
SIMULATION_TOL = 1e-3


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def analyze(inst: WalkInstance) -> dict:
    """Trapped dimension, basis, projector rank and average transport probability."""
    basis = sr_trapped_basis(inst)
    P = projector(basis, inst.dim)
    q = average_atp(P, inst.initial)
    comps = reduce_by_sink(inst).components
    return {
        "name": inst.name,
        "dim": inst.dim,
        "components": [
            {"vertices": list(c.vertex_map), "expected_dim": expected_dimension(c.graph)} for c in comps
        ],
        "trapped_dim": len(basis),
        "projector_rank": P.rank,
        "atp": fraction_str(Fraction(q)),
        "atp_float": float(q),
        "basis": basis_to_json(basis),
    }


def _check(name: str, passed: bool, **details) -> dict:
    return {"name": name, "passed": bool(passed), **details}


def verify(
    inst: WalkInstance,
    exhaustive: bool = False,
    pi: float = 0.5,
    attractors: bool = False,
    seed: int = 0,
) -> dict:
    """Run every consistency check and collect a pass/fail report."""
    checks = []
    sg = inst.state_graph
    basis = sr_trapped_basis(inst)
    n_edges = len(inst.graph.edges)

    checks.append(_check("coin_condition", all(check_coin_condition(s, -1, sg) for s in basis)))
    checks.append(_check("shift_condition", all(check_shift_condition(s, sg) for s in basis)))
    mode = "exhaustive" if exhaustive or n_edges <= EXHAUSTIVE_EDGE_LIMIT else SAMPLED_CONFIGS
    checks.append(
        _check(
            "common_eigenstate",
            all(check_common_eigenstate(s, -1, inst, mode, seed) for s in basis),
            configurations=2**n_edges if mode == "exhaustive" else mode,
        )
    )
    sink_edges = set(inst.sink_edges())
    checks.append(_check("sink_free_support", all(not (s.support & sink_edges) for s in basis)))

    oracle = instance_oracle(inst)
    checks.append(
        _check(
            "oracle_span",
            same_subspace(basis, oracle, inst.dim),
            basis_rank=len(basis),
            oracle_rank=len(oracle),
        )
    )

    P = projector(basis, inst.dim)
    checks.append(_check("projector", P.is_symmetric() and P.is_idempotent() and all(
        P.matrix[e][e] == 0 for e in sink_edges
    ), rank=P.rank))
    q = average_atp(P, inst.initial)

    rho0 = maximally_mixed(inst.dim, inst.initial)
    mode_sim = "exact" if n_edges <= EXACT_EDGE_CAP else "mc"
    traj = simulate(rho0, inst, pi, mode=mode_sim, seed=seed)
    err = abs(traj.limit - (1 - float(q)))
    checks.append(
        _check(
            "simulation",
            err <= SIMULATION_TOL,
            mode=mode_sim,
            steps=traj.steps,
            trace_limit=traj.limit,
            expected=1 - float(q),
            residual=err,
        )
    )

    if attractors:
        free = WalkInstance(inst.graph, frozenset(), inst.initial, inst.name)
        if free.dim > ATTRACTOR_DIM_CAP:
            checks.append(_check("attractor_space", False, reason=f"dimension {free.dim} > {ATTRACTOR_DIM_CAP}"))
        else:
            rep = attractor_space_dimension(free)
            spectrum_ok = all(np.isclose(abs(z.imag), 0) and np.isclose(abs(z.real), 1) for z in rep.spectrum)
            checks.append(
                _check(
                    "attractor_space",
                    rep.matches and spectrum_ok,
                    numerical={str(k): v for k, v in rep.dims.items()},
                    p_attractors_plus_identity={str(k): v for k, v in rep.expected.items()},
                )
            )

    return {
        "name": inst.name,
        "atp": fraction_str(Fraction(q)),
        "atp_float": float(q),
        "trapped_dim": len(basis),
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
