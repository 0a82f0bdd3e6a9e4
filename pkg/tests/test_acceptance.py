"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from grovertrap import families, rational
from grovertrap.attractors import attractor_space_dimension, check_common_eigenstate
from grovertrap.cycles import spanning_tree
from grovertrap.graph import StructureGraph, WalkInstance, load_instance, relabel_instance
from grovertrap.simulator import maximally_mixed, simulate
from grovertrap.transport import PureState, atp, average_atp, closed_form, projector
from grovertrap.trapped import (
    expected_dimension,
    null_space_oracle,
    reduce_by_sink,
    same_subspace,
    sr_trapped_basis,
    trapped_basis,
)

from .conftest import C4, TRIANGLE, random_connected_graph

F = Fraction


@pytest.fixture
def report(capsys):
    def emit(number: int, passed: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if passed else 'FAIL'} {detail}".rstrip())

    return emit


def q_bar(inst: WalkInstance) -> Fraction:
    return average_atp(projector(sr_trapped_basis(inst), inst.dim), inst.initial)


# ---------------------------------------------------------------- criterion 1


def _closed_form_cases():
    cases = [(families.multi_loop(n), closed_form("multi_loop", n=n)) for n in range(2, 9)]
    cases.append((families.multi_loop(3), F(2, 3)))
    cases += [
        (families.star(3, 1, "single"), F(5, 6)),
        (families.star(4, 2, "single"), F(13, 15)),
        (families.star(4, 1, "full"), F(5, 6)),
    ]
    cases += [(families.star(n, 0, "full"), F(2, n)) for n in range(3, 9)]
    literal = {"minimal_a": F(7, 8), "minimal_b": F(11, 12), "minimal_c": F(1, 2), "minimal_d": F(9, 10)}
    for fam, value in literal.items():
        cases.append((families.generate(fam, L=0), value))
        cases += [(families.generate(fam, L=L), closed_form(fam, L=L)) for L in range(1, 6)]
    cases.append((families.hollow_prism(3, 2), F(65, 72)))
    cases += [(families.hollow_prism(3, H), 1 - F(1, 6) * (F(1, H + 1) + F(1, H + 2))) for H in range(3, 7)]
    return cases


def test_criterion_1_closed_forms(report):
    bad, slowest = [], 0.0
    for inst, expected in _closed_form_cases():
        t0 = time.perf_counter()
        got = q_bar(inst)
        elapsed = time.perf_counter() - t0
        slowest = max(slowest, elapsed)
        if got != expected or elapsed >= 1.0:
            bad.append(f"{inst.name}: {got} vs {expected} ({elapsed:.2f}s)")
    report(1, not bad, f"{len(_closed_form_cases())} cases, slowest {slowest:.3f}s {bad}")
    assert not bad


# ---------------------------------------------------------------- criterion 2


def test_criterion_2_no_overlap(report):
    rng = random.Random(2)
    failures = []
    for bridge, tail in [(0, 1), (1, 2), (3, 1), (2, 4)]:
        inst = families.no_trapping(bridge=bridge, tail=tail)
        P = projector(sr_trapped_basis(inst), inst.dim)
        for _ in range(25):
            psi = [F(0)] * inst.dim
            while not any(psi):
                for e in inst.initial:
                    psi[e] = F(rng.randint(-9, 9), rng.randint(1, 9))
            if atp(P, PureState(tuple(psi))) != 1:
                failures.append((inst.name, psi))
    odd = q_bar(families.no_trapping(odd=True))
    ok = not failures and odd < 1
    report(2, ok, f"100 random initial states all q=1: {not failures}; triangle variant q={odd}")
    assert not failures
    assert odd < 1


# ---------------------------------------------------------------- criterion 3


def test_criterion_3_completeness(report):
    rng = random.Random(3)
    t0 = time.perf_counter()
    bad = []
    n_graphs = 500
    for _ in range(n_graphs):
        g = random_connected_graph(rng, max_vertices=8, max_loops=3)
        basis = trapped_basis(g)
        dim = 2 * len(g.edges) + g.n_loops
        if rational.rank([s.vector(dim) for s in basis]) != expected_dimension(g) or len(basis) != expected_dimension(g):
            bad.append(("rank", g))
        elif not same_subspace(basis, null_space_oracle(g), dim):
            bad.append(("span", g))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120
    report(3, ok, f"{n_graphs} graphs, {len(bad)} mismatches, {elapsed:.1f}s")
    assert not bad
    assert elapsed < 120


# ---------------------------------------------------------------- criterion 4


def _fixtures():
    out = [load_instance(Path(__file__).parent / "data" / "prism.json")]
    out += [families.multi_loop(n) for n in (2, 3, 5)]
    out += [families.star(n, L, mode) for n in (3, 4) for L in (0, 1, 2) for mode in ("full", "single")]
    out += [families.generate(f, L=L) for f in ("minimal_a", "minimal_b", "minimal_c", "minimal_d") for L in (0, 1, 3)]
    out += [families.hollow_prism(3, H) for H in (2, 3)] + [families.hollow_prism(4, 3), families.stacked_prism(3, 3)]
    out += [families.no_trapping(), families.no_trapping(odd=True)]
    out += [families.sink_placement(2, p) for p in families.SINK_PLACEMENTS]
    return out


def test_criterion_4_common_eigenstates(report):
    n_exhaustive = n_sampled = 0
    bad = []
    for inst in _fixtures():
        exhaustive = len(inst.graph.edges) <= 10
        mode = "exhaustive" if exhaustive else 200
        for k, s in enumerate(sr_trapped_basis(inst)):
            if not check_common_eigenstate(s, -1, inst, mode, seed=k):
                bad.append((inst.name, k))
        n_exhaustive += exhaustive
        n_sampled += not exhaustive
    report(4, not bad, f"{n_exhaustive} fixtures exhaustive, {n_sampled} sampled, failures {bad}")
    assert not bad


# ---------------------------------------------------------------- criterion 5


def test_criterion_5_dynamics(report):
    t0 = time.perf_counter()
    worst, bad = 0.0, []
    cases = [families.multi_loop(3), families.star(4, 1, "full"), families.minimal_c(1), families.hollow_prism(3, 2)]
    for inst in cases:
        expected = 1 - float(q_bar(inst))
        for pi in (0.2, 0.5, 0.8):
            traj = simulate(maximally_mixed(inst.dim, inst.initial), inst, pi, mode="exact", t_max=10_000)
            err = abs(traj.limit - expected)
            worst = max(worst, err)
            if err > 1e-3 or traj.steps > 10_000:
                bad.append((inst.name, pi, err))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    report(5, ok, f"max |Tr - (1-q)| = {worst:.2e}, {elapsed:.1f}s")
    assert not bad
    assert elapsed < 300


# ---------------------------------------------------------------- criterion 6


def test_criterion_6_attractor_dimension(report):
    graphs = {
        "triangle": TRIANGLE,
        "C4": C4,
        "star-with-loop": StructureGraph(4, ((0, 1), (0, 2), (0, 3)), {1: 1}),
    }
    results = {}
    for name, g in graphs.items():
        inst = WalkInstance(g, frozenset(), (0,))
        assert inst.dim <= 10
        rep = attractor_space_dimension(inst, tol=1e-8)
        results[name] = (rep.dims, rep.expected)
    bad = {k: v for k, v in results.items() if v[0] != v[1]}
    detail = "; ".join(f"{k}: numerical {d} vs p-attractors+identity {e}" for k, (d, e) in results.items())
    report(6, not bad, detail)
    assert not bad, f"attractor dimension differs from p-attractor count + 1 on {sorted(bad)}"


# ---------------------------------------------------------------- criterion 7


def _non_increasing(xs):
    return all(b <= a for a, b in zip(xs, xs[1:]))


def _increasing(xs):
    return all(b > a for a, b in zip(xs, xs[1:]))


def test_criterion_7_monotonicity(report):
    bad = []
    for L in range(6):
        for mode in ("full", "single"):
            seq = [q_bar(families.star(n, L, mode)) for n in range(3, 7)]
            if not _non_increasing(seq):
                bad.append(("star branches", mode, L, seq))
    for n in range(3, 7):
        seq = [q_bar(families.stacked_prism(n, H, sink_height=1)) for H in range(2, 6)]
        if not _non_increasing(seq):
            bad.append(("stacked layers", n, seq))
    for fam in ("minimal_a", "minimal_b", "minimal_c", "minimal_d"):
        seq = [q_bar(families.generate(fam, L=L)) for L in range(6)]
        if not _increasing(seq):
            bad.append((fam, seq))
    for n in range(3, 7):
        seq = [q_bar(families.hollow_prism(n, H)) for H in range(2, 6)]
        if not _increasing(seq):
            bad.append(("hollow H", n, seq))
    report(7, not bad, f"violations {bad}")
    assert not bad


# ---------------------------------------------------------------- criterion 8


def _alternative_projector(inst: WalkInstance):
    """Projector from trees that differ from the default one wherever the component has a cycle."""
    basis, n_cyclic, n_distinct = [], 0, 0
    for comp in reduce_by_sink(inst).components:
        g = comp.graph
        default = spanning_tree(g)
        tree = default
        for order in ("dfs", "bfs"):
            for root in range(g.n_vertices - 1, -1, -1):
                cand = spanning_tree(g, root=root, order=order)
                if cand.tree_edges != default.tree_edges:
                    tree = cand
                    break
            if tree is not default:
                break
        n_cyclic += len(g.edges) >= g.n_vertices  # a tree has exactly one spanning tree
        n_distinct += tree is not default
        basis += [s.remap(comp.directed_map) for s in trapped_basis(g, tree)]
    return projector(basis, inst.dim), n_cyclic, n_distinct


def test_criterion_8_structural_invariants(report):
    bad = []
    compared = 0
    for inst in _fixtures():
        default = projector(sr_trapped_basis(inst), inst.dim)
        alt, n_cyclic, n_distinct = _alternative_projector(inst)
        if alt != default:
            bad.append(("tree", inst.name))
        if n_distinct != n_cyclic:
            bad.append(("no second tree", inst.name))
        compared += n_distinct > 0
    for L in range(5):
        variants = [families.sink_placement(L, p) for p in families.SINK_PLACEMENTS]
        shared = range(variants[0].dim - 2)  # every id but the sink edge pair
        Ps = [projector(sr_trapped_basis(v), v.dim).restrict(shared) for v in variants]
        if not Ps[0] == Ps[1] == Ps[2]:
            bad.append(("sink placement", L))
    rng = random.Random(8)
    for inst in _fixtures():
        base = q_bar(inst)
        for _ in range(2):
            perm = list(range(inst.graph.n_vertices))
            rng.shuffle(perm)
            moved, _ = relabel_instance(inst, perm)
            if q_bar(moved) != base:
                bad.append(("relabel", inst.name, perm))
    report(8, not bad, f"{compared} fixtures with distinct trees; violations {bad}")
    assert not bad
