"""Construction of trapped states at eigenvalue -1.

Every common eigenstate of the percolated flip-flop Grover walk has
equal amplitudes on the two directed edges of a pair and sums to zero
(eigenvalue -1) or is constant (eigenvalue +1) inside each vertex.  The
-1 states are built from fundamental cycles and unpaired loops:

* an even cycle carries alternating +-1 (type A);
* two termination elements (odd cycles or loops) joined by a tree path
  carry a connecting state (types B, C, D).

All amplitudes are exact rationals.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import rational
from .cycles import FundamentalCycle, SpanningTree, fundamental_cycles, is_bipartite, spanning_tree
from .graph import StateGraph, StructureGraph, WalkInstance, build_state_graph

log = logging.getLogger(__name__)


class DegenerateStateError(ValueError):
    """A connecting construction cancelled to the zero vector."""


class BasisFallbackWarning(RuntimeWarning):
    """The constructive basis was rank deficient; the oracle basis was used."""


@dataclass(frozen=True)
class TrappedState:
    amplitudes: dict[int, Fraction]  # directed edge id -> amplitude, zeros omitted
    kind: str  # "A", "B", "C", "D", "oracle", "ones"

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.amplitudes)

    def vector(self, dim: int) -> list[Fraction]:
        v = [Fraction(0)] * dim
        for e, a in self.amplitudes.items():
            v[e] = a
        return v

    def norm_squared(self) -> Fraction:
        return sum((a * a for a in self.amplitudes.values()), Fraction(0))

    def remap(self, mapping: Sequence[int]) -> "TrappedState":
        return TrappedState({mapping[e]: a for e, a in self.amplitudes.items()}, self.kind)

    @classmethod
    def from_vector(cls, vec: Sequence, kind: str) -> "TrappedState":
        return cls({e: Fraction(a) for e, a in enumerate(vec) if a != 0}, kind)


def _accumulate(acc: dict[int, Fraction], e: int, value: Fraction) -> None:
    s = acc.get(e, Fraction(0)) + value
    if s == 0:
        acc.pop(e, None)
    else:
        acc[e] = s


def _put_undirected(acc: dict[int, Fraction], edge: int, value: Fraction) -> None:
    # both directed edges of an undirected edge carry the same amplitude
    _accumulate(acc, 2 * edge, value)
    _accumulate(acc, 2 * edge + 1, value)


# --------------------------------------------------------------------- reduction


@dataclass(frozen=True)
class Component:
    """A connected piece of the sink-reduced graph with maps back to the original."""

    graph: StructureGraph
    vertex_map: tuple[int, ...]  # local vertex -> original vertex
    edge_map: tuple[int, ...]  # local undirected edge -> original undirected edge
    directed_map: tuple[int, ...]  # local directed id -> original directed id


@dataclass(frozen=True)
class ReducedGraph:
    components: tuple[Component, ...] = field(default_factory=tuple)


def reduce_by_sink(inst: WalkInstance) -> ReducedGraph:
    """Drop sink vertices and their edges; split what remains into components."""
    g = inst.graph
    full = inst.state_graph
    keep = [v for v in g.vertices if v not in inst.sink]
    adj: dict[int, list[int]] = {v: [] for v in keep}
    kept_edges = [i for i, (u, v) in enumerate(g.edges) if u not in inst.sink and v not in inst.sink]
    for i in kept_edges:
        u, v = g.edges[i]
        adj[u].append(v)
        adj[v].append(u)
    seen: set[int] = set()
    components = []
    for start in keep:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        verts = sorted(comp)
        local = {v: k for k, v in enumerate(verts)}
        edges = [i for i in kept_edges if g.edges[i][0] in comp]
        loops = {local[v]: k for v, k in g.loops.items() if v in comp}
        sub = StructureGraph(len(verts), tuple((local[g.edges[i][0]], local[g.edges[i][1]]) for i in edges), loops)
        dmap = [d for i in edges for d in (2 * i, 2 * i + 1)]
        for v, _k in sorted(g.loops.items()):
            if v in comp:
                dmap.extend(e for e in full.vertex_edges(v) if full.directed_edges[e].is_loop)
        components.append(Component(sub, tuple(verts), tuple(edges), tuple(dmap)))
    return ReducedGraph(tuple(components))


def expected_dimension(g0: StructureGraph) -> int:
    """Dimension of the -1 common eigenspace of a connected graph."""
    n = len(g0.edges) - g0.n_vertices + g0.n_loops
    if g0.n_loops == 0 and is_bipartite(g0):
        n += 1
    return max(n, 0)


# ------------------------------------------------------------------ construction


@dataclass(frozen=True)
class TerminationElement:
    kind: str  # "loop" or "odd_cycle"
    anchor: int
    loop_edge: int | None = None  # directed id, for loops
    cycle: FundamentalCycle | None = None

    @property
    def defect(self) -> int:
        # vertex sum left at the anchor by the element's own amplitudes
        return 1 if self.kind == "loop" else 2

    def sort_key(self) -> tuple:
        ident = self.loop_edge if self.kind == "loop" else self.cycle.recovered_edge
        return (self.anchor, 0 if self.kind == "loop" else 1, ident)


def termination_elements(
    g: StructureGraph, tree: SpanningTree, cycles: Sequence[FundamentalCycle] | None = None
) -> list[TerminationElement]:
    """Odd fundamental cycles and unpaired loops in canonical order."""
    if cycles is None:
        cycles = fundamental_cycles(g, tree)
    sg = build_state_graph(g)
    out = [TerminationElement("loop", sg.origin(e), loop_edge=e) for e in sg.loop_ids()]
    for c in cycles:
        if c.is_odd:
            u, v = g.edges[c.recovered_edge]
            out.append(TerminationElement("odd_cycle", tree.lca(u, v), cycle=c))
    out.sort(key=TerminationElement.sort_key)
    return out


def build_A_state(c: FundamentalCycle) -> TrappedState:
    if c.is_odd:
        raise ValueError(f"cycle through edge {c.recovered_edge} is odd; A-type states need an even cycle")
    amps: dict[int, Fraction] = {}
    for k, edge in enumerate(c.edges):
        _put_undirected(amps, edge, Fraction((-1) ** k))
    return TrappedState(amps, "A")


def _odd_cycle_amplitudes(c: FundamentalCycle, anchor: int) -> dict[int, Fraction]:
    """Alternating +-1 around the cycle, both edges at ``anchor`` set to +1."""
    n = c.length
    start = c.vertices.index(anchor)
    amps: dict[int, Fraction] = {}
    for k in range(n):
        _put_undirected(amps, c.edges[(start + k) % n], Fraction((-1) ** k))
    return amps


def _element_amplitudes(t: TerminationElement) -> dict[int, Fraction]:
    if t.kind == "loop":
        return {t.loop_edge: Fraction(1)}
    return _odd_cycle_amplitudes(t.cycle, t.anchor)


def build_connecting_state(
    t1: TerminationElement, t2: TerminationElement, tree: SpanningTree
) -> TrappedState:
    """Connect two termination elements along the tree path between their anchors.

    Loops get weight ``w``, path edges alternate ``-+w`` and odd-cycle edges
    alternate ``+-w/2``, with ``w = 1`` for two loops and ``w = 2`` otherwise.
    Overlapping contributions are summed.
    """
    if t1 == t2:
        raise ValueError("termination elements must differ")
    w = Fraction(1) if t1.kind == t2.kind == "loop" else Fraction(2)
    _, path = tree.path(t1.anchor, t2.anchor)
    c1 = w / t1.defect
    # the path cancels the defect at the first anchor; its far end is then
    # balanced by the second element with the sign the path leaves behind
    far_sign = -1 if len(path) % 2 == 0 else 1
    c2 = far_sign * w / t2.defect
    amps: dict[int, Fraction] = {}
    for e, a in _element_amplitudes(t1).items():
        _accumulate(amps, e, c1 * a)
    for k, edge in enumerate(path):
        _put_undirected(amps, edge, -w * (-1) ** k)
    for e, a in _element_amplitudes(t2).items():
        _accumulate(amps, e, c2 * a)
    if not amps:
        raise DegenerateStateError(f"{t1.kind}@{t1.anchor} and {t2.kind}@{t2.anchor} cancel")
    kinds = {t1.kind, t2.kind}
    kind = "C" if kinds == {"loop"} else "B" if kinds == {"odd_cycle"} else "D"
    return TrappedState(amps, kind)


def trapped_basis(g0: StructureGraph, tree: SpanningTree | None = None) -> list[TrappedState]:
    """Basis of the -1 common eigenspace of a connected graph, in its own edge ids."""
    if tree is None:
        tree = spanning_tree(g0)
    cycles = fundamental_cycles(g0, tree)
    states = [build_A_state(c) for c in cycles if not c.is_odd]
    terms = termination_elements(g0, tree, cycles)
    degenerate = False
    if terms:
        ref = terms[0]
        for t in terms[1:]:
            try:
                states.append(build_connecting_state(ref, t, tree))
            except DegenerateStateError:
                degenerate = True
    dim = build_state_graph(g0).dim
    want = expected_dimension(g0)
    got = rational.rank([s.vector(dim) for s in states]) if states else 0
    if degenerate or got != want or len(states) != want:
        msg = f"constructed basis has rank {got} of {len(states)} states, expected {want}; using null-space oracle"
        log.warning(msg)
        warnings.warn(msg, BasisFallbackWarning, stacklevel=2)
        return null_space_oracle(g0)
    return states


def sr_trapped_basis(inst: WalkInstance, tree_order: str = "bfs") -> list[TrappedState]:
    """Sink-resistant trapped states of ``inst``, in the instance's directed ids."""
    out = []
    for comp in reduce_by_sink(inst).components:
        tree = spanning_tree(comp.graph, order=tree_order)
        out.extend(s.remap(comp.directed_map) for s in trapped_basis(comp.graph, tree))
    return out


def sr_dimension(inst: WalkInstance) -> int:
    return sum(expected_dimension(c.graph) for c in reduce_by_sink(inst).components)


def all_ones_state(sg: StateGraph) -> TrappedState:
    """The unique +1 common eigenstate.  It always touches the sink."""
    return TrappedState({e: Fraction(1) for e in range(sg.dim)}, "ones")


# ------------------------------------------------------------------------ oracle


def eigen_conditions(sg: StateGraph) -> list[list[Fraction]]:
    """Rows of the linear system: vertex sums zero, and paired amplitudes equal."""
    rows = []
    for v in range(sg.n_vertices):
        edges = set(sg.vertex_edges(v))
        if edges:
            rows.append([Fraction(int(e in edges)) for e in range(sg.dim)])
    for a, b in sg.pairs():
        row = [Fraction(0)] * sg.dim
        row[a], row[b] = Fraction(1), Fraction(-1)
        rows.append(row)
    return rows


def null_space_oracle(g0: StructureGraph) -> list[TrappedState]:
    """Exact basis of the -1 common eigenspace, by solving the linear system directly."""
    sg = build_state_graph(g0)
    return [TrappedState.from_vector(v, "oracle") for v in rational.nullspace(eigen_conditions(sg), sg.dim)]


def instance_oracle(inst: WalkInstance) -> list[TrappedState]:
    """Oracle for the whole instance: the same system plus zero amplitude on sink edges."""
    sg = inst.state_graph
    rows = eigen_conditions(sg)
    for e in inst.sink_edges():
        for x in {e, sg.partner(e)}:
            row = [Fraction(0)] * sg.dim
            row[x] = Fraction(1)
            rows.append(row)
    return [TrappedState.from_vector(v, "oracle") for v in rational.nullspace(rows, sg.dim)]


def same_subspace(a: Sequence[TrappedState], b: Sequence[TrappedState], dim: int) -> bool:
    return rational.same_span([s.vector(dim) for s in a], [s.vector(dim) for s in b])


def basis_to_json(states: Sequence[TrappedState]) -> list[dict]:
    return [
        {"kind": s.kind, "amplitudes": {str(e): str(a) for e, a in sorted(s.amplitudes.items())}}
        for s in states
    ]


def basis_from_json(doc: Sequence[dict]) -> list[TrappedState]:
    return [
        TrappedState({int(e): Fraction(a) for e, a in item["amplitudes"].items()}, item["kind"])
        for item in doc
    ]
