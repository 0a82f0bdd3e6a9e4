"""Structure graphs, state graphs and walk instances.

A structure graph is a simple undirected graph on vertices ``0..n-1``
plus a number of unpaired loops per vertex.  The state graph turns each
undirected edge ``i = (u, v)`` (``u < v``) into the directed pair

    ``2*i``     : u -> v
    ``2*i + 1`` : v -> u

and appends one self-paired directed edge per unpaired loop, ordered by
vertex and then loop index.  These ids index every vector and matrix in
the package.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping


@dataclass(frozen=True)
class Violation:
    kind: str  # parallel_edge | self_loop | disconnected | dangling_endpoint | ...
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


class ValidationError(ValueError):
    def __init__(self, violations: Iterable[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class ParseError(ValueError):
    """Malformed instance document.  ``field`` names the offending key."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = []
        if field is not None:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


@dataclass(frozen=True)
class StructureGraph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    loops: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(tuple(sorted(map(int, e))) for e in self.edges))
        object.__setattr__(
            self, "loops", {int(v): int(k) for v, k in sorted(self.loops.items()) if int(k) > 0}
        )

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    @property
    def n_loops(self) -> int:
        return sum(self.loops.values())

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per vertex, ``(neighbor, edge index)`` sorted by neighbor id."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
        for i, (u, v) in enumerate(self.edges):
            if u == v or not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                continue
            adj[u].append((v, i))
            adj[v].append((u, i))
        for row in adj:
            row.sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges) + self.loops.get(v, 0)

    def relabel(self, perm: Mapping[int, int] | list[int]) -> "StructureGraph":
        """Apply the vertex map ``v -> perm[v]``; edge order is kept."""
        return StructureGraph(
            self.n_vertices,
            tuple((perm[u], perm[v]) for u, v in self.edges),
            {perm[v]: k for v, k in self.loops.items()},
        )


def validate(g: StructureGraph) -> list[Violation]:
    """All simplicity/connectivity violations of ``g``; empty means valid."""
    out: list[Violation] = []
    if g.n_vertices < 1:
        out.append(Violation("empty", "graph has no vertices"))
        return out
    seen: set[tuple[int, int]] = set()
    for i, (u, v) in enumerate(g.edges):
        if not (0 <= u < g.n_vertices and 0 <= v < g.n_vertices):
            out.append(Violation("dangling_endpoint", f"edge {i} = ({u}, {v}) uses an unknown vertex"))
            continue
        if u == v:
            out.append(Violation("self_loop", f"edge {i} = ({u}, {v}) is an undirected self-loop"))
            continue
        if (u, v) in seen:
            out.append(Violation("parallel_edge", f"edge {i} = ({u}, {v}) repeats an earlier edge"))
        seen.add((u, v))
    for v, k in g.loops.items():
        if not 0 <= v < g.n_vertices:
            out.append(Violation("dangling_endpoint", f"{k} loop(s) on unknown vertex {v}"))
    reached = _reachable(g, 0)
    if len(reached) != g.n_vertices:
        missing = sorted(set(g.vertices) - reached)
        out.append(Violation("disconnected", f"vertices {missing} are not reachable from 0"))
    return out


def _reachable(g: StructureGraph, start: int) -> set[int]:
    adj = g.adjacency()
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w, _ in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


@dataclass(frozen=True)
class DirectedEdge:
    id: int
    origin: int
    target: int
    partner: int
    support: int | None  # undirected edge index, None for an unpaired loop

    @property
    def is_loop(self) -> bool:
        return self.support is None


@dataclass(frozen=True)
class StateGraph:
    n_vertices: int
    directed_edges: tuple[DirectedEdge, ...]
    vertex_subspaces: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.directed_edges)

    def partner(self, e: int) -> int:
        return self.directed_edges[e].partner

    def origin(self, e: int) -> int:
        return self.directed_edges[e].origin

    def pairs(self) -> list[tuple[int, int]]:
        """``(2i, 2i+1)`` for every undirected edge ``i``."""
        return [(d.id, d.partner) for d in self.directed_edges if d.support is not None and d.id < d.partner]

    def loop_ids(self) -> list[int]:
        return [d.id for d in self.directed_edges if d.is_loop]

    def vertex_edges(self, v: int) -> tuple[int, ...]:
        return self.vertex_subspaces[v]


def build_state_graph(g: StructureGraph) -> StateGraph:
    edges: list[DirectedEdge] = []
    for i, (u, v) in enumerate(g.edges):
        edges.append(DirectedEdge(2 * i, u, v, 2 * i + 1, i))
        edges.append(DirectedEdge(2 * i + 1, v, u, 2 * i, i))
    for v, k in sorted(g.loops.items()):
        for _ in range(k):
            eid = len(edges)
            edges.append(DirectedEdge(eid, v, v, eid, None))
    subspaces: list[list[tuple[tuple[int, int], int]]] = [[] for _ in range(g.n_vertices)]
    loop_counter: dict[int, int] = {}
    for d in edges:
        if d.is_loop:
            j = loop_counter.get(d.origin, 0)
            loop_counter[d.origin] = j + 1
            key = (1, j)
        else:
            key = (0, d.target)
        subspaces[d.origin].append((key, d.id))
    return StateGraph(
        g.n_vertices,
        tuple(edges),
        tuple(tuple(eid for _, eid in sorted(row)) for row in subspaces),
    )


@dataclass(frozen=True)
class WalkInstance:
    graph: StructureGraph
    sink: frozenset[int]
    initial: tuple[int, ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "sink", frozenset(int(v) for v in self.sink))
        object.__setattr__(self, "initial", tuple(int(e) for e in self.initial))

    @cached_property
    def state_graph(self) -> StateGraph:
        return build_state_graph(self.graph)

    @property
    def dim(self) -> int:
        return 2 * len(self.graph.edges) + self.graph.n_loops

    def sink_edges(self) -> list[int]:
        sg = self.state_graph
        return [e for v in sorted(self.sink) for e in sg.vertex_edges(v)]

    def problems(self) -> list[Violation]:
        out = validate(self.graph)
        sg = self.state_graph
        for v in sorted(self.sink):
            if not 0 <= v < self.graph.n_vertices:
                out.append(Violation("bad_sink", f"sink vertex {v} does not exist"))
        if not self.initial:
            out.append(Violation("empty_initial", "initial subspace is empty"))
        for e in self.initial:
            if not 0 <= e < sg.dim:
                out.append(Violation("bad_initial", f"directed edge {e} does not exist"))
            elif sg.origin(e) in self.sink:
                out.append(Violation("initial_in_sink", f"initial edge {e} starts at sink vertex {sg.origin(e)}"))
        if len(set(self.initial)) != len(self.initial):
            out.append(Violation("bad_initial", "initial edges repeat"))
        return out

    def check(self) -> "WalkInstance":
        problems = self.problems()
        if problems:
            raise ValidationError(problems)
        return self


def relabel_instance(inst: WalkInstance, perm: list[int]) -> tuple[WalkInstance, list[int]]:
    """Rename vertex ``v`` to ``perm[v]``.

    Returns the new instance and the map from old to new directed edge ids;
    edge order is kept, but a pair swaps ids when its endpoints swap order.
    """
    g = inst.graph
    new_g = g.relabel(perm)
    dmap = [0] * inst.dim
    for i, (u, v) in enumerate(g.edges):
        flip = perm[u] > perm[v]
        dmap[2 * i], dmap[2 * i + 1] = (2 * i + 1, 2 * i) if flip else (2 * i, 2 * i + 1)
    new_sg = build_state_graph(new_g)
    old_sg = inst.state_graph
    for v in g.vertices:
        old_loops = [e for e in old_sg.vertex_edges(v) if old_sg.directed_edges[e].is_loop]
        new_loops = [e for e in new_sg.vertex_edges(perm[v]) if new_sg.directed_edges[e].is_loop]
        for a, b in zip(old_loops, new_loops):
            dmap[a] = b
    new = WalkInstance(
        new_g,
        frozenset(perm[v] for v in inst.sink),
        tuple(dmap[e] for e in inst.initial),
        inst.name,
    )
    return new, dmap


def vertex_subspace(g: StructureGraph, v: int, exclude_to: Iterable[int] = ()) -> tuple[int, ...]:
    """Outgoing directed edges of ``v``, optionally skipping edges into ``exclude_to``."""
    sg = build_state_graph(g)
    skip = set(exclude_to)
    return tuple(e for e in sg.vertex_edges(v) if sg.directed_edges[e].is_loop or sg.directed_edges[e].target not in skip)


def parse_instance(text: bytes | str) -> WalkInstance:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")

    def need(key: str):
        if key not in doc:
            raise ParseError("missing required field", field=key)
        return doc[key]

    n = need("vertices")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("must be a positive integer", field="vertices")
    raw_edges = need("edges")
    if not isinstance(raw_edges, list):
        raise ParseError("must be a list of [u, v] pairs", field="edges")
    edges = []
    for k, e in enumerate(raw_edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise ParseError(f"entry {k} is not an integer pair", field="edges")
        edges.append((e[0], e[1]))
    raw_loops = doc.get("loops", {})
    if not isinstance(raw_loops, dict):
        raise ParseError("must map vertex ids to loop counts", field="loops")
    loops = {}
    for key, count in raw_loops.items():
        try:
            v = int(key)
        except ValueError:
            raise ParseError(f"vertex key {key!r} is not an integer", field="loops") from None
        if not isinstance(count, int) or count < 0:
            raise ParseError(f"loop count for {key!r} must be a non-negative integer", field="loops")
        loops[v] = count
    sink = doc.get("sink", [])
    if not (isinstance(sink, list) and all(isinstance(x, int) for x in sink)):
        raise ParseError("must be a list of vertex ids", field="sink")
    graph = StructureGraph(n, tuple(edges), loops)
    problems = validate(graph)
    if problems:
        raise ValidationError(problems)

    init = need("initial")
    if not isinstance(init, dict) or not ({"vertex", "edges"} & init.keys()):
        raise ParseError('must be {"vertex": v} or {"edges": [...]}', field="initial")
    if "edges" in init:
        initial = init["edges"]
        if not (isinstance(initial, list) and all(isinstance(x, int) for x in initial)):
            raise ParseError("must be a list of directed edge ids", field="initial.edges")
    else:
        v = init["vertex"]
        if not isinstance(v, int) or not 0 <= v < n:
            raise ParseError("must be an existing vertex id", field="initial.vertex")
        initial = list(build_state_graph(graph).vertex_edges(v))
    return WalkInstance(graph, frozenset(sink), tuple(initial), str(doc.get("name", ""))).check()


def instance_to_dict(inst: WalkInstance) -> dict:
    doc = {
        "vertices": inst.graph.n_vertices,
        "edges": [list(e) for e in inst.graph.edges],
        "loops": {str(v): k for v, k in inst.graph.loops.items()},
        "sink": sorted(inst.sink),
        "initial": {"edges": list(inst.initial)},
    }
    if inst.name:
        doc["name"] = inst.name
    return doc


def serialize_instance(inst: WalkInstance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2)


def load_instance(path) -> WalkInstance:
    with open(path, "rb") as fh:
        return parse_instance(fh.read())


def save_instance(inst: WalkInstance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_instance(inst))
        fh.write("\n")
