"""Generators for the graph families used to study transport.

Every generator returns a validated :class:`WalkInstance` with its sink
and initial subspace already chosen.  Vertex numbering is documented per
family; the initial vertex is always vertex 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import StructureGraph, WalkInstance, vertex_subspace


def _instance(n, edges, loops, sink, initial_vertex=0, exclude_to=(), name=""):
    g = StructureGraph(n, tuple(edges), loops)
    initial = vertex_subspace(g, initial_vertex, exclude_to)
    return WalkInstance(g, frozenset(sink), initial, name).check()


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def multi_loop(n: int) -> WalkInstance:
    """Initial vertex 0 with ``n - 1`` unpaired loops, joined to sink vertex 1."""
    _need(n >= 2, "multi_loop needs n >= 2")
    return _instance(2, [(0, 1)], {0: n - 1}, {1}, name=f"multi_loop(n={n})")


def star(n: int, L: int, initial: str = "full") -> WalkInstance:
    """Root 0 with ``n`` branches of ``L`` vertices each.

    Branches ``0..n-2`` end in one unpaired loop (for ``L = 0`` the loop sits
    on the root).  The last branch ends in the sink and has at least one
    vertex.  ``initial="full"`` starts on every root edge, ``"single"`` only
    on the root edge into branch 0.
    """
    _need(n >= 3 and L >= 0, "star needs n >= 3 and L >= 0")
    _need(initial in ("full", "single"), "initial must be 'full' or 'single'")
    edges = []
    loops: dict[int, int] = {}
    nxt = 1
    for _ in range(n - 1):
        prev = 0
        for _ in range(L):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
        loops[prev] = loops.get(prev, 0) + 1
    prev = 0
    for _ in range(max(L, 1)):
        edges.append((prev, nxt))
        prev, nxt = nxt, nxt + 1
    g = StructureGraph(nxt, tuple(edges), loops)
    full = vertex_subspace(g, 0)
    if initial == "full":
        init = full
    else:
        # first root edge into branch 0, or the first root loop when L = 0
        init = (0,) if L > 0 else (2 * len(edges),)
    return WalkInstance(g, frozenset({prev}), init, f"star_{initial}(n={n},L={L})").check()


def minimal_a(L: int) -> WalkInstance:
    """Even cycle of length ``4 + 2L``; sink hangs off the vertex opposite 0."""
    _need(L >= 0, "L must be >= 0")
    m = 4 + 2 * L
    edges = [(i, (i + 1) % m) for i in range(m)]
    edges.append((m // 2, m))
    return _instance(m + 1, edges, {}, {m}, name=f"minimal_a(L={L})")


def _triangle_path(L: int) -> tuple[list[tuple[int, int]], int]:
    # triangle 0-1-2 with path 2 -> 3 -> ... -> 2+L; returns edges and path end
    edges = [(0, 1), (1, 2), (0, 2)]
    for k in range(L):
        edges.append((2 + k, 3 + k))
    return edges, 2 + L


def minimal_b(L: int) -> WalkInstance:
    """Two triangles joined by a path of ``L`` edges; sink hangs off the far triangle."""
    _need(L >= 0, "L must be >= 0")
    edges, end = _triangle_path(L)
    x, y = end + 1, end + 2
    edges += [(end, x), (x, y), (end, y), (y, y + 1)]
    return _instance(y + 2, edges, {}, {y + 1}, name=f"minimal_b(L={L})")


def minimal_c(L: int) -> WalkInstance:
    """Loops on both ends of a path with ``L`` edges; sink hangs off the far end.

    The initial subspace excludes the edge into the sink, which only matters
    for ``L = 0`` where both loops and the sink edge share vertex 0.
    """
    _need(L >= 0, "L must be >= 0")
    edges = [(k, k + 1) for k in range(L)]
    edges.append((L, L + 1))
    loops = {0: 2} if L == 0 else {0: 1, L: 1}
    return _instance(L + 2, edges, loops, {L + 1}, exclude_to={L + 1}, name=f"minimal_c(L={L})")


def minimal_d(L: int) -> WalkInstance:
    """Triangle and a loop joined by a path of ``L`` edges; sink hangs off the loop vertex."""
    _need(L >= 0, "L must be >= 0")
    edges, end = _triangle_path(L)
    edges.append((end, end + 1))
    return _instance(end + 2, edges, {end: 1}, {end + 1}, name=f"minimal_d(L={L})")


def _prism(n: int, H: int, stacked: bool, sink_height: int | None, sink_column: int):
    _need(n >= 3, "prism base needs n >= 3")
    _need(H >= 2, "prism height needs H >= 2")
    if sink_height is None:
        sink_height = H // 2
    _need(1 <= sink_height <= H - 1, "sink must sit strictly between the bases")
    _need(0 <= sink_column < n, "sink column out of range")
    vid = lambda level, i: level * n + i  # noqa: E731
    edges = []
    rings = range(H + 1) if stacked else (0, H)
    for level in rings:
        edges += [(vid(level, i), vid(level, (i + 1) % n)) for i in range(n)]
    for level in range(H):
        edges += [(vid(level, i), vid(level + 1, i)) for i in range(n)]
    kind = "stacked" if stacked else "hollow"
    return _instance(
        n * (H + 1),
        edges,
        {},
        {vid(sink_height, sink_column)},
        name=f"{kind}_prism(n={n},H={H},sink={sink_height})",
    )


def hollow_prism(n: int, H: int, sink_height: int | None = None, sink_column: int = 1) -> WalkInstance:
    """Two ``n``-cycles joined by ``n`` chains of ``H`` edges.

    Vertex ``level * n + i`` sits at height ``level`` in column ``i``.  The
    initial vertex is 0 in the bottom base; the sink is on the chain of
    ``sink_column`` at ``sink_height`` (default ``H // 2``).
    """
    return _prism(n, H, False, sink_height, sink_column)


def stacked_prism(n: int, H: int, sink_height: int | None = None, sink_column: int = 1) -> WalkInstance:
    """Hollow prism plus the ``H - 1`` inner rings; same numbering."""
    return _prism(n, H, True, sink_height, sink_column)


def no_trapping(odd: bool = False, bridge: int = 0, tail: int = 1) -> WalkInstance:
    """Triangle 0-1-2 holding the initial vertices 0 and 1, then a square to the sink.

    Vertex 2 of the triangle connects through ``bridge`` extra edges to a
    crossing vertex of a square (a triangle when ``odd``); the sink is
    reached from the opposite corner through ``tail >= 1`` edges.  The
    initial subspace is every edge out of vertices 0 and 1.
    """
    _need(bridge >= 0 and tail >= 1, "bridge >= 0 and tail >= 1 required")
    edges = [(0, 1), (1, 2), (0, 2)]
    nxt, prev = 3, 2
    for _ in range(bridge):
        edges.append((prev, nxt))
        prev, nxt = nxt, nxt + 1
    cross = prev
    if odd:
        a, b = nxt, nxt + 1
        edges += [(cross, a), (a, b), (cross, b)]
        far, nxt = a, nxt + 2
    else:
        a, b, c = nxt, nxt + 1, nxt + 2
        edges += [(cross, a), (a, b), (b, c), (cross, c)]
        far, nxt = b, nxt + 3
    prev = far
    for _ in range(tail):
        edges.append((prev, nxt))
        prev, nxt = nxt, nxt + 1
    g = StructureGraph(nxt, tuple(edges), {})
    init = vertex_subspace(g, 0) + vertex_subspace(g, 1)
    name = f"no_trapping(odd={odd},bridge={bridge},tail={tail})"
    return WalkInstance(g, frozenset({prev}), init, name).check()


SINK_PLACEMENTS = ("far", "path", "near")


def sink_placement(L: int, placement: str = "far") -> WalkInstance:
    """Two triangles joined by a path of ``L`` edges with a degree-one sink.

    The body matches :func:`minimal_b` without its sink.  The sink vertex and
    its edge are always numbered last, so every other directed edge keeps
    its id across placements: ``far`` hangs it off the far triangle,
    ``path`` off the middle of the connecting path and ``near`` off the
    second corner of the initial triangle.
    """
    _need(L >= 0, "L must be >= 0")
    _need(placement in SINK_PLACEMENTS, f"placement must be one of {SINK_PLACEMENTS}")
    edges, end = _triangle_path(L)
    x, y = end + 1, end + 2
    edges += [(end, x), (x, y), (end, y)]
    attach = {"far": y, "path": 2 + L // 2, "near": 1}[placement]
    sink = y + 1
    edges.append((attach, sink))
    return _instance(sink + 1, edges, {}, {sink}, name=f"sink_placement(L={L},{placement})")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)


GENERATORS = {
    "multi_loop": multi_loop,
    "star": star,
    "star_single": lambda n, L: star(n, L, "single"),
    "star_full": lambda n, L: star(n, L, "full"),
    "minimal_a": minimal_a,
    "minimal_b": minimal_b,
    "minimal_c": minimal_c,
    "minimal_d": minimal_d,
    "hollow_prism": hollow_prism,
    "stacked_prism": stacked_prism,
    "no_trapping": no_trapping,
    "sink_placement": sink_placement,
}


def generate(spec: FamilySpec | str, **params) -> WalkInstance:
    if isinstance(spec, str):
        spec = FamilySpec(spec, params)
    try:
        gen = GENERATORS[spec.family]
    except KeyError:
        raise ValueError(f"unknown family {spec.family!r}; choose from {sorted(GENERATORS)}") from None
    try:
        return gen(**spec.params)
    except TypeError as exc:
        raise ValueError(f"{spec.family}: {exc}") from None
