import random

import pytest
from hypothesis import strategies as st

from grovertrap.graph import StructureGraph, WalkInstance


def random_connected_graph(rng: random.Random, max_vertices: int = 8, max_loops: int = 3) -> StructureGraph:
    n = rng.randint(1, max_vertices)
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    rng.shuffle(all_pairs)
    edges |= set(all_pairs[: rng.randint(0, len(all_pairs))])
    # shuffle labels so vertex 0 is not always the tree root
    perm = list(range(n))
    rng.shuffle(perm)
    edge_list = [(perm[u], perm[v]) for u, v in sorted(edges)]
    rng.shuffle(edge_list)
    loops = {}
    for _ in range(rng.randint(0, max_loops)):
        v = rng.randrange(n)
        loops[v] = loops.get(v, 0) + 1
    return StructureGraph(n, tuple(edge_list), loops)


def random_instance(rng: random.Random, max_vertices: int = 8, max_loops: int = 3) -> WalkInstance:
    """Random graph with one or two sink vertices and a random initial vertex."""
    while True:
        g = random_connected_graph(rng, max_vertices, max_loops)
        if g.n_vertices >= 2:
            break
    verts = list(g.vertices)
    rng.shuffle(verts)
    sink = set(verts[: rng.choice([1, 1, 2]) if g.n_vertices > 2 else 1])
    start = next(v for v in verts if v not in sink)
    from grovertrap.graph import vertex_subspace

    initial = vertex_subspace(g, start)
    if not initial:
        initial = tuple(
            e for v in g.vertices if v not in sink for e in vertex_subspace(g, v)
        )[:1]
    return WalkInstance(g, frozenset(sink), initial)


@st.composite
def connected_graphs(draw, max_vertices: int = 7, max_loops: int = 3):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected_graph(random.Random(seed), max_vertices, max_loops)


@st.composite
def walk_instances(draw, max_vertices: int = 7, max_loops: int = 3):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_instance(random.Random(seed), max_vertices, max_loops)


TRIANGLE = StructureGraph(3, ((0, 1), (1, 2), (0, 2)))
C4 = StructureGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
P3 = StructureGraph(3, ((0, 1), (1, 2)))


@pytest.fixture
def triangle():
    return TRIANGLE


@pytest.fixture
def c4():
    return C4
