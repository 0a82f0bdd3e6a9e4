import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings

from grovertrap import families
from grovertrap.graph import (
    ParseError,
    StructureGraph,
    ValidationError,
    build_state_graph,
    parse_instance,
    relabel_instance,
    serialize_instance,
    validate,
)

from .conftest import C4, TRIANGLE, connected_graphs, walk_instances

DATA = Path(__file__).parent / "data"


def test_triangle_state_graph():
    sg = build_state_graph(TRIANGLE)
    assert sg.dim == 6
    assert [len(sg.vertex_edges(v)) for v in range(3)] == [2, 2, 2]


def test_edge_with_loop():
    sg = build_state_graph(StructureGraph(2, ((0, 1),), {0: 1}))
    assert sg.dim == 3
    assert [len(s) for s in sg.vertex_subspaces] == [2, 1]
    assert sg.partner(2) == 2


def test_multi_loop_fixture_counts():
    assert families.multi_loop(4).dim == 5


def test_canonical_subspace_order():
    g = StructureGraph(4, ((0, 3), (0, 1), (0, 2)), {0: 2})
    sg = build_state_graph(g)
    targets = [sg.directed_edges[e].target for e in sg.vertex_edges(0)]
    assert targets == [1, 2, 3, 0, 0]
    assert sg.vertex_edges(0)[3:] == (6, 7)


@pytest.mark.parametrize(
    "graph, kinds",
    [
        (TRIANGLE, []),
        (StructureGraph(4, ((0, 1), (2, 3))), ["disconnected"]),
        (StructureGraph(2, ((0, 1), (0, 1))), ["parallel_edge"]),
        (StructureGraph(2, ((0, 1), (1, 1))), ["self_loop"]),
        (StructureGraph(2, ((0, 1), (1, 5))), ["dangling_endpoint"]),
    ],
)
def test_validate(graph, kinds):
    assert [v.kind for v in validate(graph)] == kinds


def test_parse_prism_fixture():
    inst = parse_instance((DATA / "prism.json").read_bytes())
    assert inst.graph.n_vertices == 6
    assert len(inst.graph.edges) == 9
    assert inst.initial == (0, 4, 12)


def test_parse_missing_edges():
    doc = {"vertices": 2, "loops": {}, "sink": [1], "initial": {"vertex": 0}}
    with pytest.raises(ParseError) as err:
        parse_instance(json.dumps(doc))
    assert err.value.field == "edges"


def test_parse_sink_equals_initial():
    doc = {"vertices": 2, "edges": [[0, 1]], "sink": [0], "initial": {"vertex": 0}}
    with pytest.raises(ValidationError) as err:
        parse_instance(json.dumps(doc))
    assert "initial_in_sink" in {v.kind for v in err.value.violations}


def test_parse_reports_line_of_syntax_error():
    with pytest.raises(ParseError) as err:
        parse_instance(b'{\n "vertices": 2,\n "edges": [[0, 1],]\n}')
    assert err.value.line == 3


def test_parse_rejects_invalid_graph():
    doc = {"vertices": 3, "edges": [[0, 1]], "initial": {"vertex": 0}}
    with pytest.raises(ValidationError):
        parse_instance(json.dumps(doc))


@settings(max_examples=60, deadline=None)
@given(connected_graphs())
def test_state_graph_invariants(g):
    sg = build_state_graph(g)
    assert sg.dim == 2 * len(g.edges) + g.n_loops
    assert sum(len(s) for s in sg.vertex_subspaces) == sg.dim
    for d in sg.directed_edges:
        assert sg.partner(sg.partner(d.id)) == d.id
        if d.is_loop:
            assert d.partner == d.id
        else:
            assert d.origin in g.edges[d.support]
    for v in g.vertices:
        assert len(sg.vertex_edges(v)) == g.degree(v)
    assert validate(g) == []


@settings(max_examples=60, deadline=None)
@given(walk_instances())
def test_round_trip(inst):
    assert parse_instance(serialize_instance(inst)) == inst


@settings(max_examples=40, deadline=None)
@given(walk_instances())
def test_relabeling_gives_isomorphic_state_graph(inst):
    rng = random.Random(len(inst.graph.edges))
    perm = list(inst.graph.vertices)
    rng.shuffle(perm)
    new, dmap = relabel_instance(inst, perm)
    old_sg, new_sg = inst.state_graph, new.state_graph
    assert sorted(map(len, old_sg.vertex_subspaces)) == sorted(map(len, new_sg.vertex_subspaces))
    assert sorted(dmap) == list(range(inst.dim))
    for e in range(inst.dim):
        assert dmap[old_sg.partner(e)] == new_sg.partner(dmap[e])
        assert perm[old_sg.origin(e)] == new_sg.origin(dmap[e])
