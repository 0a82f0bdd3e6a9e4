import pytest

from grovertrap import families
from grovertrap.cycles import is_bipartite
from grovertrap.graph import validate
from grovertrap.transport import average_atp, closed_form, projector
from grovertrap.trapped import reduce_by_sink, sr_trapped_basis


def q_of(inst):
    return average_atp(projector(sr_trapped_basis(inst), inst.dim), inst.initial)


@pytest.mark.parametrize("n, H", [(3, 2), (4, 3), (6, 5)])
def test_hollow_prism_counts(n, H):
    inst = families.hollow_prism(n, H)
    g = inst.graph
    assert g.n_vertices == n * (H + 1)
    assert len(g.edges) == 2 * n + n * H
    assert validate(g) == []
    assert inst.sink == {(H // 2) * n + 1}
    assert 0 in {inst.state_graph.origin(e) for e in inst.initial}


@pytest.mark.parametrize("n, H", [(3, 2), (5, 4)])
def test_stacked_prism_counts(n, H):
    g = families.stacked_prism(n, H).graph
    assert g.n_vertices == n * (H + 1)
    assert len(g.edges) == n * (H + 1) + n * H


@pytest.mark.parametrize("n", range(2, 7))
def test_multi_loop_shape(n):
    inst = families.multi_loop(n)
    assert inst.graph.loops == {0: n - 1}
    assert len(inst.initial) == n
    assert q_of(inst) == closed_form("multi_loop", n=n)


@pytest.mark.parametrize("n, L", [(3, 0), (3, 2), (5, 1), (6, 3)])
def test_star_shape(n, L):
    inst = families.star(n, L)
    assert validate(inst.graph) == []
    assert inst.graph.n_loops == n - 1
    assert inst.graph.degree(0) == n
    assert len(families.star(n, L, "single").initial) == 1


@pytest.mark.parametrize("family", ["minimal_a", "minimal_b", "minimal_c", "minimal_d"])
@pytest.mark.parametrize("L", range(4))
def test_minimal_graphs_have_one_state(family, L):
    inst = families.generate(family, L=L)
    assert len(sr_trapped_basis(inst)) == 1
    assert len(reduce_by_sink(inst).components) == 1


def test_minimal_a_is_bipartite_cycle():
    inst = families.minimal_a(2)
    assert is_bipartite(inst.graph)
    assert len(inst.graph.edges) == 8 + 1


def test_no_trapping_layout():
    inst = families.no_trapping()
    assert q_of(inst) == 1
    assert validate(inst.graph) == []
    assert len(inst.initial) == 4
    assert q_of(families.no_trapping(odd=True)) < 1


@pytest.mark.parametrize("placement", families.SINK_PLACEMENTS)
def test_sink_placement_numbering(placement):
    inst = families.sink_placement(2, placement)
    body = families.sink_placement(2, "far")
    assert inst.graph.edges[:-1] == body.graph.edges[:-1]
    assert max(inst.sink) == inst.graph.n_vertices - 1
    assert list(inst.sink_edges()) == [inst.dim - 1]


@pytest.mark.parametrize(
    "call",
    [
        lambda: families.multi_loop(1),
        lambda: families.star(2, 1),
        lambda: families.star(3, -1),
        lambda: families.star(3, 1, "most"),
        lambda: families.minimal_b(-1),
        lambda: families.hollow_prism(2, 3),
        lambda: families.hollow_prism(3, 1),
        lambda: families.hollow_prism(3, 4, sink_height=4),
        lambda: families.hollow_prism(3, 4, sink_column=3),
        lambda: families.no_trapping(tail=0),
        lambda: families.sink_placement(1, "middle"),
        lambda: families.generate("moebius"),
        lambda: families.generate("star", n=3),
        lambda: families.generate("multi_loop", n=3, H=2),
    ],
)
def test_invalid_parameters(call):
    with pytest.raises(ValueError):
        call()


def test_generate_spec_object():
    spec = families.FamilySpec("hollow_prism", {"n": 4, "H": 2})
    assert families.generate(spec).graph == families.hollow_prism(4, 2).graph
