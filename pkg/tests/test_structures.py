import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leavitt.catalog import grugrex, line, rose, toy, ugr1
from leavitt.constructions import build_EG
from leavitt.corpus import all_graphs, random_graph, random_ultragraph
from leavitt.structures import (
    GEdge,
    Graph,
    Path,
    TruncationExceeded,
    UEdge,
    Ultragraph,
    concatenate,
    enumerate_paths,
    find_cycles,
    is_cycle,
    is_path,
    singular_vertices,
    subgraph_F,
    validate,
)
from leavitt.vertexsets import NAT, Universe, VertexSet


def names(g, paths):
    return [tuple(p.names(g)) for p in paths]


def test_single_loop_is_valid():
    assert validate(rose(1)) == []


def test_empty_range_is_a_violation():
    u = Universe(2)
    g = Ultragraph("g", u, {0: "v", 1: "w"}, [UEdge("e", 0, VertexSet.empty(u))])
    assert [v.message for v in validate(g)] == ["empty range"]


def test_unknown_vertex_is_a_violation():
    g = Graph("g", ["v"], [GEdge("e", 0, 1)])
    msgs = [v.message for v in validate(g)]
    assert any("outside the universe" in m or "unknown vertex" in m for m in msgs)
    u = Universe(2)
    h = Ultragraph("h", u, {0: "v"}, [UEdge("e", 0, VertexSet.finite(u, [1]))])
    assert any(v.message.startswith("unknown vertex") for v in validate(h))


def test_duplicate_edge_names():
    g = Graph.build("g", ["v"], [("e", "v", "v"), ("e", "v", "v")])
    assert any("duplicate" in v.message for v in validate(g))


def test_singular_vertices_examples():
    g = line(3)
    assert singular_vertices(g) == VertexSet.finite(g.universe, [2])
    assert singular_vertices(rose(2)).is_empty
    assert singular_vertices(ugr1()) == VertexSet.cofinite_set(NAT, [0])


def test_find_cycles_examples():
    assert find_cycles(line(3), 3) == []
    g = rose(2)
    # every closed path counts, powers included
    assert sorted(names(g, find_cycles(g, 2))) == sorted(
        [("e1",), ("e2",), ("e1", "e2"), ("e2", "e1"), ("e1", "e1"), ("e2", "e2")]
    )
    h = Ultragraph.build("h", ["v", "w"], [("e", "v", ["v", "w"])])
    assert names(h, find_cycles(h, 1)) == [("e",)]


def test_enumerate_paths_examples():
    g = line(3)
    assert names(g, enumerate_paths(g, 0, 2)) == [(), ("e1",), ("e1", "e2")]
    assert names(g, enumerate_paths(g, 2, 2)) == [()]
    r = rose(1)
    assert names(r, enumerate_paths(r, 0, 3)) == [(), ("e1",), ("e1", "e1"), ("e1", "e1", "e1")]


def test_unbounded_enumeration_of_cyclic_graph_refused():
    with pytest.raises(TruncationExceeded):
        enumerate_paths(rose(1), 0)
    assert len(enumerate_paths(line(3), 0)) == 3


def _brute_cycles(g, n):
    out = []
    for v in sorted(g.sources()):
        for p in enumerate_paths(g, v, n):
            if p.edges and is_cycle(g, p.edges):
                out.append(p)
    return out


def test_find_cycles_matches_filtered_enumeration(rng):
    corpus = list(all_graphs(2, 3)) + [random_ultragraph(rng, max_vertices=3, max_edges=3) for _ in range(20)]
    for g in corpus:
        for n in range(1, 5):
            assert find_cycles(g, n) == _brute_cycles(g, n)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000))
def test_concatenation_associative(seed):
    import random

    g = random_graph(random.Random(seed), max_vertices=3, max_edges=5)
    paths = [p for v in range(g.vertex_count) for p in enumerate_paths(g, v, 2)]
    rng = random.Random(seed + 1)
    for _ in range(10):
        a, b, c = (rng.choice(paths) for _ in range(3))
        try:
            left = concatenate(g, concatenate(g, a, b), c)
        except ValueError:
            left = None
        try:
            right = concatenate(g, a, concatenate(g, b, c))
        except ValueError:
            right = None
        if left is not None and right is not None:
            assert left == right
        ab = a.edges + b.edges
        if a.edges and b.edges:
            assert (is_path(g, ab)) == (not _raises(lambda: concatenate(g, a, b)))


def _raises(fn):
    try:
        fn()
        return False
    except ValueError:
        return True


def test_ultragraph_edges_have_nonempty_ranges(rng):
    for _ in range(30):
        g = random_ultragraph(rng)
        assert validate(g) == []
        for e in g.edges:
            assert not e.range.is_empty
            assert g.has_vertex(g.label(e.source))


def test_subgraph_F_of_grugrex():
    eg = build_EG(grugrex(), window=4)
    F = subgraph_F(eg)
    names_ = {e.name for e in F.edges}
    assert "e_d_10" in names_ and "e_v2" in names_
    assert "e1__d_1" not in names_
    assert not find_cycles(F, len(F.edges) or 1)


def test_subgraph_F_of_finite_ultragraph_is_edgeless(rng):
    assert subgraph_F(build_EG(toy())).edges == ()
    for _ in range(10):
        eg = build_EG(random_ultragraph(rng))
        assert subgraph_F(eg).edges == ()


def test_path_basics():
    g = line(3)
    p = Path(0, (0,))
    q = Path(1, (1,))
    assert concatenate(g, p, q).edges == (0, 1)
    with pytest.raises(ValueError):
        concatenate(g, q, p)
