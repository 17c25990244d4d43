import random

import pytest

from leavitt.analysis import (
    CyclePolynomial,
    ScalarVertex,
    admissible_pairs,
    breaking_vertices,
    condition_L,
    find_supporting_vertex,
    hereditary_saturated_subsets,
    hereditary_subsets,
    pin_down,
    simplicity_verdict,
    unital,
)
from leavitt.catalog import isolated, line, rose, split, toy, ugr1
from leavitt.constructions import build_EG
from leavitt.corpus import random_element, random_graph, random_ultragraph
from leavitt.engine import UNKNOWN, GraphEngine, UltraEngine, ZeroElement
from leavitt.rings import GF, Q, Z
from leavitt.structures import TruncationExceeded, Ultragraph
from leavitt.vertexsets import VertexSet


def test_condition_L_examples():
    v = condition_L(rose(1))
    assert v.result is False and v.witnesses
    assert condition_L(rose(2)).result is True
    g = Ultragraph.build("g", ["v", "w"], [("e", "v", ["v", "w"])])
    assert condition_L(g).result is True


def test_condition_L_transfers_through_the_broad_exit():
    g = Ultragraph.build("g", ["v", "w"], [("e", "v", ["v", "w"]), ("f", "w", ["v"])])
    assert condition_L(g).result == condition_L(build_EG(g).graph).result


def test_hereditary_saturated_examples():
    g = line(3)
    assert [H.items for H in hereditary_saturated_subsets(g)] == [(), (0, 1, 2)]
    assert [H.items for H in hereditary_saturated_subsets(isolated(2))] == [(), (0,), (1,), (0, 1)]


def test_split_is_hereditary_but_not_saturated():
    g = split()
    assert [H.items for H in hereditary_subsets(g)] == [(), (1,), (0, 1)]
    assert [H.items for H in hereditary_saturated_subsets(g)] == [(), (0, 1)]


def test_hereditary_saturated_families_form_a_lattice(rng):
    for _ in range(30):
        g = random_ultragraph(rng, max_vertices=5)
        hs = hereditary_saturated_subsets(g)
        fam = set(hs)
        for a in hs:
            for b in hs:
                assert (a & b) in fam
                joins = [h for h in hs if (a | b).issubset(h)]
                assert joins and min(joins, key=len) in fam


def test_nat_lattice_refused():
    with pytest.raises(TruncationExceeded):
        hereditary_saturated_subsets(ugr1())


def test_breaking_vertices():
    assert breaking_vertices(toy(), VertexSet.empty(toy().universe)).is_empty
    g = Ultragraph.build("g", ["v", "a", "b"], [("e1", "v", ["a"]), ("e2", "v", ["b"])], infinite=["v"])
    H = VertexSet.finite(g.universe, [1])
    assert breaking_vertices(g, H).items == (0,)
    assert admissible_pairs(toy())


def test_simplicity_examples():
    assert simplicity_verdict(line(3), GF(2)).result is True
    r = simplicity_verdict(rose(1))
    assert r.result is False and r.witnesses
    iso = simplicity_verdict(isolated(2))
    assert iso.result is False and any("{u}" in w for w in iso.witnesses)
    assert simplicity_verdict(ugr1()).result is UNKNOWN
    assert simplicity_verdict(line(3), Z).result is UNKNOWN


def test_unital():
    assert unital(line(3)) and unital(ugr1())
    nat = Ultragraph.build("n", ["v"], [("e", "v", ["v"])], nat=True)
    assert not unital(nat)


# pin-down ------------------------------------------------------------------------------------


def test_pin_down_examples():
    g = Ultragraph.build("g", ["v", "w"], [("e", "v", ["w"])])
    U = UltraEngine(g, Q)
    x = U.vertex(0).scale(3)
    p = pin_down(x)
    assert p.form == ScalarVertex(3, 0) and p.a == U.vertex(0) and p.b == U.vertex(0)
    p = pin_down(U.edge(0))
    assert p.form == ScalarVertex(1, 1) and p.a == U.ghost(0) and p.b == U.vertex(1)
    r = rose(1).to_ultragraph()
    R = UltraEngine(r, Q)
    p = pin_down(R.vertex(0) + R.edge(0))
    assert p.form == CyclePolynomial((0,), (1, 1), 0)


def test_supporting_vertex_examples():
    g = Ultragraph.build("g", ["v", "w", "x"], [("e", "v", ["w", "x"])])
    U = UltraEngine(g, Q)
    A = VertexSet.finite(g.universe, [1, 2])
    assert find_supporting_vertex(U.p(A)) in (1, 2)
    v = find_supporting_vertex(U.edge(0))
    assert v in (1, 2) and not (U.edge(0) * U.vertex(v)).is_zero()
    with pytest.raises(ZeroElement):
        find_supporting_vertex(U.zero())


def test_supporting_vertex_is_verified_by_the_engine(rng):
    for _ in range(40):
        g = random_ultragraph(rng, max_vertices=4)
        U = UltraEngine(g, Q)
        x = random_element(U, rng)
        if x.is_zero():
            continue
        v = find_supporting_vertex(x)
        assert not (x * U.vertex(v)).is_zero() or not (U.vertex(v) * x).is_zero()


def test_pin_down_reverifies_on_random_graph_elements(rng):
    for _ in range(60):
        g = random_graph(rng, max_vertices=4, max_edges=5)
        E = GraphEngine(g, Q)
        x = random_element(E, rng)
        if x.is_zero():
            continue
        assert pin_down(x).check(x)


def test_pin_down_nat_refused():
    U = UltraEngine(ugr1(), Q)
    with pytest.raises(TruncationExceeded):
        pin_down(U.edge(0))
