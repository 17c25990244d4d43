import random

import pytest

from leavitt.analysis import check_family
from leavitt.catalog import grugrex, line, parallel, rose, toy, ugr1
from leavitt.constructions import (
    build_EG,
    build_family,
    desing_family,
    gegiso,
    gegiso_inverse,
    generator_family,
    glugl,
    lex3,
    lfg,
    llgex,
    llgex2,
)
from leavitt.corpus import random_graph, random_ultragraph
from leavitt.engine import UltraEngine, apply_hom, equal
from leavitt.structures import Ultragraph
from leavitt.vertexsets import VertexSet


def assert_clean(report):
    assert report.ok, report.to_text()


def test_generator_family_of_graphs_and_ultragraphs(rng):
    for g in [line(3), rose(2), parallel(3)] + [random_graph(rng) for _ in range(5)]:
        assert_clean(check_family(generator_family(g), "LP"))
    for g in [toy(), ugr1()] + [random_ultragraph(rng) for _ in range(5)]:
        assert_clean(check_family(generator_family(g), "uLP"))


def test_glugl_sends_sets_to_vertex_sums():
    g = line(3)
    m = glugl(g)
    assert_clean(check_family(m, "uLP"))
    A = VertexSet.finite(g.universe, [0, 2])
    E = m.target
    assert m.set_image(A) == E.vertex(0) + E.vertex(2)


def test_identity_map_fixes_elements(rng):
    g = toy()
    U = UltraEngine(g)
    m = generator_family(g)
    x = U.edge(0) * U.ghost(1) + U.vertex(1)
    assert equal(apply_hom(x, m), x) is True


def test_identification_maps(rng):
    for _ in range(5):
        g = random_ultragraph(rng)
        assert_clean(check_family(gegiso(g), "LP"))
        assert_clean(check_family(gegiso_inverse(g), "uLP"))


def test_exel_laca_maps(rng):
    for _ in range(5):
        g = random_ultragraph(rng, no_singular=True)
        assert_clean(check_family(llgex2(g), "ExL"))
        assert_clean(check_family(llgex(g), "uLP"))


def test_lfg_small():
    g = toy()
    assert_clean(check_family(lfg(g, ["e1", "e2"]), "LP"))
    assert_clean(check_family(lfg(g, ["e3"]), "LP"))


def test_lex3_on_grugrex():
    r = check_family(lex3(build_EG(grugrex(), window=4)), "ExL")
    assert_clean(r)
    assert r.counts()["pass"] > 100


def test_desing_family(rng):
    for _ in range(5):
        g = random_ultragraph(rng, infinite_emitters=True)
        assert_clean(check_family(desing_family(g, 3), "uLP"))


def test_build_family_dispatch():
    m = build_family("generators", {"structure": toy()})
    assert m.source == toy()
    with pytest.raises(ValueError):
        build_family("nope", {})


def test_corrupted_family_is_caught():
    g = toy()
    m = generator_family(g)
    # swap the two ghost images
    m.ghost[0], m.ghost[1] = m.edge_image(1).star(), m.edge_image(0).star()
    r = check_family(m, "uLP")
    assert not r.ok
    assert any(i.instance.startswith("uLP3 e1*,e2") for i in r.failures())
