import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leavitt.catalog import CATALOG, ugr1
from leavitt.constructions import build_EG, build_GF, desingularize
from leavitt.corpus import random_document
from leavitt.dot import to_dot
from leavitt.dsl import Document, ParseError, parse, parse_structure, print_document, print_structure
from leavitt.expr import eval_expr
from leavitt.rings import GF, Q, Z
from leavitt.structures import Graph
from leavitt.vertexsets import NAT


def test_ugr1_text():
    g = parse_structure("ultragraph G { universe nat; vertices v0; edge e: v0 -> cofinite { v0 }; }")
    assert g.universe == NAT and g.range(0).cofinite and g.range(0).items == (0,)
    want = ugr1()
    assert (g.labels, g.edges) == (want.labels, want.edges)


def test_two_vertex_line():
    g = parse_structure("graph E { vertices u w; edge f: u -> w; }")
    assert isinstance(g, Graph) and g.vertex_count == 2 and g.edges[0].target == 1


def test_comments_and_whitespace():
    text = "# header\ngraph E {   # trailing\n vertices\n u\n w ;edge f:u->w;}\n"
    assert parse_structure(text).edges[0].name == "f"


@pytest.mark.parametrize(
    "text, line, col, fragment",
    [
        ("ultragraph E { vertices u; edge e: u -> { }; }", 1, 41, "empty range"),
        ("graph E {\n  vertices u;\n  edge e: u -> w;\n}", 3, 16, "unknown vertex w"),
        ("graph E { vertices u", 1, 21, "found end of input"),
        ("graph E { colour u; }", 1, 11, "expected declaration"),
        ("graph E { vertices u u; }", 1, 22, "duplicate vertex"),
        ("graph A { } graph A { }", 1, 13, "duplicate structure"),
        ("ultragraph E { vertices u; sigma { u -> 12; } }", 1, 41, "bit string"),
        ("ultragraph E { universe nat; vertices _3; }", 1, 39, "reserved"),
        ("graph E { vertices u$; }", 1, 21, "unexpected character"),
    ],
)
def test_parse_errors_are_positioned(text, line, col, fragment):
    with pytest.raises(ParseError) as info:
        parse(text)
    err = info.value
    assert (err.line, err.col) == (line, col)
    assert fragment in str(err)


def test_nat_indices():
    g = parse_structure("ultragraph G { universe nat; vertices a b@0 c; edge e: a -> { _7 c }; }")
    assert g.index("b") == 0 and g.index("a") == 1 and g.index("c") == 2
    assert g.range(0).items == (2, 7)


def test_nat_printer_writes_indices():
    assert "v0@0" in print_structure(ugr1())


def test_catalog_round_trips():
    for make in CATALOG.values():
        g = make()
        assert parse_structure(print_structure(g)) == g


def test_constructions_round_trip():
    from leavitt.catalog import grugrex, line, toy

    for g in [build_EG(grugrex(), window=4).graph, build_GF(toy(), ["e1", "e2"]), desingularize(line(2)).structure]:
        assert parse_structure(print_structure(g)) == g


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_print_parse_round_trip(seed):
    doc = random_document(random.Random(seed))
    text = print_document(doc)
    again = parse(text)
    assert again == doc
    assert print_document(again) == text


def test_bindings_round_trip():
    doc = parse("graph E { vertices u w; edge f: u -> w; let x = star(s(f))*s(f)+-2*q(w); }")
    assert doc.bindings == {"E": {"x": "star(s(f)) * s(f) + -2 * q(w)"}}
    assert parse(print_document(doc)) == doc


# expressions -----------------------------------------------------------------------------------


def test_eval_examples():
    d = parse("ultragraph G { universe nat; vertices v0; edge e: v0 -> cofinite { v0 }; }")
    assert eval_expr(d, "G", Z, "star(s(e)) * s(e)") == "p(cofinite{v0})"
    d = parse("graph E { vertices v w; edge f: v -> w; }")
    assert eval_expr(d, None, Z, "q(v) * q(w)") == "0"
    d = Document([CATALOG["rose1"]()])
    assert eval_expr(d, None, Z, "s(e1) * s(e1)") == "s(e1 e1)"


def test_eval_scalars_and_rings():
    d = Document([CATALOG["rose1"]()])
    assert eval_expr(d, None, GF(2), "3 * q(v) + q(v)") == "0"
    assert eval_expr(d, None, Q, "2 - q(v)") == "q(v)"
    assert eval_expr(d, None, Z, "(q(v) - s(e1)) * (q(v) + s(e1))") == "q(v) - s(e1 e1)"


def test_eval_output_reparses():
    d = Document([CATALOG["toy"]()])
    out = eval_expr(d, None, Z, "s(e1) * star(s(e1)) + 2 * star(s(e2)) * s(e2)")
    assert eval_expr(d, None, Z, out) == out


def test_eval_errors():
    from leavitt.engine import MissingGeneratorAssignment

    d = Document([CATALOG["rose1"]()])
    with pytest.raises(MissingGeneratorAssignment):
        eval_expr(d, None, Z, "s(nope)")
    with pytest.raises(ParseError):
        eval_expr(d, None, Z, "s(e1) *")


# dot -----------------------------------------------------------------------------------------


def test_dot_shapes():
    text = to_dot(ugr1())
    assert text.count("->") == 1 and "⋯" in text
    g = CATALOG["line3"]()
    assert to_dot(g).count("->") == len(g.edges)
