from fractions import Fraction
from importlib.resources import files

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ruledgraph import (DSLSyntaxError, DuplicateName, UnknownReference, WeightedGraph, Zigzag,
                        dsl, emit)
from ruledgraph.catalog import dg_extended, jump_pair

CORPUS = ["examples.dg", "jump.dg", "special.dg"]


def corpus_text(name):
    return (files("ruledgraph") / "data" / name).read_text(encoding="utf-8")


def test_zigzag():
    doc = dsl.parse("zigzag Z = [[0,0,-2,-3]]")
    assert doc.zigzag("Z").weights == (0, 0, -2, -3)


def test_run_shorthand():
    doc = dsl.parse("zigzag Z = [[0,0,(-2)_3]]")
    assert doc.zigzag("Z") == Zigzag((0, 0, -2, -2, -2))


def test_trailing_comma_position():
    with pytest.raises(DSLSyntaxError) as exc:
        dsl.parse("zigzag Z = [[0,0,]]")
    assert (exc.value.line, exc.value.col) == (1, 17)


def test_syntax_error_reports_line():
    text = "zigzag A = [[0]]\n\ngraph G {\n  C0 w=0 role=fiber0\n  edges: }\n"
    with pytest.raises(DSLSyntaxError) as exc:
        dsl.parse(text)
    assert exc.value.line == 5


def test_unknown_keyword():
    with pytest.raises(DSLSyntaxError):
        dsl.parse("surface S = [[0]]")


def test_reference_errors():
    with pytest.raises(UnknownReference):
        dsl.parse("normalized D { boundary=Nope }")
    with pytest.raises(DuplicateName):
        dsl.parse("zigzag A = [[0]]\nzigzag A = [[1]]")


def test_extended_matches_catalog():
    doc = dsl.parse(corpus_text("jump.dg"))
    generic, special = jump_pair()
    assert doc.extended_graph("DextS") == generic
    assert doc.extended_graph("Dext0") == special


def test_dg_corpus_matches_catalog():
    doc = dsl.parse(corpus_text("examples.dg"))
    for r in (1, 2, 3):
        assert doc.extended_graph(f"Next{r}") == dg_extended(4, r)


@pytest.mark.parametrize("name", CORPUS)
def test_dump_round_trip(name):
    doc = dsl.parse(corpus_text(name))
    again = dsl.parse(dsl.dump(doc))
    assert again.items == doc.items
    assert dsl.dump(again) == dsl.dump(doc)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=12))
def test_zigzag_print_parse(ws):
    doc = dsl.parse(f"zigzag Z = [[{','.join(map(str, ws))}]]")
    again = dsl.parse(dsl.dump(doc))
    assert again.zigzag("Z").weights == tuple(ws)


def test_dot_of_special_member():
    _, special = jump_pair()
    text = emit.emit_dot(special, "Dext0")
    assert text.count("[label=") == 6
    assert text.count(" -> ") == 5
    assert text.count("style=dashed") == 2


def test_dot_of_empty_graph():
    text = emit.emit_dot(WeightedGraph([], []), "E")
    assert text == 'digraph "E" {\n  edge [dir=none];\n}\n'


def test_dot_branch_point():
    g = dg_extended(3, 1)
    text = emit.emit_dot(g)
    ends = [ln.strip(" ;").split(" -> ") for ln in text.splitlines() if " -> " in ln]
    assert sum(1 for e in ends if "n2" in e) == 3


def test_canonical_json_is_sorted():
    assert emit.canonical_json({"b": Fraction(1, 3), "a": 1}) == '{\n  "a": 1,\n  "b": "1/3"\n}\n'
