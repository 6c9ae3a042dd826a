import json

import pytest

from looptrans.enumeration import enumerate_classes
from looptrans.formats import (
    GraphFormatError,
    dumps_cycles,
    dumps_json,
    dumps_witness,
    export_dot,
    parse_graph,
    parse_witness,
)
from looptrans.algebra import RatMatrix
from fractions import Fraction


def test_json_roundtrip_fixtures(gww, square_triangle, band15):
    for entry in (gww, square_triangle, band15):
        for g in entry.graphs:
            assert parse_graph(dumps_json(g)) == g


def test_cycles_roundtrip_fixtures(gww, band15):
    for entry in (gww, band15):
        for g in entry.graphs:
            assert parse_graph(dumps_cycles(g)) == g


def test_roundtrip_enumerated_classes():
    for g in enumerate_classes(3, 3, "mixed"):
        assert parse_graph(dumps_json(g)) == g
        assert parse_graph(dumps_cycles(g)) == g


def test_cycle_format_example(band15):
    text = dumps_cycles(band15.graphs[0])
    first = text.splitlines()[0]
    assert first == "c1: (1,8)(3,10)(5,12)(7,14) loops: 2N 4N 6N 9N 11N 13N 15N"


def test_parse_rejects_malformed():
    with pytest.raises(GraphFormatError):
        parse_graph("")
    with pytest.raises(GraphFormatError):
        parse_graph("{not json")
    with pytest.raises(GraphFormatError):
        parse_graph(json.dumps({"version": 2}))
    # vertex appearing twice in a colour
    doc = {
        "version": 1,
        "vertices": 2,
        "colors": 1,
        "adjacency": [{"color": 1, "edges": [[1, 2]], "loops": {"1": "D"}}],
    }
    with pytest.raises(GraphFormatError):
        parse_graph(json.dumps(doc))
    # uncovered vertex
    doc["adjacency"] = [{"color": 1, "edges": [], "loops": {"1": "D"}}]
    with pytest.raises(GraphFormatError):
        parse_graph(json.dumps(doc))
    # bad loop sign
    doc["adjacency"] = [{"color": 1, "edges": [], "loops": {"1": "X", "2": "N"}}]
    with pytest.raises(GraphFormatError):
        parse_graph(json.dumps(doc))
    with pytest.raises(GraphFormatError):
        parse_graph("c1: (1,2) junk\n")


def test_witness_roundtrip(gww):
    blob = dumps_witness(gww.witness)
    assert parse_witness(blob) == gww.witness
    m = RatMatrix.from_rows([[Fraction(1, 2), -1], [3, Fraction(-2, 7)]])
    assert parse_witness(dumps_witness(m)) == m
    assert '"1/2"' in dumps_witness(m)


def test_witness_rejects_malformed():
    with pytest.raises(GraphFormatError):
        parse_witness("{}")
    with pytest.raises(GraphFormatError):
        parse_witness("[[1, 2], [3]]")
    with pytest.raises(GraphFormatError):
        parse_witness('[["1/0x"]]')


def test_export_dot_counts(gww):
    out = export_dot(gww.graphs[0])
    assert out == export_dot(gww.graphs[0])  # byte-identical
    lines = out.splitlines()
    node_lines = [l for l in lines if l.strip().endswith(";") and "--" not in l]
    edge_lines = [l for l in lines if "--" in l and "label=" not in l]
    loop_lines = [l for l in lines if 'label="D"' in l or 'label="N"' in l]
    assert len(node_lines) == 7
    assert len(edge_lines) == 6
    assert len(loop_lines) == 9


def test_export_dot_single_loop():
    from looptrans.graph import LoopSignedGraph

    g = LoopSignedGraph.build(1, [([], {1: "N"})])
    out = export_dot(g)
    assert "1 -- 1" in out and 'label="N"' in out
