import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from treespec import (
    Edge,
    FormatError,
    Multigraph,
    OmegaWord,
    WeightedGraph,
    export_dot,
    export_eigenvalue_csv,
    markov_weights,
    parse_graph,
    schreier_graph,
    serialize_graph,
)

FINITE = st.floats(allow_nan=False, allow_infinity=False, width=64)


def graph_equal(a, b):
    if list(a.vertices) != list(b.vertices):
        return False
    ea = [(e.u, e.v, complex(e.wu), complex(e.wv), e.label) for e in a.edges]
    eb = [(e.u, e.v, complex(e.wu), complex(e.wv), e.label) for e in b.edges]
    return ea == eb


class TestRoundTrip:
    def test_schreier_graph(self):
        g = schreier_graph(OmegaWord.parse(":012"), 3)
        h = parse_graph(serialize_graph(g))
        assert graph_equal(markov_weights(g), markov_weights(h))

    def test_weighted_round_trip_is_bit_exact(self):
        w = markov_weights(schreier_graph(OmegaWord.parse(":01"), 2))
        h = parse_graph(serialize_graph(w))
        for e, f in zip(w.edges, h.edges):
            assert float(e.wu) == float(f.wu)  # exact, not approx
            assert float(e.wv) == float(f.wv)

    @given(wu=FINITE, wv=FINITE)
    def test_arbitrary_doubles_survive(self, wu, wv):
        g = WeightedGraph([0, 1], [Edge(0, 1, wu, wv)])
        h = parse_graph(serialize_graph(g))
        assert float(h.edges[0].wu) == wu
        assert float(h.edges[0].wv) == wv

    def test_complex_weights(self):
        g = WeightedGraph([0, 1], [Edge(0, 1, 1 + 0.1j, 1 - 0.1j)])
        h = parse_graph(serialize_graph(g))
        assert complex(h.edges[0].wu) == 1 + 0.1j

    def test_serialization_is_canonical(self):
        g = schreier_graph(OmegaWord.parse(":012"), 2)
        assert serialize_graph(g) == serialize_graph(g)
        doc = json.loads(serialize_graph(g))
        assert doc["format_version"] == 1
        assert "conventions" in doc


class TestParseErrors:
    def test_not_json(self):
        with pytest.raises(FormatError, match="JSON"):
            parse_graph(b"not json{")

    def test_missing_field(self):
        with pytest.raises(FormatError, match="missing field"):
            parse_graph(b'{"format_version":1,"vertices":[]}')

    def test_wrong_version(self):
        with pytest.raises(FormatError, match="format_version"):
            parse_graph(b'{"format_version":99,"vertices":[],"edges":[]}')

    def test_duplicate_vertex(self):
        doc = b'{"format_version":1,"vertices":[0,0],"edges":[]}'
        with pytest.raises(FormatError, match="duplicate"):
            parse_graph(doc)

    def test_unknown_endpoint(self):
        doc = b'{"format_version":1,"vertices":[0],"edges":[{"u":0,"v":5}]}'
        with pytest.raises(FormatError, match="edge 0"):
            parse_graph(doc)

    def test_bad_weight_string(self):
        doc = (
            b'{"format_version":1,"weighted":true,"vertices":[0,1],'
            b'"edges":[{"u":0,"v":1,"wu":"zap","wv":"1.0"}]}'
        )
        with pytest.raises(FormatError, match="weight"):
            parse_graph(doc)


class TestExports:
    def test_dot_contains_every_edge(self):
        g = schreier_graph(OmegaWord.parse(":012"), 2)
        dot = export_dot(g)
        assert dot.startswith("graph G {")
        assert dot.count("--") == len(g.edges)
        for gen in "abcd":
            assert f'label="{gen}"' in dot

    def test_dot_weighted_attributes(self):
        w = markov_weights(schreier_graph(OmegaWord.parse(":012"), 1))
        dot = export_dot(w, name="lvl1")
        assert "graph lvl1 {" in dot and 'wu="0.25"' in dot

    def test_eigenvalue_csv(self):
        rows = [(1, 0, 0.5, True), (1, 1, 1.0, True)]
        csv_text = export_eigenvalue_csv(rows)
        lines = csv_text.strip().split("\n")
        assert lines[0] == "level,index,value,in_target"
        assert lines[1] == "1,0,0.5,True"
        assert len(lines) == 3
