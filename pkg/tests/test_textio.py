"""Text formats: canonical output, byte-stable round trips, rejection of
malformed or inconsistent documents."""

import pytest

from tightpath import BLUE, RED, Graph, Hypergraph3, TightPath3, TwoThreeGraph
from tightpath.colourers import uniform_random
from tightpath import textio


class TestGraphFormat:
    def test_round_trip_byte_stable(self):
        g = Graph(5, [(0, 1), (2, 4), (1, 3)], vertex_labels=[0, 0, 1, 1, 2])
        text = textio.format_graph(g)
        again = textio.format_graph(textio.parse_graph(text))
        assert text == again
        assert text.startswith("graph 5\n")

    def test_parses_unsorted_input(self):
        g = textio.parse_graph("graph 3\n2 1\n0 2\n")
        assert set(g.edges()) == {(1, 2), (0, 2)}

    def test_rejects_bad_header(self):
        with pytest.raises(ValueError):
            textio.parse_graph("grap 3\n")

    def test_rejects_partial_labels(self):
        with pytest.raises(ValueError):
            textio.parse_graph("graph 3\n0 1\nlabel 0 5\n")


class TestHypergraphFormat:
    def test_round_trip(self):
        h = Hypergraph3(5, [(0, 1, 2), (2, 3, 4)])
        text = textio.format_hypergraph(h)
        assert text == "h3 5\n0 1 2\n2 3 4\n"
        assert set(textio.parse_hypergraph(text).triples()) == set(h.triples())

    def test_rejects_bad_line(self):
        with pytest.raises(ValueError):
            textio.parse_hypergraph("h3 4\n0 1\n")


class TestColouringFormat:
    def test_round_trip(self):
        h = Hypergraph3(5, [(0, 1, 2), (1, 2, 3), (2, 3, 4)])
        c = uniform_random(h, 0.5, 3)
        text = textio.format_colouring(c)
        back = textio.parse_colouring(text, h)
        assert dict(back.items()) == dict(c.items())

    def test_rejects_triple_outside_host(self):
        h = Hypergraph3(5, [(0, 1, 2)])
        with pytest.raises(ValueError):
            textio.parse_colouring("0 1 2 B\n0 1 3 R\n", h)

    def test_rejects_incomplete_colouring(self):
        h = Hypergraph3(5, [(0, 1, 2), (1, 2, 3)])
        with pytest.raises(ValueError):
            textio.parse_colouring("0 1 2 B\n", h)

    def test_rejects_unknown_colour_code(self):
        h = Hypergraph3(4, [(0, 1, 2)])
        with pytest.raises(ValueError):
            textio.parse_colouring("0 1 2 G\n", h)


class TestTwoThreeFormat:
    def test_round_trip_byte_stable(self):
        f = TwoThreeGraph(6, [(0, 1), (3, 5)], [(1, 2, 0), (1, 2, 4)])
        text = textio.format_two_three(f)
        again = textio.format_two_three(textio.parse_two_three(text))
        assert text == again
        assert "e2 0 1" in text and "e3 1 2 0" in text

    def test_rejects_bad_tag(self):
        with pytest.raises(ValueError):
            textio.parse_two_three("g23 3\ne4 0 1 2\n")


class TestTightPathFormat:
    def test_round_trip(self):
        p = TightPath3((4, 2, 7, 1))
        text = textio.format_tight_path(p, RED)
        back, colour = textio.parse_tight_path(text)
        assert back == p and colour == RED

    def test_empty_path(self):
        text = textio.format_tight_path(TightPath3(()), BLUE)
        back, colour = textio.parse_tight_path(text)
        assert back.vertices == () and colour == BLUE

    def test_rejects_count_mismatch(self):
        with pytest.raises(ValueError):
            textio.parse_tight_path("tightpath 3 B\n1 2\n")
