"""3-uniform hypergraphs, colourings, tight paths, cliques, and the lift."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tightpath import (
    BLUE,
    RED,
    Graph,
    Hypergraph3,
    TightPath3,
    TwoColoring,
    blow_up,
    brute_force_longest_mono_tight_path,
    complete_graph,
    find_mono_clique,
    lift_to_r_uniform,
    triangles_to_hypergraph,
    validate_l_path,
    validate_tight_path,
)
from tightpath.colourers import all_blue, uniform_random
from tightpath.packing import pack3, unpack3


def complete_h3(n: int) -> Hypergraph3:
    return Hypergraph3(n, itertools.combinations(range(n), 3))


def colour_by_map(h: Hypergraph3, mapping: dict) -> TwoColoring:
    full = {pack3(*t): col for t, col in mapping.items()}
    return TwoColoring(h, full)


class TestPacking:
    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(0, 2**21 - 1), min_size=3, max_size=3, unique=True))
    def test_pack3_roundtrip_and_order_free(self, verts):
        a, b, c = verts
        code = pack3(a, b, c)
        assert code == pack3(c, a, b) == pack3(b, c, a)
        assert unpack3(code) == tuple(sorted(verts))


class TestHypergraph3:
    def test_rejects_degenerate_triple(self):
        with pytest.raises(ValueError):
            Hypergraph3(4, [(0, 0, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Hypergraph3(3, [(0, 1, 3)])

    def test_triples_sorted_and_deduped(self):
        h = Hypergraph3(4, [(2, 1, 0), (0, 1, 2), (1, 2, 3)])
        assert list(h.triples()) == [(0, 1, 2), (1, 2, 3)]
        assert h.num_triples == 2


class TestTrianglesToHypergraph:
    def test_blow_up_of_edge_with_t2(self):
        gb, _ = blow_up(Graph(2, [(0, 1)]), 2)
        h = triangles_to_hypergraph(gb)
        assert set(h.triples()) == {(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)}
        assert h.cluster_map == [0, 0, 1, 1]

    def test_triangle_free_graph_is_empty(self):
        g = Graph(6, [(i, (i + 1) % 6) for i in range(6)])
        assert triangles_to_hypergraph(g).num_triples == 0

    def test_matches_cubic_oracle(self):
        rng = random.Random(5)
        for trial in range(25):
            n = rng.randint(8, 30)
            edges = [
                (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.25
            ]
            g = Graph(n, edges)
            oracle = {
                (a, b, c)
                for a, b, c in itertools.combinations(range(n), 3)
                if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)
            }
            assert set(triangles_to_hypergraph(g).triples()) == oracle


class TestTwoColoring:
    def test_rejects_partial(self):
        h = complete_h3(4)
        with pytest.raises(ValueError):
            TwoColoring(h, {pack3(0, 1, 2): BLUE})

    def test_rejects_unknown_triple(self):
        h = Hypergraph3(4, [(0, 1, 2)])
        with pytest.raises(ValueError):
            TwoColoring(h, {pack3(0, 1, 2): BLUE, pack3(0, 1, 3): RED})

    def test_query_outside_host_raises(self):
        h = Hypergraph3(4, [(0, 1, 2)])
        c = all_blue(h)
        with pytest.raises(KeyError):
            c.of(0, 1, 3)

    def test_swapped_is_involution(self):
        h = complete_h3(5)
        c = uniform_random(h, 0.5, 17)
        double = c.swapped().swapped()
        assert all(double.of(*t) == c.of(*t) for t in h.triples())


class TestValidateTightPath:
    def test_all_blue_k5_passes(self):
        h = complete_h3(5)
        c = all_blue(h)
        assert validate_tight_path(h, c, TightPath3((0, 1, 2, 3, 4)), BLUE)

    def test_wrong_colour_fails_at_first_window(self):
        h = complete_h3(5)
        c = all_blue(h)
        res = validate_tight_path(h, c, TightPath3((0, 1, 2, 3, 4)), RED)
        assert not res and res.index == 0

    def test_missing_window_fails(self):
        h = Hypergraph3(4, [(0, 1, 2)])
        c = all_blue(h)
        res = validate_tight_path(h, c, TightPath3((0, 1, 2, 3)), BLUE)
        assert not res

    def test_repeat_vertex_fails(self):
        h = complete_h3(5)
        res = validate_tight_path(h, all_blue(h), TightPath3((0, 1, 2, 0)), BLUE)
        assert not res

    def test_degenerate_short_paths_pass(self):
        # Sequences shorter than one window carry no edges by convention.
        h = complete_h3(4)
        c = all_blue(h)
        assert validate_tight_path(h, c, TightPath3(()), BLUE)
        assert validate_tight_path(h, c, TightPath3((2,)), RED)
        assert validate_tight_path(h, c, TightPath3((1, 3)), RED)

    @settings(max_examples=40, deadline=None)
    @given(st.permutations(list(range(6))))
    def test_label_invariance(self, perm):
        h = complete_h3(6)
        c = uniform_random(h, 0.5, 23)
        path = TightPath3((0, 1, 2, 3))
        original = validate_tight_path(h, c, path, BLUE)
        relabelled_path = TightPath3(tuple(perm[v] for v in path.vertices))
        mapping = {
            pack3(perm[a], perm[b], perm[d]): c.of(a, b, d) for a, b, d in h.triples()
        }
        relabelled_c = TwoColoring(h, mapping)
        assert bool(validate_tight_path(h, relabelled_c, relabelled_path, BLUE)) == bool(original)


class TestFindMonoClique:
    def test_monochromatic_cluster_returns_prefix(self):
        h = complete_h3(6)
        c = all_blue(h)
        assert find_mono_clique(h, c, (0, 1, 2, 3, 4, 5), 4) == (BLUE, (0, 1, 2, 3))

    def test_single_candidate_mixed_fails(self):
        h = complete_h3(4)
        mapping = {t: BLUE for t in h.triples()}
        mapping[(0, 1, 2)] = RED
        c = colour_by_map(h, mapping)
        assert find_mono_clique(h, c, (0, 1, 2, 3), 4) is None

    def test_requires_cluster_triples_present(self):
        h = Hypergraph3(4, [(0, 1, 2)])
        with pytest.raises(ValueError):
            find_mono_clique(h, all_blue(h), (0, 1, 2, 3), 3)

    def test_matches_exhaustive_subset_oracle(self):
        h = complete_h3(7)
        cluster = tuple(range(7))
        for trial in range(200):
            c = uniform_random(h, 0.5, 3000 + trial)
            got = find_mono_clique(h, c, cluster, 4)
            candidates = []
            for sub in itertools.combinations(cluster, 4):
                colours = {c.of(*t) for t in itertools.combinations(sub, 3)}
                if len(colours) == 1:
                    candidates.append((colours.pop(), sub))
            if got is None:
                assert not candidates
            else:
                assert got[1] == min(sub for _, sub in candidates)
                assert (got[0], got[1]) in candidates
                for t in itertools.combinations(got[1], 3):
                    assert c.of(*t) == got[0]


def dfs_longest_mono(h: Hypergraph3, c: TwoColoring, colour: str, cap: int) -> int:
    """Sequence-by-sequence reference search (tiny hosts only)."""
    n = h.num_vertices
    best = min(2, n, cap) if n else 0

    def extend(path: list[int], used: set[int]):
        nonlocal best
        best = max(best, len(path))
        if len(path) >= cap:
            return
        for v in range(n):
            if v in used:
                continue
            if len(path) >= 2:
                a, b = path[-2], path[-1]
                if not h.has(a, b, v) or c.of(a, b, v) != colour:
                    continue
            path.append(v)
            used.add(v)
            extend(path, used)
            path.pop()
            used.discard(v)

    extend([], set())
    return best


class TestBruteForceOracle:
    def test_all_blue_k4(self):
        h = complete_h3(4)
        colour, path = brute_force_longest_mono_tight_path(h, all_blue(h), cap=4)
        assert colour == BLUE and len(path) == 4
        assert validate_tight_path(h, all_blue(h), path, BLUE)

    def test_no_triples_reports_degenerate_pair(self):
        h = Hypergraph3(5, [])
        colour, path = brute_force_longest_mono_tight_path(h, all_blue(h), cap=5)
        assert len(path) == 2

    def test_respects_cap(self):
        h = complete_h3(6)
        _, path = brute_force_longest_mono_tight_path(h, all_blue(h), cap=4)
        assert len(path) == 4

    def test_rejects_large_hosts(self):
        with pytest.raises(ValueError):
            brute_force_longest_mono_tight_path(complete_h3(16), None, cap=3)

    def test_result_revalidates_on_random_colourings(self):
        h = complete_h3(7)
        for trial in range(25):
            c = uniform_random(h, 0.5, 500 + trial)
            colour, path = brute_force_longest_mono_tight_path(h, c, cap=7)
            assert len(path) >= 2
            assert validate_tight_path(h, c, path, colour)

    def test_matches_sequence_search_on_tiny_hosts(self):
        rng = random.Random(12)
        for trial in range(20):
            n = rng.randint(4, 7)
            triples = [
                t for t in itertools.combinations(range(n), 3) if rng.random() < 0.7
            ]
            h = Hypergraph3(n, triples)
            c = uniform_random(h, 0.6, 800 + trial) if triples else all_blue(h)
            colour, path = brute_force_longest_mono_tight_path(h, c, cap=n)
            reference = max(
                dfs_longest_mono(h, c, BLUE, n), dfs_longest_mono(h, c, RED, n)
            )
            assert len(path) == reference


class TestLift:
    def test_r3_is_identity(self):
        p = TightPath3((0, 1, 2, 3))
        lifted = lift_to_r_uniform(p, 3)
        assert lifted.blocks == ((0,), (1,), (2,), (3,))
        assert lifted.edges == ((0, 1, 2), (1, 2, 3))

    def test_r6_on_four_vertices(self):
        lifted = lift_to_r_uniform(TightPath3((0, 1, 2, 3)), 6)
        assert lifted.num_vertices == 8
        assert len(lifted.edges) == 2
        assert len(set(lifted.edges[0]) & set(lifted.edges[1])) == 4

    def test_rejects_bad_r(self):
        with pytest.raises(ValueError):
            lift_to_r_uniform(TightPath3((0, 1, 2)), 7)

    def test_independent_validator_accepts_r9(self):
        rng = random.Random(2)
        for trial in range(30):
            m = rng.randint(3, 10)
            p = TightPath3(tuple(rng.sample(range(50), m)))
            lifted = lift_to_r_uniform(p, 9)
            assert validate_l_path(lifted.edges, 9, 6, lifted.vertex_order) is None

    def test_validator_flags_wrong_overlap(self):
        lifted = lift_to_r_uniform(TightPath3((0, 1, 2, 3, 4)), 6)
        broken = list(lifted.edges)
        broken[1] = tuple(v + lifted.num_vertices for v in broken[1])
        order = lifted.vertex_order + tuple(
            v + lifted.num_vertices for v in broken[1]
        )
        assert validate_l_path(broken, 6, 4, order) is not None
