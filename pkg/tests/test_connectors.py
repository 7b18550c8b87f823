"""Connector gadget detection against brute-force tuple enumeration."""

import itertools
import random

import pytest

from tightpath import (
    BLUE,
    RED,
    ClusterFamily,
    ConnectorScope,
    Graph,
    Hypergraph3,
    TwoColoring,
    blow_up,
    build_auxiliary_f,
    complete_graph,
    find_c22,
    find_c212,
    find_disjoint_triple,
    scan_role_connectors,
    triangles_to_hypergraph,
    validate_connector,
)
from tightpath.colourers import all_blue, all_red, uniform_random
from tightpath.packing import pack3


def cluster_host(num_clusters: int, size: int):
    """Blow up a complete graph so all cross-cluster triples exist."""
    gb, _ = blow_up(complete_graph(num_clusters), size)
    h = triangles_to_hypergraph(gb)
    clusters = [tuple(range(i * size, (i + 1) * size)) for i in range(num_clusters)]
    return h, clusters


def oracle_c22(h, c, role, cu, cv) -> bool:
    for x1, x2 in itertools.permutations(cu, 2):
        for y1, y2 in itertools.permutations(cv, 2):
            if (
                h.has(x1, x2, y1)
                and c.of(x1, x2, y1) == role
                and h.has(y1, y2, x1)
                and c.of(y1, y2, x1) == role
            ):
                return True
    return False


def oracle_c212(h, c, role, cu, cv, cw) -> bool:
    for x1, x2 in itertools.permutations(cu, 2):
        for z in cw:
            for y1, y2 in itertools.permutations(cv, 2):
                if (
                    h.has(x1, x2, z)
                    and c.of(x1, x2, z) == role
                    and h.has(x1, z, y1)
                    and c.of(x1, z, y1) == role
                    and h.has(z, y1, y2)
                    and c.of(z, y1, y2) == role
                ):
                    return True
    return False


class TestFindC22:
    def test_all_role_returns_least(self):
        h, clusters = cluster_host(2, 3)
        conn = find_c22(h, all_blue(h), BLUE, clusters[0], clusters[1])
        assert conn is not None
        assert conn.x_side == (0, 1) and conn.y_side == (3, 4)
        assert validate_connector(h, all_blue(h), BLUE, conn) is None

    def test_opposite_coloured_cross_is_absent(self):
        h, clusters = cluster_host(2, 3)
        cmap = h.cluster_map
        col = TwoColoring.from_rule(
            h, lambda a, b, c: BLUE if cmap[a] == cmap[b] == cmap[c] else RED
        )
        assert find_c22(h, col, BLUE, clusters[0], clusters[1]) is None

    def test_rejects_overlapping_clusters(self):
        h, clusters = cluster_host(2, 3)
        with pytest.raises(ValueError):
            find_c22(h, all_blue(h), BLUE, clusters[0], clusters[0])

    def test_existence_symmetric_in_cluster_order(self):
        h, clusters = cluster_host(2, 4)
        for trial in range(60):
            col = uniform_random(h, 0.5, trial)
            lhs = find_c22(h, col, BLUE, clusters[0], clusters[1]) is not None
            rhs = find_c22(h, col, BLUE, clusters[1], clusters[0]) is not None
            assert lhs == rhs

    def test_matches_enumeration_oracle(self):
        h, clusters = cluster_host(2, 4)
        for trial in range(80):
            col = uniform_random(h, 0.45, 900 + trial)
            got = find_c22(h, col, BLUE, clusters[0], clusters[1])
            assert (got is not None) == oracle_c22(h, col, BLUE, clusters[0], clusters[1])
            if got is not None:
                assert validate_connector(h, col, BLUE, got) is None


class TestFindC212:
    def test_all_role_returns_least(self):
        h, clusters = cluster_host(3, 3)
        conn = find_c212(h, all_blue(h), BLUE, clusters[0], clusters[1], clusters[2])
        assert conn is not None
        assert conn.x_side == (0, 1) and conn.z == 6 and conn.y_side == (3, 4)

    def test_empty_middle_is_absent(self):
        h, clusters = cluster_host(3, 3)
        assert find_c212(h, all_blue(h), BLUE, clusters[0], clusters[1], ()) is None

    def test_matches_enumeration_oracle(self):
        h, clusters = cluster_host(3, 3)
        for trial in range(60):
            col = uniform_random(h, 0.55, 2000 + trial)
            got = find_c212(h, col, BLUE, clusters[0], clusters[1], clusters[2])
            assert (got is not None) == oracle_c212(
                h, col, BLUE, clusters[0], clusters[1], clusters[2]
            )


def oracle_disjoint_triple(h, c, role, kind, clusters) -> bool:
    """All single connectors, then any 3 pairwise disjoint."""
    if kind == "c66":
        singles = [
            (x1, x2, y1, y2)
            for x1, x2 in itertools.permutations(clusters[0], 2)
            for y1, y2 in itertools.permutations(clusters[1], 2)
            if h.has(x1, x2, y1)
            and c.of(x1, x2, y1) == role
            and h.has(y1, y2, x1)
            and c.of(y1, y2, x1) == role
        ]
    else:
        singles = [
            (x1, x2, z, y1, y2)
            for x1, x2 in itertools.permutations(clusters[0], 2)
            for z in clusters[2]
            for y1, y2 in itertools.permutations(clusters[1], 2)
            if h.has(x1, x2, z)
            and c.of(x1, x2, z) == role
            and h.has(x1, z, y1)
            and c.of(x1, z, y1) == role
            and h.has(z, y1, y2)
            and c.of(z, y1, y2) == role
        ]
    for a, b, d in itertools.combinations(singles, 3):
        if not (set(a) & set(b)) and not (set(a) & set(d)) and not (set(b) & set(d)):
            return True
    return False


class TestFindDisjointTriple:
    def test_all_role_on_size_six(self):
        h, clusters = cluster_host(2, 6)
        conn = find_disjoint_triple(h, all_blue(h), BLUE, "c66", clusters)
        assert conn is not None and len(conn.parts) == 3
        verts = [p.vertices() for p in conn.parts]
        assert not (verts[0] & verts[1]) and not (verts[0] & verts[2]) and not (verts[1] & verts[2])
        assert validate_connector(h, all_blue(h), BLUE, conn) is None

    def test_size_four_clusters_cannot_host_c66(self):
        h, clusters = cluster_host(2, 4)
        assert find_disjoint_triple(h, all_blue(h), BLUE, "c66", clusters) is None

    def test_c636_needs_three_middles(self):
        h, clusters = cluster_host(3, 6)
        conn = find_disjoint_triple(h, all_blue(h), BLUE, "c636", clusters)
        assert conn is not None
        middles = {p.z for p in conn.parts}
        assert len(middles) == 3

    def test_c636_absent_when_middle_too_small(self):
        gb, _ = blow_up(complete_graph(3), 6)
        # shrink the middle cluster to 2 vertices
        h = triangles_to_hypergraph(gb)
        clusters = (tuple(range(0, 6)), tuple(range(6, 12)), (12, 13))
        assert find_disjoint_triple(h, all_blue(h), BLUE, "c636", clusters) is None

    def test_matches_exhaustive_oracle_on_small_clusters(self):
        h, clusters = cluster_host(2, 5)
        for trial in range(25):
            col = uniform_random(h, 0.7, 4000 + trial)
            got = find_disjoint_triple(h, col, BLUE, "c66", clusters)
            assert (got is not None) == oracle_disjoint_triple(h, col, BLUE, "c66", clusters)


class TestBuildAuxiliaryF:
    def test_monochromatic_role_gives_complete_scope(self):
        h, clusters = cluster_host(3, 6)
        family = ClusterFamily(BLUE, {i: clusters[i] for i in range(3)})
        scope = ConnectorScope(
            pairs=((0, 1), (0, 2), (1, 2)),
            triples=((0, 1, 2), (0, 2, 1), (1, 2, 0)),
        )
        f = build_auxiliary_f(h, all_blue(h), BLUE, family, scope)
        assert len(f.two_edges) == 3
        assert len(f.three_edges) == 3

    def test_opposite_monochromatic_is_empty(self):
        h, clusters = cluster_host(3, 6)
        family = ClusterFamily(BLUE, {i: clusters[i] for i in range(3)})
        scope = ConnectorScope(pairs=((0, 1),), triples=((0, 1, 2),))
        f = build_auxiliary_f(h, all_red(h), BLUE, family, scope)
        assert f.num_edges == 0

    def test_rejects_unknown_scope_cluster(self):
        h, clusters = cluster_host(2, 6)
        family = ClusterFamily(BLUE, {0: clusters[0], 1: clusters[1]})
        with pytest.raises(ValueError):
            build_auxiliary_f(
                h, all_blue(h), BLUE, family, ConnectorScope(pairs=((0, 7),), triples=())
            )

    def test_edges_match_pointwise_gadget_search(self):
        h, clusters = cluster_host(3, 6)
        family = ClusterFamily(BLUE, {i: clusters[i] for i in range(3)})
        pairs = ((0, 1), (0, 2), (1, 2))
        triples = ((0, 1, 2), (0, 2, 1), (1, 2, 0))
        for trial in range(8):
            col = uniform_random(h, 0.8, 600 + trial)
            f = build_auxiliary_f(h, col, BLUE, family, ConnectorScope(pairs, triples))
            for u, v in pairs:
                expected = (
                    find_disjoint_triple(h, col, BLUE, "c66", (clusters[u], clusters[v]))
                    is not None
                )
                assert f.has2(u, v) == expected
            for u, v, w in triples:
                expected = (
                    find_disjoint_triple(
                        h, col, BLUE, "c636", (clusters[u], clusters[v], clusters[w])
                    )
                    is not None
                )
                assert f.has3(u, v, w) == expected

    def test_monotone_in_role_triples(self):
        # Recolouring one triple to the role colour never removes edges.
        h, clusters = cluster_host(2, 6)
        family = ClusterFamily(BLUE, {0: clusters[0], 1: clusters[1]})
        scope = ConnectorScope(pairs=((0, 1),), triples=())
        rng = random.Random(8)
        for trial in range(10):
            col = uniform_random(h, 0.75, 700 + trial)
            before = build_auxiliary_f(h, col, BLUE, family, scope)
            mapping = col.materialize()
            red_codes = [code for code, colr in mapping.items() if colr == RED]
            if not red_codes:
                continue
            mapping[rng.choice(red_codes)] = BLUE
            after = build_auxiliary_f(h, TwoColoring(h, mapping), BLUE, family, scope)
            assert before.two_edges <= after.two_edges


class TestScanRoleConnectors:
    def test_agrees_with_detectors(self):
        h, clusters = cluster_host(3, 4)
        for trial in range(60):
            col = uniform_random(h, 0.5, 5000 + trial)
            finding = scan_role_connectors(h, col, BLUE, clusters)
            c22_any = any(
                find_c22(h, col, BLUE, a, b) is not None
                for a, b in itertools.combinations(clusters, 2)
            )
            c212_any = any(
                find_c212(h, col, BLUE, a, b, m) is not None
                for a, b, m in itertools.permutations(clusters, 3)
            )
            assert (finding is not None) == (c22_any or c212_any)

    def test_accepts_precomputed_role_triples(self):
        h, clusters = cluster_host(2, 3)
        blues = {pack3(0, 1, 3), pack3(3, 4, 0)}
        finding = scan_role_connectors(h, None, BLUE, clusters, blue_triples=blues)
        assert finding is not None and finding[0] == "c22"

    def test_rejects_overlapping_clusters(self):
        h, clusters = cluster_host(2, 3)
        with pytest.raises(ValueError):
            scan_role_connectors(h, all_blue(h), BLUE, [clusters[0], clusters[0]])
