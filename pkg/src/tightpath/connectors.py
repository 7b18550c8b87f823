"""Connector gadgets between monochromatic clusters.

A (2,2)-connector between clusters A and B is four vertices
x1, x2 in A and y1, y2 in B whose triples x1x2y1 and y1y2x1 exist and
carry the role colour; a (2,1,2)-connector additionally routes through a
middle vertex z with triples x1x2z, x1zy1, zy1y2.  Their disjoint
triples ((6,6) and (6,3,6)) are three pairwise vertex-disjoint copies,
including the middle vertices.

Detection is exhaustive and lexicographic, so results are reproducible;
``scan_role_connectors`` is a bitmask-based existence sweep for larger
cluster families, used to verify adversarial colourings and
cross-checked against the per-pair detectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .hypergraph import Hypergraph3, TwoColoring
from .packing import pack3, unpack3


@dataclass(frozen=True)
class Connector:
    """kind is one of c22, c212, c66, c636; compound kinds carry their
    three disjoint parts."""

    kind: str
    x_side: tuple[int, ...] = ()
    y_side: tuple[int, ...] = ()
    z: Optional[int] = None
    clusters: tuple[int, ...] = ()
    parts: tuple["Connector", ...] = field(default=())

    def vertices(self) -> set[int]:
        if self.parts:
            out: set[int] = set()
            for p in self.parts:
                out |= p.vertices()
            return out
        verts = set(self.x_side) | set(self.y_side)
        if self.z is not None:
            verts.add(self.z)
        return verts

    def triples(self) -> list[tuple[int, int, int]]:
        if self.parts:
            return [t for p in self.parts for t in p.triples()]
        x1, x2 = self.x_side
        y1, y2 = self.y_side
        if self.kind == "c22":
            return [(x1, x2, y1), (y1, y2, x1)]
        if self.kind == "c212":
            return [(x1, x2, self.z), (x1, self.z, y1), (self.z, y1, y2)]
        raise ValueError(f"unknown simple kind {self.kind}")


@dataclass(frozen=True)
class ClusterFamily:
    """Monochromatic cliques selected inside blow-up clusters, keyed by
    origin vertex.  ``role`` names the colour that plays blue."""

    role: str
    clusters: dict[int, tuple[int, ...]]

    def __post_init__(self):
        seen: set[int] = set()
        for origin, verts in self.clusters.items():
            vs = set(verts)
            if len(vs) != len(verts):
                raise ValueError(f"cluster {origin} repeats vertices")
            if seen & vs:
                raise ValueError(f"cluster {origin} overlaps another cluster")
            seen |= vs

    def origins(self) -> list[int]:
        return sorted(self.clusters)

    def validate_mono(self, h: Hypergraph3, c: TwoColoring) -> Optional[str]:
        """Check every internal triple of every cluster exists and carries
        the role colour; returns the first violation or None."""
        for origin in self.origins():
            for a, b, d in itertools.combinations(sorted(self.clusters[origin]), 3):
                if not h.has(a, b, d):
                    return f"cluster {origin}: triple ({a},{b},{d}) missing"
                if c.of(a, b, d) != self.role:
                    return f"cluster {origin}: triple ({a},{b},{d}) not {self.role}"
        return None


def _role_triple(h: Hypergraph3, c: TwoColoring, role: str, a: int, b: int, d: int) -> bool:
    return h.has(a, b, d) and c.of(a, b, d) == role


def _check_disjoint(*clusters: Sequence[int]) -> None:
    seen: set[int] = set()
    for cl in clusters:
        s = set(cl)
        if seen & s:
            raise ValueError("clusters must be pairwise disjoint")
        seen |= s


def enumerate_c22(
    h: Hypergraph3,
    c: TwoColoring,
    role: str,
    cluster_u: Sequence[int],
    cluster_v: Sequence[int],
    banned: frozenset[int] = frozenset(),
) -> Iterable[Connector]:
    """Yield (2,2)-connectors in lexicographic (x1, x2, y1, y2) order,
    skipping any that touch ``banned`` vertices."""
    us = [x for x in sorted(cluster_u) if x not in banned]
    vs = [y for y in sorted(cluster_v) if y not in banned]
    for x1 in us:
        for x2 in us:
            if x2 == x1:
                continue
            for y1 in vs:
                if not _role_triple(h, c, role, x1, x2, y1):
                    continue
                for y2 in vs:
                    if y2 == y1:
                        continue
                    if _role_triple(h, c, role, y1, y2, x1):
                        yield Connector(kind="c22", x_side=(x1, x2), y_side=(y1, y2))


def enumerate_c212(
    h: Hypergraph3,
    c: TwoColoring,
    role: str,
    cluster_u: Sequence[int],
    cluster_v: Sequence[int],
    cluster_w: Sequence[int],
    banned: frozenset[int] = frozenset(),
) -> Iterable[Connector]:
    """Yield (2,1,2)-connectors through ``cluster_w`` in lexicographic
    (x1, x2, z, y1, y2) order."""
    us = [x for x in sorted(cluster_u) if x not in banned]
    vs = [y for y in sorted(cluster_v) if y not in banned]
    ws = [z for z in sorted(cluster_w) if z not in banned]
    for x1 in us:
        for x2 in us:
            if x2 == x1:
                continue
            for z in ws:
                if not _role_triple(h, c, role, x1, x2, z):
                    continue
                for y1 in vs:
                    if not _role_triple(h, c, role, x1, z, y1):
                        continue
                    for y2 in vs:
                        if y2 == y1:
                            continue
                        if _role_triple(h, c, role, z, y1, y2):
                            yield Connector(kind="c212", x_side=(x1, x2), y_side=(y1, y2), z=z)


def find_c22(
    h: Hypergraph3,
    c: TwoColoring,
    role: str,
    cluster_u: Sequence[int],
    cluster_v: Sequence[int],
) -> Optional[Connector]:
    """Lexicographically least (2,2)-connector, or None."""
    _check_disjoint(cluster_u, cluster_v)
    return next(iter(enumerate_c22(h, c, role, cluster_u, cluster_v)), None)


def find_c212(
    h: Hypergraph3,
    c: TwoColoring,
    role: str,
    cluster_u: Sequence[int],
    cluster_v: Sequence[int],
    cluster_w: Sequence[int],
) -> Optional[Connector]:
    """Lexicographically least (2,1,2)-connector through cluster_w, or None."""
    _check_disjoint(cluster_u, cluster_v, cluster_w)
    return next(iter(enumerate_c212(h, c, role, cluster_u, cluster_v, cluster_w)), None)


def find_disjoint_triple(
    h: Hypergraph3,
    c: TwoColoring,
    role: str,
    kind: str,
    clusters: Sequence[Sequence[int]],
) -> Optional[Connector]:
    """Three pairwise vertex-disjoint copies of a connector between the
    same clusters: kind "c66" over (cluster_u, cluster_v), kind "c636"
    over (cluster_u, cluster_v, cluster_w).

    Backtracking over the lexicographic enumeration, exhaustive within
    the clusters; middles count towards disjointness.  Three disjoint
    copies take 6 vertices per side (and 3 middles), so undersized
    clusters short-circuit to absence -- without this, dense
    role-coloured instances make the backtracking hopeless.
    """
    if kind == "c66":
        if len(clusters) != 2:
            raise ValueError("c66 needs exactly two clusters")
        if min(len(set(cl)) for cl in clusters) < 6:
            return None
        enum = lambda banned: enumerate_c22(h, c, role, clusters[0], clusters[1], banned)
    elif kind == "c636":
        if len(clusters) != 3:
            raise ValueError("c636 needs exactly three clusters")
        if len(set(clusters[0])) < 6 or len(set(clusters[1])) < 6 or len(set(clusters[2])) < 3:
            return None
        enum = lambda banned: enumerate_c212(
            h, c, role, clusters[0], clusters[1], clusters[2], banned
        )
    else:
        raise ValueError(f"unknown compound kind {kind}")
    _check_disjoint(*clusters)

    def search(banned: frozenset[int], parts: list[Connector]) -> Optional[tuple[Connector, ...]]:
        if len(parts) == 3:
            return tuple(parts)
        for cand in enum(banned):
            parts.append(cand)
            got = search(banned | frozenset(cand.vertices()), parts)
            if got is not None:
                return got
            parts.pop()
        return None

    found = search(frozenset(), [])
    if found is None:
        return None
    return Connector(kind=kind, parts=found)


def validate_connector(
    h: Hypergraph3, c: TwoColoring, role: str, conn: Connector
) -> Optional[str]:
    """Re-check a connector: all defining triples exist and carry the
    role colour; compound parts are pairwise vertex-disjoint."""
    for a, b, d in conn.triples():
        if not h.has(a, b, d):
            return f"triple ({a},{b},{d}) missing"
        if c.of(a, b, d) != role:
            return f"triple ({a},{b},{d}) not {role}"
    if conn.parts:
        seen: set[int] = set()
        for p in conn.parts:
            vs = p.vertices()
            if seen & vs:
                return "compound parts overlap"
            seen |= vs
    return None


@dataclass(frozen=True)
class ConnectorScope:
    """Which cluster pairs and (pair, middle) triples to test when
    assembling the auxiliary structure; callers restrict this to pairs
    and triangles of the relevant power graph."""

    pairs: tuple[tuple[int, int], ...]
    triples: tuple[tuple[int, int, int], ...]  # (u, v, middle)


def build_auxiliary_f(
    h: Hypergraph3,
    c: TwoColoring,
    role: str,
    family: ClusterFamily,
    scope: ConnectorScope,
):
    """Assemble the auxiliary (2,3)-graph on the family's origin
    vertices: a 2-edge uv where a (6,6)-connector exists between the
    clusters of u and v, a 3-edge uv(w) where a (6,3,6)-connector exists
    through the cluster of w."""
    from .two_three import TwoThreeGraph

    known = family.clusters
    for pair in scope.pairs:
        for origin in pair:
            if origin not in known:
                raise ValueError(f"scope references unknown cluster {origin}")
    for tri in scope.triples:
        for origin in tri:
            if origin not in known:
                raise ValueError(f"scope references unknown cluster {origin}")
    two_edges = []
    for u, v in scope.pairs:
        if find_disjoint_triple(h, c, role, "c66", (known[u], known[v])) is not None:
            two_edges.append((u, v))
    three_edges = []
    for u, v, w in scope.triples:
        if find_disjoint_triple(h, c, role, "c636", (known[u], known[v], known[w])) is not None:
            three_edges.append((u, v, w))
    n = max(known) + 1 if known else 0
    return TwoThreeGraph(n, two_edges, three_edges)


def scan_role_connectors(
    h: Hypergraph3,
    c: Optional[TwoColoring],
    role: str,
    clusters: Sequence[Sequence[int]],
    blue_triples: Optional[set[int]] = None,
) -> Optional[tuple]:
    """Existence sweep for any role-coloured (2,2)- or (2,1,2)-connector
    among the given clusters, over all cluster pairs and all middle
    placements.

    ``blue_triples`` may supply the packed role-coloured cross-cluster
    triples directly (e.g. computed vectorised by a colouring
    generator); otherwise they are enumerated here.  Returns a finding
    tuple ("c22", pi, pj, x1, y1) or ("c212", pi, pj, pm, x1, z, y1), or
    None when the family is connector-free.

    The sweep works on per-pair bitmasks: for a cross pair (a, b), the
    mask holds all third vertices x with a role-coloured triple abx.  A
    (2,2)-connector at axis (x1, y1) needs that mask to hit both
    clusters minus the axis; a (2,1,2)-connector chains two masks
    through the middle vertex.
    """
    verts = sorted(set().union(*[set(cl) for cl in clusters]))
    if sum(len(set(cl)) for cl in clusters) != len(verts):
        raise ValueError("clusters must be pairwise disjoint")
    index = {v: i for i, v in enumerate(verts)}
    nloc = len(verts)
    cluster_of = {}
    for ci, cl in enumerate(clusters):
        for v in cl:
            cluster_of[index[v]] = ci
    cluster_bits = [0] * len(clusters)
    for li, ci in cluster_of.items():
        cluster_bits[ci] |= 1 << li

    masks = [0] * (nloc * nloc)
    if blue_triples is None:
        blue_triples = set()
        for a, b, d in itertools.combinations(verts, 3):
            la, lb, ld = index[a], index[b], index[d]
            if cluster_of[la] == cluster_of[lb] == cluster_of[ld]:
                continue
            if _role_triple(h, c, role, a, b, d):
                blue_triples.add(pack3(a, b, d))
    for code in blue_triples:
        a, b, d = unpack3(code)
        if a not in index or b not in index or d not in index:
            continue
        la, lb, ld = index[a], index[b], index[d]
        if cluster_of[la] == cluster_of[lb] == cluster_of[ld]:
            continue
        for p, q, r in ((la, lb, ld), (la, ld, lb), (lb, ld, la)):
            if cluster_of[p] != cluster_of[q]:
                masks[p * nloc + q] |= 1 << r
                masks[q * nloc + p] |= 1 << r

    members = [sorted(i for i in cluster_of if cluster_of[i] == ci) for ci in range(len(clusters))]

    # (2,2)-connectors over every unordered cluster pair.
    for ci in range(len(clusters)):
        for cj in range(ci + 1, len(clusters)):
            bi, bj = cluster_bits[ci], cluster_bits[cj]
            for x1 in members[ci]:
                row = x1 * nloc
                for y1 in members[cj]:
                    m = masks[row + y1]
                    if m & (bi ^ (1 << x1)) and m & (bj ^ (1 << y1)):
                        return ("c22", ci, cj, verts[x1], verts[y1])

    # (2,1,2)-connectors: sides symmetric, so each middle is tested once
    # per unordered side pair.
    for cm in range(len(clusters)):
        bm = cluster_bits[cm]
        for ci in range(len(clusters)):
            if ci == cm:
                continue
            for cj in range(ci + 1, len(clusters)):
                if cj == cm:
                    continue
                bi, bj = cluster_bits[ci], cluster_bits[cj]
                for x1 in members[ci]:
                    row = x1 * nloc
                    for z in members[cm]:
                        m1 = masks[row + z]
                        if not (m1 & (bi ^ (1 << x1))):
                            continue
                        ys = m1 & bj
                        zrow = z * nloc
                        while ys:
                            low = ys & -ys
                            y1 = low.bit_length() - 1
                            ys ^= low
                            if masks[zrow + y1] & (bj ^ low):
                                return ("c212", ci, cj, cm, verts[x1], verts[z], verts[y1])
    return None
