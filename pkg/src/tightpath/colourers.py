"""Colouring strategies for experiments and adversarial tests.

Colours are derived from a 64-bit mix of (seed, packed triple), so every
strategy is deterministic per seed and cheap enough to evaluate lazily
on hosts with hundreds of thousands of triples.  ``WindowAdversary``
builds connector-free colourings by construction (shape and orientation
rules); the test suite verifies that independently with the connector
scanners.
"""

from __future__ import annotations

import itertools
import random
from typing import Optional, Sequence

import numpy as np

from .connectors import ClusterFamily, scan_role_connectors
from .hypergraph import BLUE, RED, Hypergraph3, TwoColoring, other_colour
from .packing import pack3, unpack3

_M64 = (1 << 64) - 1
_MIX = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    x = (x + _MIX) & _M64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return z ^ (z >> 31)


def splitmix64_np(x: np.ndarray) -> np.ndarray:
    x = (x + np.uint64(_MIX)).astype(np.uint64)
    z = x
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def derive_seed(seed: int, index: int) -> int:
    """Stable per-trial seed derivation (independent of PYTHONHASHSEED)."""
    return splitmix64((seed & _M64) ^ splitmix64(index & _M64))


def _threshold(p: float) -> int:
    if not (0.0 <= p <= 1.0):
        raise ValueError("probability must lie in [0, 1]")
    return 1 << 64 if p >= 1.0 else int(p * 2**64)


def _hash_hit(seed: int, packed: int, threshold: int) -> bool:
    return splitmix64((seed & _M64) ^ packed) < threshold


def all_blue(h: Hypergraph3) -> TwoColoring:
    return TwoColoring.from_rule(h, lambda a, b, c: BLUE)


def all_red(h: Hypergraph3) -> TwoColoring:
    return TwoColoring.from_rule(h, lambda a, b, c: RED)


def uniform_random(h: Hypergraph3, p_blue: float, seed: int) -> TwoColoring:
    """Each triple blue independently with probability p_blue."""
    thresh = _threshold(p_blue)
    return TwoColoring.from_rule(
        h, lambda a, b, c: BLUE if _hash_hit(seed, pack3(a, b, c), thresh) else RED
    )


def cluster_mixer(h: Hypergraph3, cluster_map: Sequence[int], seed: int) -> TwoColoring:
    """Adversary that keeps every cluster internally mixed: intra-cluster
    triples are coloured by vertex-sum parity (so clusters of >= 4
    vertices contain both colours), cross triples at random."""
    thresh = _threshold(0.5)

    def rule(a: int, b: int, c: int) -> str:
        if cluster_map[a] == cluster_map[b] == cluster_map[c]:
            return BLUE if (a + b + c) % 2 == 0 else RED
        return BLUE if _hash_hit(seed, pack3(a, b, c), thresh) else RED

    return TwoColoring.from_rule(h, rule)


def colour_connector_killer(h: Hypergraph3, family: ClusterFamily, seed: int) -> TwoColoring:
    """Greedy adversary: intra-cluster triples keep the role colour (so
    the clusters stay monochromatic cliques), then cross-cluster triples
    are visited in seed-shuffled order and made role-coloured unless
    that would complete a (2,2)- or (2,1,2)-connector with the role
    triples committed so far, in which case they are flipped.

    Each tentative insertion checks every connector pattern that could
    contain the candidate triple, so no role connector ever completes;
    callers are expected to confirm that with the detectors rather than
    trust this note.  Triples outside the family get the opposite
    colour.
    """
    role = family.role
    anti = other_colour(role)
    origins = family.origins()
    cluster_of: dict[int, int] = {}
    for ci, origin in enumerate(origins):
        for v in family.clusters[origin]:
            cluster_of[v] = ci
    members = [tuple(sorted(family.clusters[o])) for o in origins]
    n_clusters = len(members)
    committed: set[int] = set()

    def is_role(x: int, y: int, z: int) -> bool:
        return pack3(x, y, z) in committed

    def pair_shape_completes(p1: int, p2: int, s: int, ca: int, cb: int) -> bool:
        others_b = [v for v in members[cb] if v != s]
        # C22 between the pair's cluster and the singleton's: both
        # orientations of the candidate reduce to the same partner
        # query {s, other-of-B, pair-vertex}.
        for x1 in (p1, p2):
            if any(is_role(s, y2, x1) for y2 in others_b):
                return True
        # C212 with the singleton's cluster as middle; the far side
        # ranges over every other cluster.
        for cc in range(n_clusters):
            if cc in (ca, cb):
                continue
            far = members[cc]
            for x1 in (p1, p2):  # candidate as x1 x2 z
                for y1 in far:
                    if is_role(x1, s, y1) and any(
                        is_role(s, y1, y2) for y2 in far if y2 != y1
                    ):
                        return True
            for y1 in (p1, p2):  # candidate as z y1 y2
                for x1 in far:
                    if is_role(x1, s, y1) and any(
                        is_role(x1, x2, s) for x2 in far if x2 != x1
                    ):
                        return True
        return False

    def scattered_completes(a: int, b: int, c: int) -> bool:
        # Candidate as the middle triple x1 z y1 of a C212.
        for z, u, w in ((a, b, c), (b, a, c), (c, a, b)):
            zc = members[cluster_of[z]]
            for x1, y1 in ((u, w), (w, u)):
                xs = [v for v in members[cluster_of[x1]] if v != x1]
                ys = [v for v in members[cluster_of[y1]] if v != y1]
                if any(is_role(x1, x2, z) for x2 in xs) and any(
                    is_role(z, y1, y2) for y2 in ys
                ):
                    return True
        return False

    cross: list[int] = []
    mapping: dict[int, str] = {}
    for code in h.packed_triples():
        a, b, c = unpack3(code)
        ca, cb, cc = cluster_of.get(a), cluster_of.get(b), cluster_of.get(c)
        if ca is None or cb is None or cc is None:
            mapping[code] = anti
        elif ca == cb == cc:
            mapping[code] = role
        else:
            mapping[code] = anti
            cross.append(code)

    cross.sort()
    random.Random(seed).shuffle(cross)
    for code in cross:
        a, b, c = unpack3(code)
        ca, cb, cc = cluster_of[a], cluster_of[b], cluster_of[c]
        if ca == cb:
            done = pair_shape_completes(a, b, c, ca, cc)
        elif ca == cc:
            done = pair_shape_completes(a, c, b, ca, cb)
        elif cb == cc:
            done = pair_shape_completes(b, c, a, cb, ca)
        else:
            done = scattered_completes(a, b, c)
        if not done:
            mapping[code] = role
            committed.add(code)
    return TwoColoring(h, mapping)


class WindowAdversary:
    """Connector-free colourings of a cluster family, safe by
    construction and cheap to evaluate.

    Triples inside a cluster carry the role colour.  Cross-cluster
    triples are classified by shape:

    * pair shape (two vertices in one cluster, one in another): mode
      "anti-pairs" and mode "all-anti" colour them all opposite; mode
      "tournament" allows the role colour with probability p only when
      the pair's cluster precedes the singleton's cluster in a seeded
      total order.
    * scattered shape (three distinct clusters): role-coloured with
      probability p in mode "anti-pairs", opposite otherwise.

    Why no role connector can exist: both defining triples of a
    (2,2)-connector are pair-shaped with their pairs on opposite sides
    of the same axis, so under "tournament" one of them always points
    against the order, and under the other modes no pair-shaped triple
    is role-coloured at all; a (2,1,2)-connector needs the pair-shaped
    triple x1 x2 z, which "anti-pairs" forbids and "tournament" only
    allows when the x-cluster precedes the middle -- but its partner
    z y1 y2 then needs the y-cluster to precede the middle as well,
    while the scattered middle triple x1 z y1 is never role-coloured in
    tournament mode.  Triples outside the family are coloured opposite.
    """

    def __init__(
        self,
        h: Hypergraph3,
        clusters: Sequence[Sequence[int]],
        role: str,
        mode: str,
        seed: int,
        p: float = 0.5,
    ):
        if mode not in ("anti-pairs", "tournament", "all-anti"):
            raise ValueError(f"unknown mode {mode}")
        self.h = h
        self.role = role
        self.anti = other_colour(role)
        self.mode = mode
        self.seed = seed
        self.p = p
        self._thresh = _threshold(p)
        self.cluster_of: dict[int, int] = {}
        for ci, cl in enumerate(clusters):
            for v in cl:
                if v in self.cluster_of:
                    raise ValueError("clusters overlap")
                self.cluster_of[v] = ci
        order = list(range(len(clusters)))
        random.Random(splitmix64(seed)).shuffle(order)
        self.rank = {ci: r for r, ci in enumerate(order)}

    def _classify(self, a: int, b: int, c: int) -> tuple[str, Optional[int], Optional[int]]:
        ca = self.cluster_of.get(a)
        cb = self.cluster_of.get(b)
        cc = self.cluster_of.get(c)
        if ca is None or cb is None or cc is None:
            return "outside", None, None
        if ca == cb == cc:
            return "intra", None, None
        if ca == cb:
            return "pair", ca, cc
        if ca == cc:
            return "pair", ca, cb
        if cb == cc:
            return "pair", cb, ca
        return "scattered", None, None

    def colour(self, a: int, b: int, c: int) -> str:
        shape, pair_cluster, single_cluster = self._classify(a, b, c)
        if shape == "intra":
            return self.role
        if shape == "outside" or self.mode == "all-anti":
            return self.anti
        code = pack3(a, b, c)
        if shape == "pair":
            if self.mode == "tournament" and self.rank[pair_cluster] < self.rank[single_cluster]:
                return self.role if _hash_hit(self.seed, code, self._thresh) else self.anti
            return self.anti
        if self.mode == "anti-pairs":
            return self.role if _hash_hit(self.seed, code, self._thresh) else self.anti
        return self.anti

    def colouring(self) -> TwoColoring:
        return TwoColoring.from_rule(self.h, self.colour)

    def role_cross_triples(self) -> set[int]:
        """Packed role-coloured cross-cluster triples of the host,
        computed vectorised over all vertex triples of the family."""
        verts = np.array(sorted(self.cluster_of), dtype=np.int64)
        n = len(verts)
        if n < 3:
            return set()
        cl = np.array([self.cluster_of[int(v)] for v in verts], dtype=np.int64)
        ia, ib, ic = np.array(
            list(itertools.combinations(range(n), 3)), dtype=np.int64
        ).T
        ca, cb, cc = cl[ia], cl[ib], cl[ic]
        intra = (ca == cb) & (cb == cc)
        pair = ~intra & ((ca == cb) | (ca == cc) | (cb == cc))
        scattered = ~intra & ~pair
        a, b, c = verts[ia], verts[ib], verts[ic]
        codes = (
            (a.astype(np.uint64) << np.uint64(42))
            | (b.astype(np.uint64) << np.uint64(21))
            | c.astype(np.uint64)
        )
        if self.p >= 1.0:
            lucky = np.ones(len(codes), dtype=bool)
        else:
            hashed = splitmix64_np(np.uint64(self.seed & _M64) ^ codes)
            lucky = hashed < np.uint64(self._thresh)

        if self.mode == "all-anti":
            role_mask = np.zeros(len(codes), dtype=bool)
        elif self.mode == "anti-pairs":
            role_mask = scattered & lucky
        else:  # tournament
            rank = np.array([self.rank[i] for i in range(len(self.rank))], dtype=np.int64)
            pair_cl = np.where(ca == cb, ca, np.where(ca == cc, ca, cb))
            single_cl = np.where(ca == cb, cc, np.where(ca == cc, cb, ca))
            allowed = pair & (rank[pair_cl] < rank[single_cl])
            role_mask = allowed & lucky
        host = self.h.packed_triples()
        return {int(code) for code in codes[role_mask] if int(code) in host}
