"""3-uniform hypergraphs, two-colourings, and tight paths.

A tight path visits an ordered sequence of distinct vertices; its edges
are exactly the windows of three consecutive vertices.  Sequences of
fewer than three vertices are valid degenerate paths with an empty edge
set (this convention is load-bearing for the induction base cases and
the validators accept it).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .graph import Graph
from .packing import MAX_VERTICES, pack3, unpack3

RED = "red"
BLUE = "blue"


def other_colour(colour: str) -> str:
    if colour == RED:
        return BLUE
    if colour == BLUE:
        return RED
    raise ValueError(f"unknown colour: {colour}")


class Hypergraph3:
    """3-uniform hypergraph on vertices ``0 .. num_vertices - 1``.

    Triples are stored as packed 64-bit integers (21 bits per vertex),
    which caps instances at 2^21 vertices.  ``cluster_map`` optionally
    records the blow-up origin of each vertex.
    """

    __slots__ = ("num_vertices", "_triples", "cluster_map")

    def __init__(
        self,
        num_vertices: int,
        triples: Iterable[tuple[int, int, int]],
        cluster_map: Optional[Sequence[int]] = None,
    ):
        if num_vertices < 0 or num_vertices > MAX_VERTICES:
            raise ValueError(f"num_vertices out of range: {num_vertices}")
        self.num_vertices = num_vertices
        packed: set[int] = set()
        for a, b, c in triples:
            if len({a, b, c}) != 3:
                raise ValueError(f"triple ({a}, {b}, {c}) has repeated vertices")
            if not all(0 <= x < num_vertices for x in (a, b, c)):
                raise ValueError(f"triple ({a}, {b}, {c}) out of range")
            packed.add(pack3(a, b, c))
        self._triples = packed
        if cluster_map is not None:
            cluster_map = list(cluster_map)
            if len(cluster_map) != num_vertices:
                raise ValueError("cluster_map length mismatch")
        self.cluster_map = cluster_map

    def has(self, a: int, b: int, c: int) -> bool:
        return pack3(a, b, c) in self._triples

    def has_packed(self, code: int) -> bool:
        return code in self._triples

    @property
    def num_triples(self) -> int:
        return len(self._triples)

    def triples(self) -> Iterator[tuple[int, int, int]]:
        """Yield triples as sorted tuples, in sorted order."""
        for code in sorted(self._triples):
            yield unpack3(code)

    def packed_triples(self) -> set[int]:
        return self._triples

    def __repr__(self) -> str:
        return f"Hypergraph3(n={self.num_vertices}, triples={self.num_triples})"


class TwoColoring:
    """Total red/blue map on the triple set of a host hypergraph.

    Either dict-backed (explicit map, checked for totality) or
    rule-backed (a function evaluated on demand; used for large
    synthetic instances where materialising the map would dominate the
    runtime).  Queries outside the host's triple set raise KeyError.
    """

    __slots__ = ("host", "_map", "_rule")

    def __init__(self, host: Hypergraph3, mapping: dict[int, str]):
        extra = set(mapping) - host.packed_triples()
        if extra:
            raise ValueError(f"colouring mentions {len(extra)} unknown triples")
        missing = host.packed_triples() - set(mapping)
        if missing:
            raise ValueError(f"colouring leaves {len(missing)} triples uncoloured")
        bad = {v for v in mapping.values() if v not in (RED, BLUE)}
        if bad:
            raise ValueError(f"unknown colours: {bad}")
        self.host = host
        self._map: Optional[dict[int, str]] = mapping
        self._rule: Optional[Callable[[int, int, int], str]] = None

    @classmethod
    def from_rule(cls, host: Hypergraph3, rule: Callable[[int, int, int], str]) -> "TwoColoring":
        self = object.__new__(cls)
        self.host = host
        self._map = None
        self._rule = rule
        return self

    def of(self, a: int, b: int, c: int) -> str:
        code = pack3(a, b, c)
        if code not in self.host.packed_triples():
            raise KeyError(f"({a}, {b}, {c}) is not a triple of the host")
        if self._map is not None:
            return self._map[code]
        return self._rule(*unpack3(code))

    def of_packed(self, code: int) -> str:
        if code not in self.host.packed_triples():
            raise KeyError(f"{unpack3(code)} is not a triple of the host")
        if self._map is not None:
            return self._map[code]
        return self._rule(*unpack3(code))

    def swapped(self) -> "TwoColoring":
        """The colour-exchanged colouring on the same host."""
        if self._map is not None:
            return TwoColoring(self.host, {k: other_colour(v) for k, v in self._map.items()})
        rule = self._rule
        return TwoColoring.from_rule(self.host, lambda a, b, c: other_colour(rule(a, b, c)))

    def materialize(self) -> dict[int, str]:
        if self._map is not None:
            return dict(self._map)
        return {code: self._rule(*unpack3(code)) for code in self.host.packed_triples()}

    def items(self) -> Iterator[tuple[tuple[int, int, int], str]]:
        for code in sorted(self.host.packed_triples()):
            yield unpack3(code), self.of_packed(code)


@dataclass(frozen=True)
class TightPath3:
    """Ordered distinct vertices; windows of 3 consecutive ones are the edges."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def windows(self) -> Iterator[tuple[int, int, int]]:
        v = self.vertices
        for i in range(len(v) - 2):
            yield (v[i], v[i + 1], v[i + 2])


@dataclass
class ValidationResult:
    ok: bool
    violation: Optional[str] = None
    index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def triangles_to_hypergraph(g: Graph) -> Hypergraph3:
    """All triangles of ``g`` as a 3-uniform hypergraph.

    Enumerated by ordered neighbour intersection: for each edge (u, v)
    with u < v, every common neighbour w > v yields the triangle
    {u, v, w} exactly once.  The graph's labels carry over as the
    cluster map.
    """
    triples = []
    for u in range(g.num_vertices):
        nu = g._nbr[u]
        for v in g.neighbors(u):
            if v <= u:
                continue
            nv = g._nbr[v]
            small, large = (nu, nv) if len(nu) <= len(nv) else (nv, nu)
            for w in small:
                if w > v and w in large:
                    triples.append((u, v, w))
    return Hypergraph3(g.num_vertices, triples, cluster_map=g.vertex_labels)


def validate_tight_path(
    h: Hypergraph3, c: TwoColoring, p: TightPath3, colour: str
) -> ValidationResult:
    """Check distinctness, that every window is a triple of ``h``, and
    that every window carries ``colour``.  Paths on fewer than three
    vertices pass vacuously."""
    seen: set[int] = set()
    for i, v in enumerate(p.vertices):
        if not (0 <= v < h.num_vertices):
            return ValidationResult(False, f"vertex {v} out of range", i)
        if v in seen:
            return ValidationResult(False, f"vertex {v} repeated", i)
        seen.add(v)
    for i, (a, b, d) in enumerate(p.windows()):
        if not h.has(a, b, d):
            return ValidationResult(False, f"window ({a},{b},{d}) is not a triple", i)
        if c.of(a, b, d) != colour:
            return ValidationResult(False, f"window ({a},{b},{d}) is not {colour}", i)
    return ValidationResult(True)


def find_mono_clique(
    h: Hypergraph3, c: TwoColoring, cluster: Sequence[int], t: int
) -> Optional[tuple[str, tuple[int, ...]]]:
    """Lexicographically least t-subset of ``cluster`` whose internal
    triples are monochromatic, together with its colour.

    Requires every triple inside the cluster to be present in ``h``.
    Returns None when no monochromatic t-subset exists, which is a real
    outcome at desk scale (the cluster size there sits far below the
    Ramsey number that would make failure impossible).  For t < 3 any
    t-subset is vacuously monochromatic and reported blue.
    """
    verts = sorted(cluster)
    if t < 1:
        raise ValueError("t must be >= 1")
    for a, b, d in itertools.combinations(verts, 3):
        if not h.has(a, b, d):
            raise ValueError(f"cluster triple ({a},{b},{d}) missing from host")
    if t > len(verts):
        return None
    if t < 3:
        return (BLUE, tuple(verts[:t]))

    def search(colour: str) -> Optional[tuple[int, ...]]:
        chosen: list[int] = []

        def extend(start: int) -> Optional[tuple[int, ...]]:
            if len(chosen) == t:
                return tuple(chosen)
            # not enough vertices left to finish
            if len(verts) - start < t - len(chosen):
                return None
            for idx in range(start, len(verts)):
                v = verts[idx]
                if all(
                    c.of(x, y, v) == colour
                    for x, y in itertools.combinations(chosen, 2)
                ):
                    chosen.append(v)
                    result = extend(idx + 1)
                    if result is not None:
                        return result
                    chosen.pop()
            return None

        return extend(0)

    best: Optional[tuple[str, tuple[int, ...]]] = None
    for colour in (BLUE, RED):
        found = search(colour)
        if found is not None and (best is None or found < best[1]):
            best = (colour, found)
    return best


def brute_force_longest_mono_tight_path(
    h: Hypergraph3, c: TwoColoring, cap: int
) -> tuple[str, TightPath3]:
    """Exhaustive ground-truth oracle: a longest monochromatic tight path
    with at most ``cap`` vertices.

    Sweeps every vertex sequence, organised as layered reachability over
    (used-vertex set, last two vertices) states so the worst case stays
    bounded: a state subsumes every ordering of its interior, which a
    plain sequence-by-sequence search does not (near-monochromatic
    hosts make that blow up hopelessly).  Feasible only for small hosts
    (hard limit 15 vertices).  Any two distinct vertices form a
    degenerate path of length 2, so the result has at least
    min(2, n, cap) vertices; ties between colours go to blue.
    """
    n = h.num_vertices
    if n > 15:
        raise ValueError("brute force oracle limited to 15 vertices")
    if cap < 1:
        raise ValueError("cap must be >= 1")

    def longest(colour: str) -> tuple[int, ...]:
        def coloured(i: int, j: int, k: int) -> bool:
            return h.has(i, j, k) and c.of(i, j, k) == colour

        if n == 0:
            return ()
        if n == 1 or cap == 1:
            return (0,)
        if cap == 2:
            return (0, 1)
        size = 1 << n
        # layers[d][mask, j*n + k]: some path of d+2 vertices uses
        # exactly ``mask`` and ends with (j, k)
        first = np.zeros((size, n * n), dtype=bool)
        for j in range(n):
            for k in range(n):
                if j != k:
                    first[(1 << j) | (1 << k), j * n + k] = True
        layers = [first]
        mask_ids = np.arange(size, dtype=np.int64)
        lacks_bit = [(mask_ids >> k) & 1 == 0 for k in range(n)]
        while len(layers) < cap - 1:
            prev = layers[-1]
            nxt = np.zeros_like(prev)
            any_set = False
            for j in range(n):
                for k in range(n):
                    if j == k:
                        continue
                    cols = [
                        i * n + j
                        for i in range(n)
                        if i != j and i != k and coloured(i, j, k)
                    ]
                    if not cols:
                        continue
                    reachable = prev[:, cols].any(axis=1) & lacks_bit[k]
                    if reachable.any():
                        nxt[mask_ids[reachable] | (1 << k), j * n + k] = True
                        any_set = True
            if not any_set:
                break
            layers.append(nxt)

        final = layers[-1]
        flat = int(np.flatnonzero(final.any(axis=0))[0])
        j, k = divmod(flat, n)
        mask = int(np.flatnonzero(final[:, flat])[0])
        # walk the layers backwards; ``rev`` lists the path last-first
        rev = [k, j]
        for depth in range(len(layers) - 2, -1, -1):
            j, k = rev[-1], rev[-2]
            mask ^= 1 << k
            prev = layers[depth]
            i = next(
                i
                for i in range(n)
                if i != j and i != k and coloured(i, j, k) and prev[mask, i * n + j]
            )
            rev.append(i)
        rev.reverse()
        assert len(rev) == len(layers) + 1
        return tuple(rev)

    blue_best = longest(BLUE)
    red_best = longest(RED)
    if len(red_best) > len(blue_best):
        return (RED, TightPath3(red_best))
    return (BLUE, TightPath3(blue_best))


@dataclass(frozen=True)
class LiftedPath:
    """r-uniform path obtained by replacing each vertex with a block of
    r/3 fresh vertices; consecutive edges overlap in 2r/3 vertices."""

    r: int
    num_vertices: int
    blocks: tuple[tuple[int, ...], ...]
    vertex_order: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]


def lift_to_r_uniform(p: TightPath3, r: int) -> LiftedPath:
    """Lift a 3-uniform tight path to an r-uniform (2r/3)-overlap path.

    Vertex i becomes the block [i*q, (i+1)*q) with q = r/3; each window
    of three consecutive blocks forms an edge.
    """
    if r % 3 != 0 or r < 3:
        raise ValueError("r must be a positive multiple of 3")
    q = r // 3
    m = len(p.vertices)
    blocks = tuple(tuple(range(i * q, (i + 1) * q)) for i in range(m))
    order = tuple(v for block in blocks for v in block)
    edges = tuple(
        blocks[i] + blocks[i + 1] + blocks[i + 2] for i in range(m - 2)
    )
    return LiftedPath(r=r, num_vertices=m * q, blocks=blocks, vertex_order=order, edges=edges)


def validate_l_path(
    edges: Sequence[Sequence[int]],
    r: int,
    ell: int,
    vertex_order: Sequence[int],
) -> Optional[str]:
    """Independent validator for r-uniform paths with overlap exactly
    ``ell``: every edge is r consecutive vertices of the ordering,
    consecutive edges share exactly ell vertices, and every vertex is
    covered when there is at least one edge.  Returns None or the first
    violation."""
    if len(set(vertex_order)) != len(vertex_order):
        return "vertex order has repeats"
    position = {v: i for i, v in enumerate(vertex_order)}
    step = r - ell
    for idx, edge in enumerate(edges):
        if len(set(edge)) != r:
            return f"edge {idx} is not r-uniform"
        spots = sorted(position.get(v, -1) for v in edge)
        if spots[0] < 0:
            return f"edge {idx} uses a vertex outside the ordering"
        if spots != list(range(spots[0], spots[0] + r)):
            return f"edge {idx} is not consecutive in the ordering"
        if spots[0] != idx * step:
            return f"edge {idx} does not start at offset {idx * step}"
    if edges:
        covered = {v for e in edges for v in e}
        if covered != set(vertex_order):
            return "some vertex lies in no edge"
        for i in range(len(edges) - 1):
            if len(set(edges[i]) & set(edges[i + 1])) != ell:
                return f"edges {i} and {i + 1} overlap in != {ell} vertices"
    return None
