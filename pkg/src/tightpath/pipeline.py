"""End-to-end extraction of a monochromatic tight path from a
2-coloured triangle hypergraph.

Stages: power-and-blow-up the host, select a monochromatic clique per
cluster, pick the majority colour as the role colour, assemble the
auxiliary (2,3)-graph of connector gadgets, then either

* walk a long (2,3)-path and stitch its gadgets into a role-coloured
  tight path, or
* extract obstruction sets, thread a set-alternating path through them,
  prune residual connectors along its power path, and grow an
  opposite-coloured tight path by the quadruple induction.

With the exact headline constants every stage is guaranteed; at desk
scale each stage checks its own hypotheses at runtime and a failed
check becomes a structured failure that names the hypothesis, never a
silent degradation.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .altpath import DEFAULT_BUDGET, find_alternating_path
from .connectors import (
    ClusterFamily,
    Connector,
    ConnectorScope,
    build_auxiliary_f,
    enumerate_c22,
    enumerate_c212,
    find_c22,
    find_c212,
    find_disjoint_triple,
)
from .expander import certify_p1
from .faults import HardFault, HypothesisFailure
from .graph import Graph, blow_up, graph_power, induced_subgraph
from .hypergraph import (
    BLUE,
    RED,
    Hypergraph3,
    TightPath3,
    TwoColoring,
    ValidationResult,
    find_mono_clique,
    other_colour,
    triangles_to_hypergraph,
    validate_tight_path,
)
from .two_three import (
    TwoThreeGraph,
    TwoThreePath,
    extract_obstruction_sets,
    find_23_path,
    validate_23_path,
)


class PipelineParams:
    """All pipeline constants, with the arithmetic relations asserted in
    strict mode:

        k = 2*ell,  eps = 1/(k+1),  t = 8k + 40k^2 + 5,  a = 2 * 5^k,
        m = ell*n,  and the per-cluster deletion budget
        4*(2k) + 10*(4k^2) equals t - 5 exactly.

    ``t_prime`` is the blow-up cluster size; its defining value (the
    hypergraph Ramsey number of the t-clique) is far beyond computation,
    so it is a free desk-scale knob and may be None in strict mode.
    ``c`` is derived from the unspecified alternating-path constant and
    stays free in both modes.
    """

    def __init__(
        self,
        ell: int,
        k: int,
        t: int,
        c: int,
        n: int,
        t_prime: Optional[int] = None,
        eps: Optional[Fraction] = None,
        a: Optional[int] = None,
        strict_constants: bool = False,
    ):
        self.ell = ell
        self.k = k
        self.t = t
        self.c = c
        self.n = n
        self.t_prime = t_prime
        self.eps = Fraction(eps) if eps is not None else Fraction(1, k + 1)
        self.a = a if a is not None else 2 * 5**k
        self.strict_constants = strict_constants
        self.validate()

    @property
    def m(self) -> int:
        return self.ell * self.n

    @property
    def deletion_budget(self) -> int:
        return 4 * (2 * self.k) + 10 * (4 * self.k**2)

    def validate(self) -> None:
        if min(self.ell, self.k, self.t, self.c, self.n) < 1:
            raise ValueError("all constants must be positive")
        if self.n < 2:
            raise ValueError("target length n must be >= 2")
        if self.t < 3:
            raise ValueError("cluster clique size t must be >= 3")
        if self.t_prime is not None and self.t_prime < self.t:
            raise ValueError("t_prime must be at least t")
        if not (0 < self.eps < 1):
            raise ValueError("eps must lie in (0, 1)")
        if self.strict_constants:
            if self.k != 2 * self.ell:
                raise ValueError("strict: k must equal 2*ell")
            if self.eps != Fraction(1, self.k + 1):
                raise ValueError("strict: eps must equal 1/(k+1)")
            if self.t != 8 * self.k + 40 * self.k**2 + 5:
                raise ValueError("strict: t must equal 8k + 40k^2 + 5")
            if self.a != 2 * 5**self.k:
                raise ValueError("strict: a must equal 2 * 5^k")
            if self.deletion_budget != self.t - 5:
                raise HardFault("deletion budget identity failed for strict t")

    @classmethod
    def strict(cls, n: int, ell: int = 17, c: int = 17, t_prime: Optional[int] = None) -> "PipelineParams":
        k = 2 * ell
        return cls(
            ell=ell,
            k=k,
            t=8 * k + 40 * k**2 + 5,
            c=c,
            n=n,
            t_prime=t_prime,
            strict_constants=True,
        )

    @classmethod
    def relaxed(
        cls,
        ell: int,
        k: int,
        t: int,
        t_prime: int,
        c: int,
        n: int,
        eps: Optional[Fraction] = None,
        a: Optional[int] = None,
    ) -> "PipelineParams":
        return cls(ell=ell, k=k, t=t, c=c, n=n, t_prime=t_prime, eps=eps, a=a)

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "k": self.k,
            "t": self.t,
            "t_prime": self.t_prime,
            "c": self.c,
            "n": self.n,
            "eps": f"{self.eps.numerator}/{self.eps.denominator}",
            "a": self.a,
            "strict_constants": self.strict_constants,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineParams":
        eps = data.get("eps")
        if isinstance(eps, str):
            num, _, den = eps.partition("/")
            eps = Fraction(int(num), int(den or "1"))
        return cls(
            ell=data["ell"],
            k=data["k"],
            t=data["t"],
            c=data["c"],
            n=data["n"],
            t_prime=data.get("t_prime"),
            eps=eps,
            a=data.get("a"),
            strict_constants=data.get("strict_constants", False),
        )


@dataclass(frozen=True)
class PrunedCluster:
    """A cluster along the alternating path after connector pruning;
    ``position`` is 1-based along the path."""

    position: int
    origin: int
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class EndTuple:
    """The last two vertices of a tight path: ``u`` sits in two of its
    edges and ``v`` in one, except for the degenerate 2- and 3-vertex
    conventions."""

    u: int
    v: int
    path: tuple[int, ...]

    def __post_init__(self):
        if len(self.path) < 2 or self.path[-2:] != (self.u, self.v):
            raise ValueError("end-tuple must be the last two path vertices")


@dataclass(frozen=True)
class Quadruple:
    """Two end-tuples of opposite-coloured tight paths in distinct
    clusters of the current window (the inductive invariant)."""

    level: int
    pair1: tuple[int, int]
    cluster1: int  # path position of the hosting cluster
    path1: tuple[int, ...]
    pair2: tuple[int, int]
    cluster2: int
    path2: tuple[int, ...]


def validate_quadruple(
    quad: Quadruple,
    h: Hypergraph3,
    c: TwoColoring,
    role: str,
    hstar: Sequence[PrunedCluster],
    ell: int,
) -> list[str]:
    """All violations of the level-i invariant; empty means it holds."""
    problems: list[str] = []
    i = quad.level
    red = other_colour(role)
    window = {pc.position: pc for pc in hstar[(i - 1) * ell : i * ell]}
    allowed = {v for pc in hstar[: i * ell] for v in pc.vertices}
    verts = (*quad.pair1, *quad.pair2)
    if len(set(verts)) != 4:
        problems.append("pairs share a vertex")
    if quad.cluster1 == quad.cluster2:
        problems.append("pairs live in the same cluster")
    for pair, cluster, path, tag in (
        (quad.pair1, quad.cluster1, quad.path1, "first"),
        (quad.pair2, quad.cluster2, quad.path2, "second"),
    ):
        if cluster not in window:
            problems.append(f"{tag} cluster {cluster} outside window {i}")
        elif not set(pair) <= set(window[cluster].vertices):
            problems.append(f"{tag} pair not inside its cluster")
        if tuple(path[-2:]) != tuple(pair):
            problems.append(f"{tag} pair is not the end-tuple of its path")
        if len(path) < i + 1:
            problems.append(f"{tag} path has length {len(path)} < {i + 1}")
        if not set(path) <= allowed:
            problems.append(f"{tag} path leaves the pruned clusters")
        res = validate_tight_path(h, c, TightPath3(tuple(path)), red)
        if not res:
            problems.append(f"{tag} path invalid: {res.violation}")
    return problems


def base_quadruple(hstar: Sequence[PrunedCluster], ell: int) -> Quadruple:
    """Level-1 quadruple: any pair from each of the first two clusters;
    both pairs are degenerate 2-vertex paths."""
    if ell < 2:
        raise HypothesisFailure(
            "window-too-small", f"window of {ell} clusters cannot host two pairs", ell=ell
        )
    if len(hstar) < 2:
        raise HypothesisFailure("window-too-small", "need at least two pruned clusters")
    first, second = hstar[0], hstar[1]
    for pc in (first, second):
        if len(pc.vertices) < 2:
            raise HypothesisFailure(
                "cluster-size",
                f"pruned cluster at position {pc.position} has {len(pc.vertices)} < 2 vertices",
                position=pc.position,
            )
    u1, u2 = first.vertices[:2]
    w1, w2 = second.vertices[:2]
    return Quadruple(
        level=1,
        pair1=(u1, u2),
        cluster1=first.position,
        path1=(u1, u2),
        pair2=(w1, w2),
        cluster2=second.position,
        path2=(w1, w2),
    )


def _colour_of(h: Hypergraph3, c: TwoColoring, a: int, b: int, d: int) -> Optional[str]:
    if not h.has(a, b, d):
        return None
    return c.of(a, b, d)


def _missing(a: int, b: int, d: int) -> HypothesisFailure:
    return HypothesisFailure(
        "missing-triple",
        f"inter-cluster triple ({a},{b},{d}) is absent; the window is not fully joined",
        triple=(a, b, d),
    )


@dataclass
class _Extension:
    path: tuple[int, ...]
    pair: tuple[int, int]
    cluster: int


def _double_extend(
    base: tuple[int, ...],
    pivot: tuple[int, int],
    pivot_cluster: int,
    sets: list[tuple[int, tuple[int, ...]]],
    h: Hypergraph3,
    c: TwoColoring,
    role: str,
) -> tuple[_Extension, _Extension]:
    """Grow two longer opposite-coloured paths out of ``base`` (which
    ends with ``pivot`` = (p, q)) using window sets whose members x all
    have p q x opposite-coloured.

    A set with an internal pair a,b making q a b opposite-coloured
    extends the path directly; with two such sets we are done.
    Otherwise at least four sets have all their q-pairs role-coloured,
    and for any two of them the absence of role connectors forces the
    cross triples needed to hop from one set into the other.
    """
    red = other_colour(role)
    with_red_pair: list[tuple[int, int, tuple[int, int]]] = []
    all_blue: list[tuple[int, tuple[int, ...]]] = []
    p, q = pivot
    for cluster, members in sets:
        red_pair = None
        for a, b in itertools.combinations(sorted(members), 2):
            col = _colour_of(h, c, q, a, b)
            if col is None:
                raise _missing(q, a, b)
            if col == red:
                red_pair = (a, b)
                break
        if red_pair is not None:
            with_red_pair.append((cluster, 0, red_pair))
        else:
            all_blue.append((cluster, members))

    if len(with_red_pair) >= 2:
        exts = []
        for cluster, _, (a, b) in with_red_pair[:2]:
            exts.append(_Extension(path=base + (a, b), pair=(a, b), cluster=cluster))
        return exts[0], exts[1]

    if len(all_blue) < 4:
        raise HypothesisFailure(
            "pigeonhole",
            f"need 2 sets with an opposite-coloured pair or 4 without, "
            f"have {len(with_red_pair)} and {len(all_blue)}",
        )

    def forced(one: tuple[int, tuple[int, ...]], two: tuple[int, tuple[int, ...]]) -> _Extension:
        (cx, xs), (cy, ys) = one, two
        x1, x2 = sorted(xs)[:2]
        y1, y2 = sorted(ys)[:2]
        # q x1 x2 and q y1 y2 are role-coloured, so the middle triple of a
        # would-be (2,1,2)-connector through q's cluster must not be.
        mid = _colour_of(h, c, x1, q, y1)
        if mid is None:
            raise _missing(x1, q, y1)
        if mid != red:
            raise HypothesisFailure(
                "connector-present",
                "role-coloured (2,1,2)-connector between window clusters",
                connector="c212",
                clusters=(cx, cy, pivot_cluster),
                witness=(x1, x2, q, y1, y2),
            )
        t_y = _colour_of(h, c, y1, y2, x1)
        t_x = _colour_of(h, c, x1, x2, y1)
        if t_y is None:
            raise _missing(y1, y2, x1)
        if t_x is None:
            raise _missing(x1, x2, y1)
        if t_y == red:
            return _Extension(path=base + (x1, y1, y2), pair=(y1, y2), cluster=cy)
        if t_x == red:
            return _Extension(path=base + (y1, x1, x2), pair=(x1, x2), cluster=cx)
        raise HypothesisFailure(
            "connector-present",
            "role-coloured (2,2)-connector between window clusters",
            connector="c22",
            clusters=(cx, cy),
            witness=(x1, x2, y1, y2),
        )

    first = forced(all_blue[0], all_blue[1])
    second = forced(all_blue[2], all_blue[3])
    return first, second


def extend_quadruple(
    quad: Quadruple,
    window: Sequence[PrunedCluster],
    h: Hypergraph3,
    c: TwoColoring,
    role: str,
) -> Quadruple:
    """One step of the induction: from a level i-1 quadruple and the
    next window of pruned clusters, produce a level i quadruple.

    Implements the case analysis literally.  (1) One of the two
    cross-pair triples must be opposite-coloured, else the four vertices
    form a role (2,2)-connector; this absorbs one vertex of the other
    pair into the chosen path.  (2) Each window cluster of >= 5 vertices
    has >= 3 members agreeing on the colour of p q x, and >= 9 clusters
    agree with each other.  (3) If that colour is the opposite colour,
    extend twice among five of the sets.  (4) If it is the role colour,
    connector absence forces p1 p2 x or o1 o2 x to be opposite-coloured
    for every member x, and >= 5 clusters agree on which; continue as in
    (3) with that pair's own path.  Every forced colour is checked and a
    role-coloured surprise is reported as the connector it exhibits.
    """
    red = other_colour(role)
    level = quad.level + 1
    p_pair, p_path, p_cluster = quad.pair1, quad.path1, quad.cluster1
    o_pair, o_path, o_cluster = quad.pair2, quad.path2, quad.cluster2

    col_a = _colour_of(h, c, p_pair[0], p_pair[1], o_pair[1])
    col_b = _colour_of(h, c, o_pair[0], o_pair[1], p_pair[1])
    if col_a is None:
        raise _missing(p_pair[0], p_pair[1], o_pair[1])
    if col_b is None:
        raise _missing(o_pair[0], o_pair[1], p_pair[1])
    if col_a != red and col_b != red:
        raise HypothesisFailure(
            "connector-present",
            "both cross-pair triples role-coloured: (2,2)-connector between the source clusters",
            connector="c22",
            clusters=(p_cluster, o_cluster),
            witness=(*p_pair, *o_pair),
        )
    if col_a == red:
        lead_pair, lead_path, lead_cluster = p_pair, p_path, p_cluster
        trail_pair, trail_path, trail_cluster = o_pair, o_path, o_cluster
    else:
        lead_pair, lead_path, lead_cluster = o_pair, o_path, o_cluster
        trail_pair, trail_path, trail_cluster = p_pair, p_path, p_cluster

    plus = lead_path + (trail_pair[1],)
    pivot = (lead_pair[1], trail_pair[1])

    # Pigeonhole: per cluster, >= 3 members agreeing on the pivot-triple
    # colour; then >= 9 clusters agreeing with each other.
    red_sets: list[tuple[int, tuple[int, ...]]] = []
    blue_sets: list[tuple[int, tuple[int, ...]]] = []
    for pc in window:
        reds, blues = [], []
        for x in pc.vertices:
            col = _colour_of(h, c, pivot[0], pivot[1], x)
            if col is None:
                raise _missing(pivot[0], pivot[1], x)
            (reds if col == red else blues).append(x)
        if len(reds) >= 3 or len(blues) >= 3:
            if len(reds) >= len(blues):
                red_sets.append((pc.position, tuple(reds)))
            else:
                blue_sets.append((pc.position, tuple(blues)))
    # The opposite-coloured case needs only five sets; the role-coloured
    # case refines nine.  At seventeen window clusters one of the two
    # thresholds always holds.
    if len(red_sets) < 5 and len(blue_sets) < 9:
        raise HypothesisFailure(
            "pigeonhole",
            f"need five opposite-uniform or nine role-uniform clusters, "
            f"have {len(red_sets)} and {len(blue_sets)}",
            level=level,
        )

    if len(red_sets) >= 5:
        ext1, ext2 = _double_extend(
            plus, pivot, trail_cluster, red_sets[:5], h, c, role
        )
    else:
        # Role-coloured pivot triples: per member, connector absence
        # forces one of the original pairs to give an opposite-coloured
        # triple; pigeonhole down to five clusters agreeing on which.
        sets9 = blue_sets[:9]
        lead_lists: list[tuple[int, tuple[int, ...]]] = []
        trail_lists: list[tuple[int, tuple[int, ...]]] = []
        for cluster, members in sets9:
            via_lead, via_trail = [], []
            for x in members:
                col_trail = _colour_of(h, c, trail_pair[0], trail_pair[1], x)
                col_lead = _colour_of(h, c, lead_pair[0], lead_pair[1], x)
                if col_trail is None:
                    raise _missing(trail_pair[0], trail_pair[1], x)
                if col_lead is None:
                    raise _missing(lead_pair[0], lead_pair[1], x)
                if col_trail == red:
                    via_trail.append(x)
                elif col_lead == red:
                    via_lead.append(x)
                else:
                    raise HypothesisFailure(
                        "connector-present",
                        "member with both pair triples role-coloured: "
                        "(2,1,2)-connector through the window cluster",
                        connector="c212",
                        clusters=(lead_cluster, trail_cluster, cluster),
                        witness=(*lead_pair, *trail_pair, x),
                    )
            if len(via_trail) >= 2:
                trail_lists.append((cluster, tuple(via_trail)))
            elif len(via_lead) >= 2:
                lead_lists.append((cluster, tuple(via_lead)))
        if len(trail_lists) >= 5:
            ext1, ext2 = _double_extend(
                trail_path, trail_pair, trail_cluster, trail_lists[:5], h, c, role
            )
        elif len(lead_lists) >= 5:
            ext1, ext2 = _double_extend(
                lead_path, lead_pair, lead_cluster, lead_lists[:5], h, c, role
            )
        else:
            raise HypothesisFailure(
                "pigeonhole",
                f"no five clusters agreeing on the forcing pair "
                f"(have {len(trail_lists)} and {len(lead_lists)})",
                level=level,
            )

    return Quadruple(
        level=level,
        pair1=ext1.pair,
        cluster1=ext1.cluster,
        path1=ext1.path,
        pair2=ext2.pair,
        cluster2=ext2.cluster,
        path2=ext2.path,
    )


def power_path_and_prune(
    g: Graph,
    p_alt: Sequence[int],
    k: int,
    family: ClusterFamily,
    h: Hypergraph3,
    c: TwoColoring,
    role: str,
    strict: bool = False,
) -> tuple[list[PrunedCluster], list[dict]]:
    """Delete residual role connectors along the power path of the
    alternating path.

    For every power-path edge, role (2,2)-connectors are deleted while
    one exists; since no (6,6)-connector joins the two clusters, at most
    two deletions can happen (a third would exhibit three disjoint
    copies).  For every power-path triangle the same happens per middle
    placement with (2,1,2)-connectors -- at most six, costing at most 10
    vertices per cluster.  Every deleted vertex is logged with the
    connector that claimed it.
    """
    for i in range(len(p_alt) - 1):
        if not g.has_edge(p_alt[i], p_alt[i + 1]):
            raise ValueError(f"alternating path step ({p_alt[i]}, {p_alt[i + 1]}) is not an edge")
    if len(set(p_alt)) != len(p_alt):
        raise ValueError("alternating path repeats a vertex")
    live: dict[int, set[int]] = {}
    for pos, origin in enumerate(p_alt, start=1):
        if origin not in family.clusters:
            raise ValueError(f"path origin {origin} has no cluster")
        live[pos] = set(family.clusters[origin])
    audit: list[dict] = []
    m = len(p_alt)

    def delete(conn: Connector, positions: tuple[int, ...], stage: str) -> None:
        verts = conn.vertices()
        for pos in positions:
            live[pos] -= verts
        audit.append(
            {
                "stage": stage,
                "positions": positions,
                "vertices": sorted(verts),
                "triples": conn.triples(),
            }
        )

    for i in range(1, m + 1):
        for j in range(i + 1, min(i + k, m) + 1):
            removed = 0
            while True:
                conn = find_c22(h, c, role, sorted(live[i]), sorted(live[j]))
                if conn is None:
                    break
                removed += 1
                if removed > 2:
                    raise HypothesisFailure(
                        "connector-present",
                        "three disjoint (2,2)-connectors on a power edge: "
                        "a (6,6)-connector the auxiliary graph ruled out",
                        connector="c66",
                        positions=(i, j),
                    )
                delete(conn, (i, j), "edge")

    for i in range(1, m + 1):
        for j in range(i + 1, min(i + k, m) + 1):
            for l in range(j + 1, min(i + k, m) + 1):
                for mid, sides in ((i, (j, l)), (j, (i, l)), (l, (i, j))):
                    removed = 0
                    while True:
                        conn = find_c212(
                            h,
                            c,
                            role,
                            sorted(live[sides[0]]),
                            sorted(live[sides[1]]),
                            sorted(live[mid]),
                        )
                        if conn is None:
                            break
                        removed += 1
                        if removed > 2:
                            raise HypothesisFailure(
                                "connector-present",
                                "three disjoint (2,1,2)-connectors on a power triangle: "
                                "a (6,3,6)-connector the auxiliary graph ruled out",
                                connector="c636",
                                positions=(sides[0], sides[1], mid),
                            )
                        delete(conn, (sides[0], sides[1], mid), "triangle")

    hstar = [
        PrunedCluster(position=pos, origin=origin, vertices=tuple(sorted(live[pos])))
        for pos, origin in enumerate(p_alt, start=1)
    ]
    short = [pc for pc in hstar if len(pc.vertices) < 5]
    if short:
        worst = min(short, key=lambda pc: len(pc.vertices))
        message = (
            f"cluster at position {worst.position} kept {len(worst.vertices)} < 5 vertices "
            f"after pruning"
        )
        if strict:
            raise HardFault(message + " despite the strict deletion budget")
        raise HypothesisFailure("pruned-cluster-size", message, position=worst.position)
    return hstar, audit


def blue_path_from_23path(
    f_path: TwoThreePath,
    family: ClusterFamily,
    h: Hypergraph3,
    c: TwoColoring,
    role: str,
) -> TightPath3:
    """Stitch one connector per (2,3)-path step into a role-coloured
    tight path.

    Each step is backed by a triple of disjoint gadget copies; the two
    vertices the previous choice placed in the shared cluster block at
    most two of the three, so a disjoint choice always exists.  Inside
    each shared cluster the hop y1 y2 x2, y2 x2 x1 uses internal cluster
    triples, which are role-coloured by the family invariant.
    """
    res = validate_23_path_against_family(f_path, family)
    if res is not None:
        raise HypothesisFailure("connector-gadget-missing", res)
    verts = f_path.vertices
    sequence: list[int] = []
    prev_in_shared: set[int] = set()
    for step in range(len(verts) - 1):
        u, v = verts[step], verts[step + 1]
        w = f_path.witnesses.get(step)
        if w is None:
            gadget = find_disjoint_triple(h, c, role, "c66", (family.clusters[u], family.clusters[v]))
            kind = "c66"
        else:
            gadget = find_disjoint_triple(
                h, c, role, "c636", (family.clusters[u], family.clusters[v], family.clusters[w])
            )
            kind = "c636"
        if gadget is None:
            raise HypothesisFailure(
                "connector-gadget-missing",
                f"step {step}: no {kind} between clusters {u}, {v}"
                + (f" through {w}" if w is not None else ""),
            )
        choice = next(
            (part for part in gadget.parts if not (set(part.x_side) & prev_in_shared)),
            None,
        )
        if choice is None:
            raise HardFault(
                "two occupied vertices blocked all three disjoint connector copies"
            )
        x1, x2 = choice.x_side
        y1, y2 = choice.y_side
        sequence.extend([x2, x1])
        if choice.z is not None:
            sequence.append(choice.z)
        sequence.extend([y1, y2])
        prev_in_shared = {y1, y2}
    path = TightPath3(tuple(sequence))
    check = validate_tight_path(h, c, path, role)
    if not check:
        raise HardFault(f"stitched path failed validation: {check.violation}")
    return path


def validate_23_path_against_family(f_path: TwoThreePath, family: ClusterFamily) -> Optional[str]:
    if len(set(f_path.vertices)) != len(f_path.vertices):
        return "(2,3)-path repeats a cluster"
    for v in f_path.vertices:
        if v not in family.clusters:
            return f"cluster {v} missing from the family"
    for step, w in f_path.witnesses.items():
        if w not in family.clusters:
            return f"witness cluster {w} missing from the family"
        if w in f_path.vertices:
            return f"witness {w} lies on the path"
    if len(set(f_path.witnesses.values())) != len(f_path.witnesses):
        return "witness clusters repeat"
    return None


@dataclass
class FailureInfo:
    stage: str
    hypothesis: str
    message: str
    details: dict = field(default_factory=dict)


@dataclass
class PipelineOutcome:
    ok: bool
    colour: Optional[str] = None
    path: Optional[TightPath3] = None
    branch: Optional[str] = None  # "connector" | "alternating"
    role: Optional[str] = None
    failure: Optional[FailureInfo] = None
    report: dict = field(default_factory=dict)


def _fail(stage: str, hypothesis: str, message: str, report: dict, **details) -> PipelineOutcome:
    report["failure"] = {"stage": stage, "hypothesis": hypothesis, "message": message}
    return PipelineOutcome(
        ok=False,
        failure=FailureInfo(stage=stage, hypothesis=hypothesis, message=message, details=details),
        role=report.get("role"),
        report=report,
    )


def derive_host_hypergraph(g: Graph, params: PipelineParams) -> tuple[Graph, Hypergraph3]:
    """The blown-up power graph and its triangle hypergraph; the
    construction the colouring is expected to live on."""
    if params.t_prime is None:
        raise ValueError("t_prime is required to build the host hypergraph")
    gk = graph_power(g, params.k)
    gb, _ = blow_up(gk, params.t_prime)
    return gk, triangles_to_hypergraph(gb)


def extract_mono_tight_path(
    g: Graph,
    params: PipelineParams,
    colouring: TwoColoring,
    tie_break: str = BLUE,
    alt_budget: int = DEFAULT_BUDGET,
    host: Optional[tuple[Graph, Hypergraph3]] = None,
) -> PipelineOutcome:
    """Run the full pipeline on a 2-colouring of the derived triangle
    hypergraph and return a validated monochromatic tight path of at
    least n vertices, or a structured failure naming the hypothesis that
    did not survive desk scale.

    ``host`` may pass a precomputed (power graph, hypergraph) pair from
    ``derive_host_hypergraph`` when running many trials on one instance.
    The algorithm is symmetric under exchanging the two colours together
    with ``tie_break``.
    """
    report: dict = {"stages": [], "timings": {}}
    t0 = time.perf_counter()

    def stage_done(name: str) -> None:
        nonlocal t0
        now = time.perf_counter()
        report["stages"].append(name)
        report["timings"][name] = now - t0
        t0 = now

    if tie_break not in (RED, BLUE):
        raise ValueError("tie_break must be a colour")
    n = params.n

    gk, h = host if host is not None else derive_host_hypergraph(g, params)
    if colouring.host.num_vertices != h.num_vertices or (
        colouring.host.packed_triples() != h.packed_triples()
    ):
        raise ValueError("colouring host differs from the derived hypergraph")
    report["host"] = {"vertices": h.num_vertices, "triples": h.num_triples}
    stage_done("derive-host")

    t_prime = params.t_prime
    picks: dict[int, tuple[str, tuple[int, ...]]] = {}
    for origin in range(g.num_vertices):
        cluster = tuple(range(origin * t_prime, (origin + 1) * t_prime))
        got = find_mono_clique(h, colouring, cluster, params.t)
        if got is None:
            stage_done("cluster-cliques")
            return _fail(
                "cluster-cliques",
                "cluster-ramsey",
                f"cluster {origin} holds no monochromatic clique of {params.t} vertices "
                f"at blow-up size {t_prime}",
                report,
                origin=origin,
            )
        picks[origin] = got
    counts = {
        BLUE: sum(1 for col, _ in picks.values() if col == BLUE),
        RED: sum(1 for col, _ in picks.values() if col == RED),
    }
    if counts[BLUE] > counts[RED]:
        role = BLUE
    elif counts[RED] > counts[BLUE]:
        role = RED
    else:
        role = tie_break
    origins = sorted(v for v, (col, _) in picks.items() if col == role)
    family = ClusterFamily(role, {v: picks[v][1] for v in origins})
    report["role"] = role
    report["cluster_counts"] = counts
    report["family_size"] = len(origins)
    stage_done("cluster-cliques")

    in_family = set(origins)
    pairs = [(u, v) for u, v in gk.edges() if u in in_family and v in in_family]
    triples: list[tuple[int, int, int]] = []
    for a, b, d in triangles_to_hypergraph(gk).triples():
        if a in in_family and b in in_family and d in in_family:
            triples.extend(((a, b, d), (a, d, b), (b, d, a)))
    scope = ConnectorScope(pairs=tuple(pairs), triples=tuple(triples))
    f_graph = build_auxiliary_f(h, colouring, role, family, scope)
    report["auxiliary"] = {
        "vertices": len(origins),
        "two_edges": len(f_graph.two_edges),
        "three_edges": len(f_graph.three_edges),
    }
    stage_done("auxiliary-graph")

    index_of = {v: i for i, v in enumerate(origins)}
    f_compact = TwoThreeGraph(
        len(origins),
        [(index_of[u], index_of[v]) for u, v in f_graph.edges2()],
        [(index_of[u], index_of[v], index_of[w]) for u, v, w in f_graph.edges3()],
    )

    def to_origin_path(p: TwoThreePath) -> TwoThreePath:
        return TwoThreePath(
            tuple(origins[i] for i in p.vertices),
            {step: origins[w] for step, w in p.witnesses.items()},
        )

    def finish_connector_branch(p_compact: TwoThreePath) -> PipelineOutcome:
        f_path = to_origin_path(p_compact)
        tight = blue_path_from_23path(f_path, family, h, colouring, role)
        if len(tight) < n:
            raise HardFault(f"connector branch built only {len(tight)} < {n} vertices")
        final = validate_tight_path(h, colouring, tight, role)
        if not final:
            raise HardFault(f"connector branch output invalid: {final.violation}")
        report["branch"] = "connector"
        report["wlog_branch"] = "blue"  # output colour equals the role colour
        report["output"] = {
            "colour": role,
            "length": len(tight),
            "path": list(tight.vertices),
            "validated": True,
        }
        stage_done("connector-branch")
        return PipelineOutcome(
            ok=True, colour=role, path=tight, branch="connector", role=role, report=report
        )

    attempt = find_23_path(f_compact, n)
    stage_done("path-attempt")
    if attempt is not None:
        return finish_connector_branch(attempt)

    needed = 5**params.k * params.c * n
    if len(origins) < needed:
        return _fail(
            "obstruction-sets",
            "obstruction-precondition",
            f"auxiliary graph has {len(origins)} clusters but the extraction "
            f"argument needs 5^{params.k} * {params.c} * {n} = {needed}",
            report,
            have=len(origins),
            needed=needed,
        )
    dichotomy = extract_obstruction_sets(f_compact, params.k + 1, params.c, n)
    stage_done("obstruction-sets")
    if dichotomy.kind == "path":
        return finish_connector_branch(dichotomy.path)

    sets_origin = [tuple(origins[i] for i in s) for s in dichotomy.sets]
    report["obstruction_sets"] = [len(s) for s in sets_origin]

    g_prime, _ = induced_subgraph(g, set().union(*map(set, sets_origin)))
    recert = certify_p1(g_prime, params.eps, params.m, mode="sampled", trials=300, seed=0)
    report["gprime_recertification"] = {
        "passed": recert.passed,
        "trials": recert.trials,
        "violations": len(recert.violations),
    }
    stage_done("recertify-gprime")

    alt = find_alternating_path(g, sets_origin, params.m, budget=alt_budget)
    stage_done("alternating-path")
    if not alt.found:
        return _fail(
            "alternating-path",
            f"alternating-path-{alt.status}",
            f"no alternating path of {params.m} vertices ({alt.status} "
            f"after {alt.expansions} expansions)",
            report,
            status=alt.status,
        )

    try:
        hstar, audit = power_path_and_prune(
            g, alt.path, params.k, family, h, colouring, role, strict=params.strict_constants
        )
    except HypothesisFailure as exc:
        if exc.kind == "connector-present":
            raise HardFault(
                f"pruning found a compound connector the auxiliary graph ruled out: {exc}"
            ) from exc
        stage_done("pruning")
        return _fail("pruning", exc.kind, str(exc), report, **exc.details)
    report["pruning"] = {
        "deletions": len(audit),
        "smallest_cluster": min(len(pc.vertices) for pc in hstar),
        "audit": [
            {
                "stage": rec["stage"],
                "positions": list(rec["positions"]),
                "vertices": list(rec["vertices"]),
                "triples": [list(t) for t in rec["triples"]],
            }
            for rec in audit
        ],
    }
    stage_done("pruning")

    try:
        quad = base_quadruple(hstar, params.ell)
        problems = validate_quadruple(quad, h, colouring, role, hstar, params.ell)
        if problems:
            raise HardFault(f"base quadruple invalid: {problems[0]}")
        for i in range(2, n):
            window = hstar[(i - 1) * params.ell : i * params.ell]
            quad = extend_quadruple(quad, window, h, colouring, role)
            problems = validate_quadruple(quad, h, colouring, role, hstar, params.ell)
            if problems:
                raise HardFault(f"level {i} quadruple invalid: {problems[0]}")
    except HypothesisFailure as exc:
        if exc.kind == "connector-present" and params.k >= 2 * params.ell:
            # Pruning covered every cluster pair within two windows, so a
            # surviving connector is a contradiction, not desk physics.
            raise HardFault(f"induction found a connector pruning missed: {exc}") from exc
        stage_done("quadruple-induction")
        return _fail("quadruple-induction", exc.kind, str(exc), report, **exc.details)
    stage_done("quadruple-induction")

    out_colour = other_colour(role)
    tight = TightPath3(quad.path1)
    if len(tight) < n:
        raise HardFault(f"induction delivered {len(tight)} < {n} vertices")
    final = validate_tight_path(h, colouring, tight, out_colour)
    if not final:
        raise HardFault(f"alternating branch output invalid: {final.violation}")
    report["branch"] = "alternating"
    report["wlog_branch"] = "red"  # output colour is opposite to the role colour
    report["output"] = {
        "colour": out_colour,
        "length": len(tight),
        "path": list(tight.vertices),
        "validated": True,
    }
    return PipelineOutcome(
        ok=True, colour=out_colour, path=tight, branch="alternating", role=role, report=report
    )
