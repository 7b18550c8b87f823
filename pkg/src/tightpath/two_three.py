"""(2,3)-graphs: structures, DFS traversal, and obstruction extraction.

A (2,3)-graph has plain 2-edges {u, v} and 3-edges ({u, v}, w) whose
witness w is a third vertex.  A (2,3)-path is a vertex sequence where
each consecutive pair is joined by a 2-edge or by a 3-edge whose witness
lies outside the path, all witnesses distinct.

``dfs_traverse`` grows such a path greedily (preferring 2-edges) and
backtracks when stuck, maintaining:

* S      -- vertices fully dealt with,
* W_S    -- witnesses consumed by steps that have since been retracted,
* U      -- the active (2,3)-path,
* W_U    -- witnesses consumed by U's current steps,
* T_i    -- the not-yet-touched part of each input class V_i.

After every loop iteration the checkable invariants are:

(A1) U is a (2,3)-path in F and W_U is exactly the set of witnesses of
     its 3-edge steps.
(A2) S and U live inside V_k; T_i is a subset of V_i; |W_S| <= |S|;
     |W_U| <= max(0, m-1); and every witness in W_U was drawn from some
     T_i (so it lies in the classes but in no current T_i, nor in S, U
     or W_S -- all six containers stay pairwise disjoint).

The witness-location clause is stated here in its provable form: the
source text's subset phrasing cannot hold verbatim once a witness has
been removed from its class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .faults import HardFault
from .packing import pack2, pack_pair_witness, unpack2
from .hypergraph import ValidationResult


class TwoThreeGraph:
    """Vertices ``0 .. num_vertices-1``; 2-edges as unordered pairs and
    3-edges as (unordered pair, witness) with all three distinct.

    Witness lists per pair are kept sorted so smallest-index selection
    is a filtered scan.
    """

    __slots__ = ("num_vertices", "two_edges", "three_edges", "_nbr2", "_wits")

    def __init__(
        self,
        num_vertices: int,
        two_edges: Iterable[tuple[int, int]] = (),
        three_edges: Iterable[tuple[int, int, int]] = (),
    ):
        self.num_vertices = num_vertices
        self.two_edges: set[int] = set()
        self.three_edges: set[int] = set()
        self._nbr2: dict[int, set[int]] = {}
        self._wits: dict[int, list[int]] = {}
        for u, v in two_edges:
            self._check_vertex(u)
            self._check_vertex(v)
            if u == v:
                raise ValueError(f"2-edge ({u}, {v}) is a loop")
            self.two_edges.add(pack2(u, v))
            self._nbr2.setdefault(u, set()).add(v)
            self._nbr2.setdefault(v, set()).add(u)
        wit_sets: dict[int, set[int]] = {}
        for u, v, w in three_edges:
            for x in (u, v, w):
                self._check_vertex(x)
            if u == v or w in (u, v):
                raise ValueError(f"3-edge ({u}, {v}, {w}) has repeated vertices")
            code = pack_pair_witness(u, v, w)
            if code not in self.three_edges:
                self.three_edges.add(code)
                wit_sets.setdefault(pack2(u, v), set()).add(w)
        self._wits = {pair: sorted(ws) for pair, ws in wit_sets.items()}

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.num_vertices):
            raise ValueError(f"vertex {v} out of range")

    def has2(self, u: int, v: int) -> bool:
        return pack2(u, v) in self.two_edges

    def has3(self, u: int, v: int, w: int) -> bool:
        return pack_pair_witness(u, v, w) in self.three_edges

    def witnesses(self, u: int, v: int) -> list[int]:
        """Sorted witness list of the pair {u, v} (empty when none)."""
        return self._wits.get(pack2(u, v), [])

    def neighbours2(self, u: int) -> set[int]:
        return self._nbr2.get(u, set())

    def edges2(self) -> list[tuple[int, int]]:
        return [unpack2(code) for code in sorted(self.two_edges)]

    def edges3(self) -> list[tuple[int, int, int]]:
        out = []
        for pair in sorted(self._wits):
            u, v = unpack2(pair)
            for w in self._wits[pair]:
                out.append((u, v, w))
        return out

    @property
    def num_edges(self) -> int:
        return len(self.two_edges) + len(self.three_edges)

    def __repr__(self) -> str:
        return (
            f"TwoThreeGraph(n={self.num_vertices}, "
            f"e2={len(self.two_edges)}, e3={len(self.three_edges)})"
        )


@dataclass(frozen=True)
class TwoThreePath:
    """A (2,3)-path: ordered distinct vertices plus a partial map from
    step index (0-based, step i joins vertices i and i+1) to the witness
    consumed by that step."""

    vertices: tuple[int, ...]
    witnesses: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.vertices)


def is_transversal(edge: Sequence[int], partition: Sequence[Iterable[int]]) -> bool:
    """True iff all vertices of the edge lie in pairwise distinct sets of
    the partition.  A vertex outside every set makes the edge
    non-transversal.  2-edges are (u, v); 3-edges are (u, v, w)."""
    sets = [frozenset(p) for p in partition]
    seen: set[int] = set()
    for s in sets:
        if seen & s:
            raise ValueError("partition sets must be pairwise disjoint")
        seen |= s
    indices = []
    for x in edge:
        idx = next((i for i, s in enumerate(sets) if x in s), None)
        if idx is None:
            return False
        indices.append(idx)
    return len(set(indices)) == len(indices)


def validate_23_path(f: TwoThreeGraph, p: TwoThreePath) -> ValidationResult:
    """Check each step's edge membership, witness distinctness, and
    witness-disjointness from the path vertices.  Single vertices pass
    vacuously."""
    verts = p.vertices
    if len(set(verts)) != len(verts):
        return ValidationResult(False, "repeated path vertex")
    vert_set = set(verts)
    used_wits: set[int] = set()
    for i in range(len(verts) - 1):
        u, v = verts[i], verts[i + 1]
        w = p.witnesses.get(i)
        if w is None:
            if not f.has2(u, v):
                return ValidationResult(False, f"step {i}: no 2-edge ({u}, {v})", i)
        else:
            if not f.has3(u, v, w):
                return ValidationResult(False, f"step {i}: no 3-edge ({u}, {v})({w})", i)
            if w in vert_set:
                return ValidationResult(False, f"step {i}: witness {w} lies on the path", i)
            if w in used_wits:
                return ValidationResult(False, f"step {i}: witness {w} reused", i)
            used_wits.add(w)
    extra = set(p.witnesses) - set(range(len(verts) - 1))
    if extra:
        return ValidationResult(False, f"witness recorded for missing step {min(extra)}")
    return ValidationResult(True)


class DfsState:
    """Full traversal state; snapshot-able after every loop iteration."""

    __slots__ = ("S", "W_S", "U", "witness_of", "W_U", "T", "v_sets", "class_of", "iterations")

    def __init__(self, v_sets: Sequence[Iterable[int]]):
        self.v_sets = [frozenset(s) for s in v_sets]
        seen: set[int] = set()
        for s in self.v_sets:
            if seen & s:
                raise ValueError("input classes must be pairwise disjoint")
            seen |= s
        self.S: set[int] = set()
        self.W_S: set[int] = set()
        self.U: list[int] = []
        self.witness_of: dict[int, int] = {}
        self.W_U: set[int] = set()
        self.T: list[set[int]] = [set(s) for s in self.v_sets]
        self.class_of: dict[int, int] = {}
        for i, s in enumerate(self.v_sets):
            for v in s:
                self.class_of[v] = i
        self.iterations = 0

    @property
    def m(self) -> int:
        return len(self.U)

    @property
    def k(self) -> int:
        return len(self.T)

    def path(self) -> TwoThreePath:
        return TwoThreePath(tuple(self.U), dict(self.witness_of))

    def snapshot(self) -> "DfsSnapshot":
        return DfsSnapshot(
            S=frozenset(self.S),
            W_S=frozenset(self.W_S),
            U=tuple(self.U),
            witness_of=dict(self.witness_of),
            W_U=frozenset(self.W_U),
            T=tuple(frozenset(t) for t in self.T),
            iterations=self.iterations,
        )


@dataclass(frozen=True)
class DfsSnapshot:
    S: frozenset
    W_S: frozenset
    U: tuple
    witness_of: dict
    W_U: frozenset
    T: tuple
    iterations: int


def trace_line(state: DfsState) -> str:
    """One audit line per loop iteration: |S| |W_S| m |W_U| |T_1| .. |T_k|."""
    sizes = " ".join(str(len(t)) for t in state.T)
    return f"{len(state.S)} {len(state.W_S)} {state.m} {len(state.W_U)} {sizes}"


def check_invariants(f: TwoThreeGraph, state: DfsState) -> list[str]:
    """Return all (A1)/(A2) violations of a state; empty means both hold."""
    problems: list[str] = []
    # (A1): U is a (2,3)-path and W_U is exactly its witness set.
    res = validate_23_path(f, state.path())
    if not res:
        problems.append(f"A1: U is not a (2,3)-path ({res.violation})")
    if set(state.witness_of.values()) != state.W_U:
        problems.append("A1: W_U differs from the witnesses of U's steps")
    # (A2)
    v_last = state.v_sets[-1]
    if not state.S <= v_last:
        problems.append("A2: S not inside V_k")
    if not set(state.U) <= v_last:
        problems.append("A2: U not inside V_k")
    for i, t in enumerate(state.T):
        if not t <= state.v_sets[i]:
            problems.append(f"A2: T_{i + 1} not inside V_{i + 1}")
    if len(state.W_S) > len(state.S):
        problems.append("A2: |W_S| > |S|")
    if len(state.W_U) > max(0, state.m - 1):
        problems.append("A2: |W_U| > max(0, m-1)")
    all_classes: set[int] = set().union(*state.v_sets) if state.v_sets else set()
    t_union: set[int] = set().union(*state.T) if state.T else set()
    for w in state.W_U:
        if w not in all_classes:
            problems.append(f"A2: witness {w} outside the input classes")
        if w in t_union or w in state.S or w in set(state.U) or w in state.W_S:
            problems.append(f"A2: witness {w} not removed from live sets")
    return problems


Observer = Callable[[DfsState], Optional[bool]]


def dfs_traverse(
    f: TwoThreeGraph,
    v_sets: Sequence[Iterable[int]],
    ordering: Optional[Sequence[int]] = None,
    observer: Optional[Observer] = None,
) -> tuple[DfsState, int]:
    """Greedy DFS traversal of a (2,3)-graph through classes V_1 .. V_k.

    In each loop iteration either the active path U gains a vertex of
    T_k -- reachable from its last vertex by a 2-edge, or by a 3-edge
    whose witness is still available in some T_i -- or its last vertex
    retreats into S.  2-edges are preferred; otherwise the
    smallest-index available witness is consumed, leaving its class.
    On retreat, a witness consumed by the vanishing step returns to W_S.

    "Smallest index" refers to ``ordering`` (ascending vertex id by
    default).  The observer runs after every iteration; a truthy return
    stops the traversal early.  Once T_k empties, the remaining active
    vertices retreat one by one (a pure suffix of retreat steps), so
    every visited vertex ends up fully dealt with.  Terminates within
    2 |V_k| iterations, since each iteration either moves a vertex out
    of T_k for good or out of U for good.
    """
    state = DfsState(v_sets)
    k = state.k
    if k < 1:
        raise ValueError("need at least one class")
    if ordering is None:
        rank = None
    else:
        rank = {v: i for i, v in enumerate(ordering)}
        missing = set().union(*state.v_sets) - set(rank)
        if missing:
            raise ValueError(f"ordering misses vertices, e.g. {min(missing)}")

    def key(v: int) -> int:
        return v if rank is None else rank[v]

    t_k = state.T[k - 1]
    limit = 2 * len(t_k)
    stopped = False
    while (t_k or state.m > 0) and not stopped:
        if state.m == 0:
            v = min(t_k, key=key)
            state.U.append(v)
            t_k.discard(v)
        else:
            u_m = state.U[-1]
            available = lambda w: w in state.T[state.class_of[w]] if w in state.class_of else False
            t_ext = [
                v
                for v in t_k
                if f.has2(u_m, v) or any(available(w) for w in f.witnesses(u_m, v))
            ]
            if t_ext:
                v = min(t_ext, key=key)
                t_k.discard(v)
                if not f.has2(u_m, v):
                    usable = [w for w in f.witnesses(u_m, v) if available(w)]
                    if not usable:
                        raise HardFault("extension chosen without an available witness")
                    w = min(usable, key=key)
                    state.witness_of[state.m - 1] = w
                    state.W_U.add(w)
                    state.T[state.class_of[w]].discard(w)
                state.U.append(v)
            else:
                u_m = state.U.pop()
                state.S.add(u_m)
                if state.m >= 1:
                    w = state.witness_of.pop(state.m - 1, None)
                    if w is not None:
                        if w not in state.W_U:
                            raise HardFault("retreating step's witness missing from W_U")
                        state.W_U.discard(w)
                        state.W_S.add(w)
        state.iterations += 1
        if state.iterations > limit:
            raise HardFault("traversal exceeded the 2|V_k| iteration bound")
        if observer is not None and observer(state):
            stopped = True
    return state, state.iterations


def find_23_path(
    f: TwoThreeGraph,
    n: int,
    vertices: Optional[Iterable[int]] = None,
    ordering: Optional[Sequence[int]] = None,
) -> Optional[TwoThreePath]:
    """Greedy attempt at an n-vertex (2,3)-path: run the traversal with a
    single class (the whole vertex set by default) and stop as soon as
    the active path reaches n vertices.  None means the greedy search
    exhausted its sweep, not that no such path exists."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pool = range(f.num_vertices) if vertices is None else vertices
    found: list[TwoThreePath] = []

    def watch(state: DfsState) -> bool:
        if state.m >= n:
            found.append(state.path())
            return True
        return False

    dfs_traverse(f, [set(pool)], ordering=ordering, observer=watch)
    return found[0] if found else None


@dataclass
class ObstructionResult:
    """Outcome of the path-or-sets dichotomy."""

    kind: str  # "path" | "sets"
    path: Optional[TwoThreePath] = None
    sets: Optional[list[tuple[int, ...]]] = None


def transversal_violations(
    f: TwoThreeGraph, sets: Sequence[Iterable[int]]
) -> list[tuple[int, ...]]:
    """Exhaustive scan: all edges of ``f`` that are transversal with
    respect to ``sets``."""
    frozen = [frozenset(s) for s in sets]
    out: list[tuple[int, ...]] = []
    for u, v in f.edges2():
        if is_transversal((u, v), frozen):
            out.append((u, v))
    for u, v, w in f.edges3():
        if is_transversal((u, v, w), frozen):
            out.append((u, v, w))
    return out


def witness_pair_violations(
    f: TwoThreeGraph, sets: Sequence[Iterable[int]]
) -> list[tuple[int, int, int]]:
    """Exhaustive scan for 3-edges uv(w) with one pair vertex in the
    union of the first k-1 sets and the other pair vertex plus the
    witness both in the last set."""
    if not sets:
        return []
    head: set[int] = set().union(*[set(s) for s in sets[:-1]]) if len(sets) > 1 else set()
    last = set(sets[-1])
    out = []
    for u, v, w in f.edges3():
        if w in last and (
            (u in head and v in last) or (v in head and u in last)
        ):
            out.append((u, v, w))
    return out


def extract_obstruction_sets(
    f: TwoThreeGraph,
    k: int,
    c: int,
    n: int,
    ordering: Optional[Sequence[int]] = None,
) -> ObstructionResult:
    """Constructive dichotomy: either a (2,3)-path with >= n vertices, or
    k disjoint sets such that no edge of ``f`` is transversal and no
    3-edge has a pair vertex in the first k-1 sets with its other pair
    vertex and witness in the last set.

    Level 1 returns the whole vertex set.  Level j+1 recurses with path
    target 5n (so the inner sets have size 5cn), runs the traversal on
    them and either extracts the active path once it reaches n vertices,
    or stops at the first state with |S| = cn and returns
    (T_1, ..., T_{k-1}, S, T_k) trimmed to size exactly cn.  Outcomes of
    the "sets" kind are post-validated by the exhaustive scans; a scan
    failure is a hard fault because the extraction argument guarantees
    them.
    """
    if k < 1 or c < 1 or n < 1:
        raise ValueError("k, c, n must be positive")
    if f.num_vertices < 5 ** (k - 1) * c * n:
        raise ValueError(
            f"need at least 5^{k - 1} * {c} * {n} = {5 ** (k - 1) * c * n} vertices, "
            f"got {f.num_vertices}"
        )
    if k == 1:
        return ObstructionResult(kind="sets", sets=[tuple(range(f.num_vertices))])

    inner = extract_obstruction_sets(f, k - 1, c, 5 * n, ordering=ordering)
    if inner.kind == "path":
        return inner
    assert inner.sets is not None
    classes = [tuple(sorted(s)[: 5 * c * n]) for s in inner.sets]

    target_s = c * n
    hit: list[DfsSnapshot] = []
    found_path: list[TwoThreePath] = []

    def watch(state: DfsState) -> bool:
        if state.m >= n:
            found_path.append(state.path())
            return True
        if len(state.S) >= target_s:
            hit.append(state.snapshot())
            return True
        return False

    dfs_traverse(f, classes, ordering=ordering, observer=watch)

    if found_path:
        path = found_path[0]
        if not validate_23_path(f, path) or len(path) < n:
            raise HardFault("extracted path failed validation")
        return ObstructionResult(kind="path", path=path)

    if not hit:
        raise HardFault(
            "traversal finished without the path target or |S| = cn; "
            "the counting argument excludes this"
        )
    snap = hit[0]
    if len(snap.S) != target_s:
        raise HardFault("stopped with |S| != cn")
    raw = [set(t) for t in snap.T[:-1]] + [set(snap.S), set(snap.T[-1])]
    sets_out: list[tuple[int, ...]] = []
    for s in raw:
        if len(s) < target_s:
            raise HardFault(f"obstruction set of size {len(s)} < cn = {target_s}")
        sets_out.append(tuple(sorted(s)[:target_s]))
    bad = transversal_violations(f, sets_out)
    if bad:
        raise HardFault(f"transversal survived extraction, e.g. {bad[0]}")
    bad3 = witness_pair_violations(f, sets_out)
    if bad3:
        raise HardFault(f"witness-pair pattern survived extraction, e.g. {bad3[0]}")
    return ObstructionResult(kind="sets", sets=sets_out)
