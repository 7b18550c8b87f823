"""Set-alternating path search.

Given disjoint vertex sets A_1, ..., A_{k+1} and a target length m, we
look for a path (x_1, ..., x_m) whose i-th vertex lies in A_j for
j = i mod (k+1).  The underlying existence statement is not
constructive, so the search is a budgeted depth-first backtracking over
class-respecting edges that fails loudly when the budget runs out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import Graph

DEFAULT_BUDGET = 2_000_000


@dataclass
class AltPathResult:
    path: Optional[tuple[int, ...]]
    status: str  # "found" | "absent" | "budget"
    expansions: int

    @property
    def found(self) -> bool:
        return self.status == "found"


def _check_sets(sets: Sequence[Iterable[int]]) -> list[frozenset[int]]:
    frozen = [frozenset(s) for s in sets]
    seen: set[int] = set()
    for s in frozen:
        if not s:
            raise ValueError("all alternation classes must be nonempty")
        if seen & s:
            raise ValueError("alternation classes must be pairwise disjoint")
        seen |= s
    return frozen


def find_alternating_path(
    g: Graph,
    sets: Sequence[Iterable[int]],
    m: int,
    budget: int = DEFAULT_BUDGET,
) -> AltPathResult:
    """Depth-first search for a class-alternating path of m vertices.

    Returns a result whose status distinguishes exhaustive absence from
    budget exhaustion; the path, when found, satisfies
    ``validate_alternating_path``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    classes = _check_sets(sets)
    r = len(classes)

    def cls(position: int) -> frozenset[int]:  # positions are 1-based
        return classes[(position - 1) % r]

    path: list[int] = []
    used: set[int] = set()
    expansions = 0
    # Stack of candidate iterators, one per position.
    stack = [iter(sorted(cls(1)))]
    while stack:
        it = stack[-1]
        advanced = False
        for v in it:
            if v in used:
                continue
            if path and not g.has_edge(path[-1], v):
                continue
            expansions += 1
            if expansions > budget:
                return AltPathResult(None, "budget", expansions)
            path.append(v)
            used.add(v)
            if len(path) == m:
                return AltPathResult(tuple(path), "found", expansions)
            stack.append(iter(sorted(cls(len(path) + 1))))
            advanced = True
            break
        if not advanced:
            stack.pop()
            if path:
                used.discard(path.pop())
    return AltPathResult(None, "absent", expansions)


def validate_alternating_path(
    g: Graph, sets: Sequence[Iterable[int]], m: int, path: Sequence[int]
) -> Optional[str]:
    """Independent validator: length, distinctness, edges, class pattern.

    Returns None when valid, else a message naming the first violation.
    """
    classes = _check_sets(sets)
    r = len(classes)
    if len(path) != m:
        return f"length {len(path)} != {m}"
    if len(set(path)) != len(path):
        return "repeated vertex"
    for i, v in enumerate(path):
        if v not in classes[i % r]:
            return f"vertex {v} at position {i + 1} not in class {(i % r) + 1}"
    for i in range(len(path) - 1):
        if not g.has_edge(path[i], path[i + 1]):
            return f"missing edge ({path[i]}, {path[i + 1]})"
    return None
