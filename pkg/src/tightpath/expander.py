"""Random regular host graphs and bipartite-expansion certification.

The host graph only needs one property: every two disjoint vertex sets
of size eps*n span at least one edge.  We realise candidates as unions
of random Hamilton-cycle layers and certify them one of two ways:

* ``spectral`` -- an estimate of the largest non-trivial adjacency
  eigenvalue magnitude; by the expander mixing lemma, d*ceil(eps*n)/N
  exceeding that bound is a sufficient (one-sided) proof.
* ``sampled`` -- random disjoint set pairs looking for a violating pair
  with no edge between them; falsification only, never a proof.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix

from .graph import Graph
from .packing import pack2

_LAYER_RESTARTS = 64
_SWAP_TRIES = 400


@dataclass(frozen=True)
class ExpanderParams:
    """Parameters for sampling a host graph.  Sets of size eps*n must be
    nonempty at the scales used; since n is chosen per sample, that
    check (eps * a * n >= 1) happens at sample time."""

    eps: Fraction
    a: int
    b: int
    seed: int

    def __post_init__(self):
        eps = Fraction(self.eps)
        object.__setattr__(self, "eps", eps)
        if not (0 < eps < 1):
            raise ValueError("eps must lie in (0, 1)")
        if self.a < 1 or self.b < 1:
            raise ValueError("a and b must be positive")


@dataclass
class ExpansionCertificate:
    """Outcome of a (P1)-style certification run.

    ``lambda2_bound`` is only meaningful in spectral mode; ``violations``
    holds (S, T) pairs with no edge between them in sampled mode.
    """

    mode: str
    passed: bool
    n_scale: int
    eps: Fraction
    set_size: int
    degree: Optional[int] = None
    lambda2_bound: Optional[float] = None
    threshold: Optional[float] = None
    trials: int = 0
    violations: list = field(default_factory=list)

    @property
    def is_proof(self) -> bool:
        return self.mode == "spectral" and self.passed


def _random_cycle_layer(n: int, used: set[int], rng: random.Random) -> list[tuple[int, int]]:
    """One Hamilton-cycle layer avoiding edges already in ``used``.

    Collisions are repaired by swapping two cycle positions, which keeps
    the layer a single cycle and touches only four edges.
    """
    for _ in range(_LAYER_RESTARTS):
        perm = list(range(n))
        rng.shuffle(perm)

        def edge(i: int) -> int:
            return pack2(perm[i], perm[(i + 1) % n])

        bad = [i for i in range(n) if edge(i) in used]
        ok = True
        while bad:
            i = bad.pop()
            if edge(i) not in used:
                continue
            fixed = False
            for _ in range(_SWAP_TRIES):
                j = rng.randrange(n)
                # Swapping perm[i] and perm[j] rewires the four edges at
                # positions i-1, i, j-1, j; adjacent swaps degenerate.
                if j == i or (j - i) % n in (1, n - 1):
                    continue
                perm[i], perm[j] = perm[j], perm[i]
                touched = [(i - 1) % n, i, (j - 1) % n, j]
                if any(edge(p) in used for p in touched):
                    perm[i], perm[j] = perm[j], perm[i]
                    continue
                fixed = True
                break
            if not fixed:
                ok = False
                break
        if ok:
            return [(perm[i], perm[(i + 1) % n]) for i in range(n)]
    raise RuntimeError("collision repair did not converge; graph too dense for layered sampling")


def sample_expander(params: ExpanderParams, n: int) -> Graph:
    """Sample a b-regular graph on a*n vertices as a union of b/2 random
    Hamilton cycles with collision repair.  Deterministic per seed."""
    if params.b % 2 != 0 or params.b < 4:
        raise ValueError("degree bound b must be even and >= 4")
    size = params.a * n
    if size < params.b + 1:
        raise ValueError(f"{size} vertices cannot host a {params.b}-regular graph")
    if params.eps * size < 1:
        raise ValueError("eps * a * n < 1: expansion sets would be empty at this scale")
    rng = random.Random(params.seed)
    used: set[int] = set()
    edges: list[tuple[int, int]] = []
    for _ in range(params.b // 2):
        layer = _random_cycle_layer(size, used, rng)
        for u, v in layer:
            used.add(pack2(u, v))
        edges.extend(layer)
    return Graph(size, edges, max_degree=params.b)


def _adjacency(g: Graph) -> csr_matrix:
    rows, cols = [], []
    for u in range(g.num_vertices):
        for v in g.neighbors(u):
            rows.append(u)
            cols.append(v)
    data = np.ones(len(rows), dtype=np.float64)
    return csr_matrix((data, (rows, cols)), shape=(g.num_vertices, g.num_vertices))


def second_eigenvalue_bound(g: Graph, iterations: int = 2000, seed: int = 0) -> float:
    """Estimate max(|lambda_2|, |lambda_N|) of a regular graph's adjacency
    matrix by power iteration deflated against the all-ones eigenvector.

    The norm-ratio estimate converges from below; a small relative slack
    is added so the returned value can be used as an upper bound in the
    mixing-lemma test.  Exact eigensolves with rigorous error bounds are
    out of scope.
    """
    if not g.is_regular():
        raise ValueError("spectral bound requires a regular graph")
    n = g.num_vertices
    if n < 2:
        return 0.0
    a = _adjacency(g)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    x -= x.mean()
    x /= np.linalg.norm(x)
    est = 0.0
    for it in range(iterations):
        y = a @ x
        y -= y.mean()  # deflation: for regular graphs the top eigenvector is uniform
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return 0.0
        new_est = norm  # ||A x|| / ||x|| with ||x|| = 1
        x = y / norm
        if it > 32 and abs(new_est - est) < 1e-13 * max(1.0, new_est):
            est = new_est
            break
        est = new_est
    return est * (1.0 + 1e-8) + 1e-9


def _sampled_violations(
    g: Graph, set_size: int, trials: int, seed: int, max_record: int = 16
) -> tuple[int, list[tuple[tuple[int, ...], tuple[int, ...]]]]:
    """Draw ``trials`` random disjoint (S, T) pairs of exactly ``set_size``
    vertices and count pairs with e(S, T) = 0.  Vectorised in chunks."""
    n = g.num_vertices
    if 2 * set_size > n:
        raise ValueError("set size too large for disjoint sampling")
    a = _adjacency(g)
    rng = np.random.default_rng(seed)
    violations: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    total_bad = 0
    chunk = 512
    done = 0
    while done < trials:
        b = min(chunk, trials - done)
        s_ind = np.zeros((n, b), dtype=np.float64)
        t_ind = np.zeros((n, b), dtype=np.float64)
        picks = np.empty((b, 2 * set_size), dtype=np.int64)
        for j in range(b):
            picks[j] = rng.choice(n, size=2 * set_size, replace=False)
            s_ind[picks[j, :set_size], j] = 1.0
            t_ind[picks[j, set_size:], j] = 1.0
        counts = np.einsum("ij,ij->j", s_ind, a @ t_ind)
        for j in np.nonzero(counts == 0)[0]:
            total_bad += 1
            if len(violations) < max_record:
                violations.append(
                    (
                        tuple(sorted(picks[j, :set_size].tolist())),
                        tuple(sorted(picks[j, set_size:].tolist())),
                    )
                )
        done += b
    return total_bad, violations


def certify_p1(
    g: Graph,
    eps: Fraction,
    n: int,
    mode: str = "spectral",
    trials: int = 1000,
    seed: int = 0,
) -> ExpansionCertificate:
    """Certify that every two disjoint vertex sets of size >= eps*n span
    an edge.

    Spectral mode (regular graphs only): passes iff the eigenvalue bound
    is below d * ceil(eps*n) / N; the mixing lemma then forces
    e(S, T) >= |S| |T| d / N - lambda * sqrt(|S| |T|) > 0 for all pairs at
    or above the size threshold.  Sampled mode records violating pairs
    and proves nothing when none are found.
    """
    eps = Fraction(eps)
    if not (0 < eps < 1):
        raise ValueError("eps must lie in (0, 1)")
    if n < 1:
        raise ValueError("n must be positive")
    set_size = math.ceil(eps * n)
    if mode == "spectral":
        if not g.is_regular():
            raise ValueError("spectral mode requires a regular graph")
        d = g.degree(0) if g.num_vertices else 0
        lam = second_eigenvalue_bound(g, seed=seed)
        threshold = d * set_size / g.num_vertices if g.num_vertices else 0.0
        return ExpansionCertificate(
            mode="spectral",
            passed=bool(lam < threshold),
            n_scale=n,
            eps=eps,
            set_size=set_size,
            degree=d,
            lambda2_bound=lam,
            threshold=threshold,
        )
    if mode == "sampled":
        bad, recorded = _sampled_violations(g, set_size, trials, seed)
        return ExpansionCertificate(
            mode="sampled",
            passed=bad == 0,
            n_scale=n,
            eps=eps,
            set_size=set_size,
            trials=trials,
            violations=recorded,
        )
    raise ValueError(f"unknown mode: {mode}")
