#!/usr/bin/env python3
"""Sampling a host graph and certifying its bipartite expansion.

The whole construction rests on one property of the host: every two
disjoint vertex sets above an eps*n size threshold span at least one
edge.  We sample candidates as unions of random Hamilton cycles and
certify them spectrally (a sufficient, one-sided proof via the mixing
lemma) plus по sampling (falsification only).
"""

from fractions import Fraction

from tightpath import ExpanderParams, certify_p1, edge_count_between, sample_expander

eps = Fraction(1, 5)
params = ExpanderParams(eps=eps, a=1, b=16, seed=7)
g = sample_expander(params, 200)
print(f"sampled host: {g.num_vertices} vertices, {g.num_edges} edges, 16-regular")

cert = certify_p1(g, Fraction(1, 2), 200, mode="spectral")
print(
    f"spectral certificate: eigenvalue bound {cert.lambda2_bound:.3f} "
    f"vs threshold {cert.threshold:.3f} -> {'PASS' if cert.passed else 'fail'}"
)
print(f"  (a pass is a proof: sets of {cert.set_size} vertices always span an edge)")

sampled = certify_p1(g, Fraction(1, 2), 200, mode="sampled", trials=5000, seed=1)
print(
    f"sampled falsification: {sampled.trials} random disjoint pairs, "
    f"{len(sampled.violations)} violations"
)

# hand-check one random pair
import random

rng = random.Random(0)
verts = list(range(200))
rng.shuffle(verts)
s, t = verts[:100], verts[100:]
print(f"one concrete split: e(S, T) = {edge_count_between(g, s, t)} crossing edges")
