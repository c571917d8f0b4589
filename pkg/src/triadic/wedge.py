"""Wedge-sampling baselines: uniform centered wedges and uniform headed 2-paths.

Each draw is a deterministic function of a few integers (``*_from_draws``),
so the exact sampling distribution can be enumerated on small graphs.  The
batch samplers apply the same mapping to arrays of random integers.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .exact import CoefficientKind, headed_wedges
from .graph import Graph, StructuralError
from .partition import NodePartition
from .rng import make_rng
from .triad import FIXED_BUDGET, EstimateReport


@dataclass(frozen=True)
class WedgeDraw:
    head: int
    pair: tuple
    closed: bool


def hoeffding_size(eps: float, eta: float, k: int) -> int:
    """``ceil(ln(2k/eta) / (2 eps^2))`` draws per bucket."""
    if not (0 < eps < 1 and 0 < eta < 1) or k < 1:
        raise ValueError("need 0 < eps, eta < 1 and k >= 1")
    return int(math.ceil(math.log(2.0 * k / eta) / (2.0 * eps * eps)))


# -- single draws ------------------------------------------------------------

def wedge_from_draws(g: Graph, v: int, r1: int, r2: int) -> WedgeDraw:
    """Wedge centered at ``v`` from ``r1 in [0, d)``, ``r2 in [0, d-1)``."""
    nb = g.neighbors_of(v)
    d = nb.size
    if not (0 <= r1 < d and 0 <= r2 < d - 1):
        raise ValueError("draw out of range")
    if r2 >= r1:
        r2 += 1
    u1, u2 = int(nb[r1]), int(nb[r2])
    return WedgeDraw(v, (u1, u2), g.has_edge(u1, u2))


def two_path_from_draws(g: Graph, v: int, r: int, r2: int) -> WedgeDraw:
    """Path ``v - u1 - u2`` from ``r in [0, |W^h_v|)`` and ``r2 in [0, d_u1 - 1)``.

    ``r`` picks ``u1`` with probability proportional to ``d_u1 - 1`` by
    locating it in the prefix sums over ``N(v)``; ``r2`` then picks ``u2``
    among ``N(u1)`` minus ``v``.
    """
    nb = g.neighbors_of(v)
    cum = np.cumsum(g.degrees[nb] - 1)
    if nb.size == 0 or not (0 <= r < cum[-1]):
        raise ValueError("draw out of range")
    u1 = int(nb[np.searchsorted(cum, r, side="right")])
    nb1 = g.neighbors_of(u1)
    if not (0 <= r2 < nb1.size - 1):
        raise ValueError("draw out of range")
    skip = int(np.searchsorted(nb1, v))
    if r2 >= skip:
        r2 += 1
    u2 = int(nb1[r2])
    return WedgeDraw(v, (u1, u2), g.has_edge(v, u2))


def sample_wedge(g: Graph, v: int, rng) -> WedgeDraw:
    d = int(g.degrees[v])
    if d < 2:
        raise StructuralError(f"node {v} has no centered wedge")
    rng = make_rng(rng)
    return wedge_from_draws(g, v, int(rng.integers(d)), int(rng.integers(d - 1)))


def sample_2path(g: Graph, v: int, rng) -> WedgeDraw:
    total = int((g.degrees[g.neighbors_of(v)] - 1).sum())
    if total < 1:
        raise StructuralError(f"node {v} has no headed wedge")
    rng = make_rng(rng)
    r = int(rng.integers(total))
    nb = g.neighbors_of(v)
    u1 = int(nb[np.searchsorted(np.cumsum(g.degrees[nb] - 1), r, side="right")])
    return two_path_from_draws(g, v, r, int(rng.integers(g.degrees[u1] - 1)))


def first_hop_distribution(g: Graph, v: int) -> np.ndarray:
    """Probability of each neighbor (in sorted order) as the first hop of a headed draw."""
    w = (g.degrees[g.neighbors_of(v)] - 1).astype(np.float64)
    return w / w.sum()


# -- batch sampling ----------------------------------------------------------

class _Index:
    """Directed-edge keys for vectorized adjacency tests on one graph."""

    def __init__(self, g: Graph):
        self.g = g
        src = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees)
        self.keys = src * g.n + g.neighbors  # sorted: rows ascending, slices sorted
        self.hop_cum = np.cumsum(g.degrees[g.neighbors] - 1)
        self.headed = headed_wedges(g)

    def position(self, a, b):
        return np.searchsorted(self.keys, a * self.g.n + b)

    def adjacent(self, a, b) -> np.ndarray:
        key = a * self.g.n + b
        if self.keys.size == 0:
            return np.zeros(np.shape(key), dtype=bool)
        pos = np.minimum(np.searchsorted(self.keys, key), self.keys.size - 1)
        return self.keys[pos] == key


def closed_wedges(g: Graph, heads, rng, kind, index: _Index | None = None) -> np.ndarray:
    """Closed indicator of one kind-matching draw per head; degenerate heads give False."""
    kind = CoefficientKind.parse(kind)
    ix = index or _Index(g)
    heads = np.asarray(heads, dtype=np.int64)
    out = np.zeros(heads.size, dtype=bool)
    off, nbrs, deg = g.offsets, g.neighbors, g.degrees
    if kind is CoefficientKind.CLUSTERING:
        d = deg[heads]
        ok = d >= 2
        v, d = heads[ok], d[ok]
        r1 = rng.integers(0, d)
        r2 = rng.integers(0, d - 1)
        r2 += r2 >= r1
        u1, u2 = nbrs[off[v] + r1], nbrs[off[v] + r2]
        out[ok] = ix.adjacent(u1, u2)
        return out
    total = ix.headed[heads]
    ok = total >= 1
    v, total = heads[ok], total[ok]
    r = rng.integers(0, total)
    base = np.where(off[v] > 0, ix.hop_cum[np.maximum(off[v] - 1, 0)], 0)
    pos = np.searchsorted(ix.hop_cum, base + r, side="right")
    u1 = nbrs[pos]
    d1 = deg[u1]
    r2 = rng.integers(0, d1 - 1)
    skip = ix.position(u1, v) - off[u1]
    r2 += r2 >= skip
    u2 = nbrs[off[u1] + r2]
    out[ok] = ix.adjacent(v, u2)
    return out


def run_wedge_sampler(g: Graph, part: NodePartition, kind, eps=0.1, eta: float = 0.01,
                      rng=None) -> EstimateReport:
    """Fixed-size baseline: closed fraction of ``s_j`` uniform (node, wedge) draws per bucket.

    ``s_j = ceil(ln(2k/eta) / (2 eps_j^2))``; the node is uniform in ``V_j``
    and each draw picks its node afresh.
    """
    kind = CoefficientKind.parse(kind)
    if part.assignment.size != g.n:
        raise StructuralError("partition does not cover the graph's nodes")
    k = part.k
    eps = np.broadcast_to(np.asarray(eps, dtype=np.float64), (k,)).copy() \
        if np.ndim(eps) == 0 else np.asarray(eps, dtype=np.float64)
    if eps.shape != (k,):
        raise StructuralError(f"got {eps.size} eps values for {k} buckets")
    gen = make_rng(rng)
    t0 = time.perf_counter()
    ix = _Index(g)
    order = np.argsort(part.assignment, kind="stable")
    starts = np.r_[0, np.cumsum(part.sizes)]
    f = np.zeros(k)
    total = 0
    for j in range(k):
        s_j = hoeffding_size(float(eps[j]), eta, k)
        members = order[starts[j]:starts[j + 1]]
        heads = members[gen.integers(0, members.size, size=s_j)]
        f[j] = closed_wedges(g, heads, gen, kind, ix).mean()
        total += s_j
    wall = time.perf_counter() - t0
    return EstimateReport(
        estimates=f, eps_hat=eps.copy(), sizes=part.sizes.copy(), samples=total,
        iterations=1, termination=FIXED_BUDGET, q=None, wall_time=wall, algorithm="ws",
        kind=kind.value, eps_target=eps, phases={"loop": wall})
