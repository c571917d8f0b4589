"""Edge-sampling estimators of bucket-average triadic coefficients.

A sampled edge ``e = {u, v}`` with common neighbors ``N_e`` spreads its
``|Δ_e|`` triangles over nodes: weight ``q |Δ_e|`` to each endpoint and
``1 - 2q`` to each common neighbor.  Dividing by ``|W*_w|`` and summing per
bucket gives the *raw* contribution of ``e``; multiplying by ``m / |V_j|``
gives an unbiased single-draw estimate of the bucket average.

The raw contribution is affine in ``q``::

    raw_j(e; q) = (1 - 2q) * nb_j(e) + q * ep_j(e)

where ``nb_j(e) = sum_{w in N_e ∩ V_j} 1/|W*_w|`` and
``ep_j(e) = |Δ_e| * sum_{x in e ∩ V_j} 1/|W*_x|``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .exact import WedgeDenominators
from .graph import EdgeNeighborhood, EdgeSampleBag, Graph
from .partition import NodePartition

Q_MIN, Q_MAX = 0.0, 0.5


def node_weight(v: int, tri: EdgeNeighborhood, q: float) -> float:
    """Share of ``|Δ_e|`` credited to ``v``: ``q|Δ_e|`` on endpoints, ``1-2q`` on common neighbors."""
    w = 0.0
    if v in tri.edge:
        w += q * tri.count
    if v in set(tri.common.tolist()):
        w += 1.0 - 2.0 * q
    return w


@dataclass(frozen=True)
class EdgeBucketEstimate:
    edge: int
    contributions: dict


def edge_estimate(g: Graph, part: NodePartition, denoms: WedgeDenominators,
                  tri: EdgeNeighborhood, q: float, edge: int = -1) -> EdgeBucketEstimate:
    """Unscaled per-bucket contribution of one edge (reference, pure Python)."""
    inv = denoms.inverse()
    contrib: dict[int, float] = {}
    for w in tri.common.tolist():
        if inv[w]:
            j = int(part.assignment[w])
            contrib[j] = contrib.get(j, 0.0) + (1.0 - 2.0 * q) * inv[w]
    if tri.count:
        for x in tri.edge:
            if inv[x]:
                j = int(part.assignment[x])
                contrib[j] = contrib.get(j, 0.0) + q * tri.count * inv[x]
    return EdgeBucketEstimate(edge, contrib)


@dataclass(frozen=True)
class EdgeParts:
    """Neighbor and endpoint parts of the raw contributions for a batch of edges (rows)."""

    nb: np.ndarray
    ep: np.ndarray

    def raw(self, q: float) -> np.ndarray:
        return (1.0 - 2.0 * q) * self.nb + q * self.ep

    @property
    def slope(self) -> np.ndarray:
        return self.ep - 2.0 * self.nb


def edge_parts(g: Graph, part: NodePartition, denoms: WedgeDenominators, idx,
               threads: int = 1) -> EdgeParts:
    idx = np.ascontiguousarray(idx, dtype=np.int64)
    kern = _kernels.batch_parts_parallel if threads > 1 else _kernels.batch_parts
    nb, ep = kern(g.offsets, g.neighbors, g.edges, idx, part.assignment,
                  denoms.inverse(), part.k)
    return EdgeParts(nb, ep)


def scale_factors(m: int, part: NodePartition) -> np.ndarray:
    """``m / |V_j|``: turns a raw contribution into a single-draw estimate."""
    return m / part.sizes.astype(np.float64)


def raw_edge_sums(g: Graph, part: NodePartition, denoms: WedgeDenominators, q: float):
    """Sum and sum of squares of the raw contributions over every edge of ``g``."""
    return _kernels.edge_moments(g.offsets, g.neighbors, g.edges, part.assignment,
                                 denoms.inverse(), part.k, float(q))


def exhaustive_mean(g: Graph, part: NodePartition, denoms: WedgeDenominators, q: float) -> np.ndarray:
    """Expectation of the scaled single-draw estimate, computed by sweeping all edges."""
    if g.m < 1:
        raise ValueError("graph has no edges")
    s1, _ = raw_edge_sums(g, part, denoms, q)
    return s1 / part.sizes


def exhaustive_variance(g: Graph, part: NodePartition, denoms: WedgeDenominators, q: float) -> np.ndarray:
    """Exact per-draw variance of the scaled single-draw estimate."""
    s1, s2 = raw_edge_sums(g, part, denoms, q)
    scale = scale_factors(g.m, part)
    mean = s1 / part.sizes
    return np.maximum(scale ** 2 * s2 / g.m - mean ** 2, 0.0)


def aggregate(raw_sums, part: NodePartition, m: int, s: int) -> np.ndarray:
    """``f_j = m / (s |V_j|) * sum_e raw_j(e)``."""
    if s < 1:
        raise ValueError("aggregate needs at least one draw")
    return np.asarray(raw_sums, dtype=np.float64) * m / (s * part.sizes)


# -- variance model and the choice of q --------------------------------------

@dataclass(frozen=True)
class VarianceModel:
    """Sample variance of the scaled estimates as a quadratic in ``q``.

    ``variance(q) = m^2 / ((c-1) |V_j|^2) * (A + B q + C q^2)``.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    c: int
    m: int
    sizes: np.ndarray

    @property
    def factor(self) -> np.ndarray:
        return self.m ** 2 / ((self.c - 1) * self.sizes.astype(np.float64) ** 2)

    def variance(self, q) -> np.ndarray:
        q = np.asarray(q, dtype=np.float64)[..., None]
        return self.factor * (self.A + self.B * q + self.C * q * q)

    def scaled(self):
        f = self.factor
        return f * self.A, f * self.B, f * self.C


def variance_model(g: Graph, part: NodePartition, denoms: WedgeDenominators,
                   bag: EdgeSampleBag | np.ndarray) -> VarianceModel:
    """Fit (A, B, C) from a bag of ``c >= 2`` sampled edges.

    With ``a = nb`` (the value at q=0) and ``b = ep - 2 nb`` (the slope in q),
    centered over the bag: ``A = sum a^2``, ``B = 2 sum a b``, ``C = sum b^2``.
    """
    idx = bag.edges if isinstance(bag, EdgeSampleBag) else np.asarray(bag)
    c = int(idx.size)
    if c < 2:
        raise ValueError("variance model needs at least two sampled edges")
    parts = edge_parts(g, part, denoms, idx)
    a = parts.nb - parts.nb.mean(axis=0)
    b = parts.slope - parts.slope.mean(axis=0)
    return VarianceModel(A=(a * a).sum(axis=0), B=2.0 * (a * b).sum(axis=0),
                         C=(b * b).sum(axis=0), c=c, m=g.m, sizes=part.sizes)


@dataclass(frozen=True)
class QChoice:
    value: float
    mode: str = "auto"

    def __post_init__(self):
        if not (Q_MIN <= self.value <= Q_MAX):
            raise ValueError(f"q={self.value} outside [0, 1/2]")


def _roots_in(a2, a1, a0, lo, hi):
    """Real roots of ``a2 x^2 + a1 x + a0`` inside ``[lo, hi]``."""
    if a2 == 0.0:
        if a1 == 0.0:
            return []
        with np.errstate(over="ignore", divide="ignore"):
            r = [-a0 / a1]
    else:
        disc = a1 * a1 - 4.0 * a2 * a0
        if disc < 0.0:
            return []
        sq = np.sqrt(disc)
        # numerically stable pair
        t = -0.5 * (a1 + np.copysign(sq, a1))
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            r = [t / a2]
            if t != 0.0:
                r.append(a0 / t)
    return [float(x) for x in r if np.isfinite(x) and lo <= x <= hi]


def minimax_quadratic(A, B, C, lo: float = Q_MIN, hi: float = Q_MAX) -> float:
    """Minimize ``max_j A_j + B_j x + C_j x^2`` over ``x in [lo, hi]``.

    The upper envelope of the parabolas is piecewise quadratic with
    breakpoints only where two parabolas cross, so its minimum lies at an
    interval end, at a vertex of one parabola, or at a pairwise crossing.
    All candidates are evaluated; ties go to the smallest ``x``.
    """
    A, B, C = (np.asarray(x, dtype=np.float64).ravel() for x in (A, B, C))
    cands = [lo, hi]
    for j in range(A.size):
        if C[j] > 0:
            with np.errstate(over="ignore"):
                x = -B[j] / (2.0 * C[j])
            if lo < x < hi:
                cands.append(x)
    for i, j in itertools.combinations(range(A.size), 2):
        cands.extend(_roots_in(C[i] - C[j], B[i] - B[j], A[i] - A[j], lo, hi))
    xs = np.unique(np.asarray(cands))
    env = (A[None, :] + B[None, :] * xs[:, None] + C[None, :] * xs[:, None] ** 2).max(axis=1)
    return float(xs[int(np.argmin(env))])


def optimize_q(model: VarianceModel) -> QChoice:
    """q in [0, 1/2] minimizing the largest modelled bucket variance."""
    return QChoice(minimax_quadratic(*model.scaled()), "auto")
