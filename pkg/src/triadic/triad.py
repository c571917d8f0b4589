"""Adaptive (TRIAD) and fixed-budget (TRIAD-F) estimation of bucket averages."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels
from .bounds import BoundsBundle, eb_width, prpl_width, upper_bounds
from .estimator import edge_parts, optimize_q, scale_factors, variance_model
from .exact import CoefficientKind, WedgeDenominators, wedge_denominators
from .graph import Graph, StructuralError, sample_edges
from .partition import NodePartition
from .rng import make_rng

BOUNDS_MET = "bounds_met"
BUDGET_CAP = "budget_cap"
FIXED_BUDGET = "fixed_budget"

MIN_KEPT_DEGREE = 10


@dataclass
class RunConfig:
    """Parameters of a TRIAD / TRIAD-F run.

    ``eps`` is a scalar or one target per bucket.  ``filter_c=None`` picks the
    linear-work constant so that every surviving node had degree >= 10;
    ``filter_c=0`` disables filtering.  ``q`` is ``"auto"`` or a number in
    ``[0, 1/2]``.
    """

    eps: float | list = 0.075
    eta: float = 0.01
    theta: float = 1.4
    c: int = 500
    filter_c: float | None = None
    q: str | float = "auto"
    seed: int | None = None
    width_engine: str = "prpl"
    threads: int = 1

    def validate(self, k: int) -> np.ndarray:
        eps = np.broadcast_to(np.asarray(self.eps, dtype=np.float64), (k,)).copy() \
            if np.ndim(self.eps) == 0 else np.asarray(self.eps, dtype=np.float64)
        if eps.shape != (k,):
            raise StructuralError(f"got {eps.size} eps values for {k} buckets")
        if np.any(eps <= 0) or np.any(eps >= 1):
            raise ValueError("every eps_j must lie in (0, 1)")
        if not (0 < self.eta < 1):
            raise ValueError("eta must lie in (0, 1)")
        if self.theta <= 1:
            raise ValueError("theta must exceed 1")
        if self.c < 2:
            raise ValueError("c must be at least 2")
        if self.width_engine not in ("eb", "prpl"):
            raise ValueError(f"unknown width engine {self.width_engine!r}")
        if self.q != "auto" and not (0.0 <= float(self.q) <= 0.5):
            raise ValueError("q must be 'auto' or lie in [0, 1/2]")
        if self.filter_c is not None and self.filter_c < 0:
            raise ValueError("filter_c must be >= 0")
        return eps


@dataclass
class EstimateReport:
    estimates: np.ndarray
    eps_hat: np.ndarray
    sizes: np.ndarray
    samples: int
    iterations: int
    termination: str
    q: float | None
    wall_time: float
    algorithm: str = "triad"
    kind: str = "clustering"
    eps_target: np.ndarray | None = None
    phases: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    filter: dict = field(default_factory=dict)
    audit: list = field(default_factory=list)

    @property
    def k(self) -> int:
        return int(self.estimates.size)

    def to_dict(self) -> dict:
        d = asdict(self)
        for key, val in d.items():
            if isinstance(val, np.ndarray):
                d[key] = val.tolist()
        return d


# -- small-degree filtering --------------------------------------------------

@dataclass(frozen=True)
class FilterResult:
    graph: Graph
    leftover: np.ndarray
    beta: int
    removed: np.ndarray
    C: float

    @property
    def removed_count(self) -> int:
        return int(self.removed.sum())


def degree_histogram(g: Graph) -> np.ndarray:
    return np.bincount(g.degrees, minlength=2)


def find_threshold(g: Graph, C: float) -> int:
    """Largest ``i`` with ``sum_{j<=i} j^2 D_j <= C n`` (at least 1)."""
    D = degree_histogram(g)
    j = np.arange(D.size, dtype=np.float64)
    cost = np.cumsum(j * j * D)[1:]  # cost[i-1] covers degrees 1..i
    ok = np.flatnonzero(cost <= C * g.n)
    return max(int(ok[-1]) + 1, 1) if ok.size else 1


def default_filter_c(g: Graph, min_degree: int = MIN_KEPT_DEGREE) -> float:
    """Smallest C whose threshold covers every degree below ``min_degree``."""
    if g.n == 0:
        return 0.0
    D = degree_histogram(g)[:min_degree]
    j = np.arange(D.size, dtype=np.float64)
    return float((j * j * D).sum()) / g.n


def filter_small_degree(g: Graph, C: float) -> FilterResult:
    """Drop degree-1 nodes, then peel nodes of degree ``2..beta`` exactly.

    Nodes are visited by non-decreasing original degree (ties by id).  Each
    visit counts the node's triangles in the residual graph, credits all
    three members in ``leftover``, then deletes the node.  The surviving
    edges form ``G'`` on the same node ids.
    """
    beta = find_threshold(g, C)
    alive = g.degrees != 1
    d = g.degrees
    cand = np.flatnonzero((d >= 2) & (d <= beta))
    order = cand[np.lexsort((cand, d[cand]))]
    left = _kernels.peel_small(g.offsets, g.neighbors, alive, order)
    keep = alive[g.edges[:, 0]] & alive[g.edges[:, 1]]
    gp = Graph.from_edges(g.edges[keep], n=g.n)
    removed = ~alive & (g.degrees > 0)
    return FilterResult(gp, left, beta, removed, float(C))


def leftover_correction(filt: FilterResult, part: NodePartition, denoms: WedgeDenominators) -> np.ndarray:
    """``(1/|V_j|) sum_{v in V_j} |Δ^L_v| / |W*_v|`` with original-graph denominators."""
    vals = filt.leftover * denoms.inverse()
    return np.bincount(part.assignment, weights=vals, minlength=part.k) / part.sizes


def recombine(f_prime, filt: FilterResult, part: NodePartition, denoms: WedgeDenominators) -> np.ndarray:
    return np.asarray(f_prime, dtype=np.float64) + leftover_correction(filt, part, denoms)


# -- shared setup ------------------------------------------------------------

@dataclass
class _Prepared:
    work: Graph
    denoms: WedgeDenominators
    correction: np.ndarray
    q: float
    bounds: BoundsBundle | None
    filter_info: dict
    phases: dict


def _prepare(g: Graph, part: NodePartition, kind: CoefficientKind, cfg: RunConfig,
             rng, eps_min: float) -> _Prepared:
    if part.assignment.size != g.n:
        raise StructuralError("partition does not cover the graph's nodes")
    if np.any(part.sizes == 0):
        raise StructuralError("partition has an empty bucket")
    phases = {}
    denoms = wedge_denominators(g, kind)

    t = time.perf_counter()
    if cfg.filter_c == 0:
        work, correction, finfo = g, np.zeros(part.k), {"enabled": False}
    else:
        C = default_filter_c(g) if cfg.filter_c is None else float(cfg.filter_c)
        filt = filter_small_degree(g, C)
        work = filt.graph
        correction = leftover_correction(filt, part, denoms)
        finfo = {"enabled": True, "C": C, "beta": filt.beta,
                 "removed": filt.removed_count, "m_filtered": work.m}
    phases["filter"] = time.perf_counter() - t

    t = time.perf_counter()
    if work.m == 0:
        q = 0.0 if cfg.q == "auto" else float(cfg.q)
    elif cfg.q == "auto":
        bag = sample_edges(work, cfg.c, rng)
        q = optimize_q(variance_model(work, part, denoms, bag)).value
    else:
        q = float(cfg.q)
    phases["fixq"] = time.perf_counter() - t

    t = time.perf_counter()
    bounds = None
    if work.m:
        eta0 = cfg.eta / 2.0
        bounds = upper_bounds(work, part, denoms, q).with_sizes(eps_min, cfg.eta, eta0)
    phases["upperbounds"] = time.perf_counter() - t
    return _Prepared(work, denoms, correction, q, bounds, finfo, phases)


def _bounds_dict(b: BoundsBundle | None) -> dict:
    if b is None:
        return {}
    return {"R_j": b.R_j.tolist(), "R": b.R, "chi_hat": b.chi_hat, "zeta": b.zeta,
            "s_max": b.s_max, "s_0": b.s_0}


def _widths(engine: str, X: np.ndarray, R_j: np.ndarray, eta_i: float, k: int):
    """Certified half-widths and the point estimate they are centered on."""
    s = X.shape[0]
    if engine == "eb":
        mean = X.mean(axis=0)
        if s < 2:
            return mean, np.full(k, np.inf)
        return mean, eb_width(X.var(axis=0), s, R_j, eta_i, k)
    return prpl_width(X, R_j, eta_i / k)


# -- TRIAD -------------------------------------------------------------------

def run_triad(g: Graph, part: NodePartition, kind, cfg: RunConfig | None = None,
              rng=None) -> EstimateReport:
    """Estimate every bucket average with an adaptive stopping rule.

    Batches grow geometrically (first ``s_0``, then ``ceil(theta * previous)``)
    and the confidence level is halved at each checkpoint.  The loop stops
    as soon as every certified half-width is below its target, or when the
    worst-case size ``s_max`` is reached (then the plain mean is returned
    and the half-width reported is the target itself).
    """
    cfg = cfg or RunConfig()
    kind = CoefficientKind.parse(kind)
    eps = cfg.validate(part.k)
    gen = make_rng(cfg.seed if rng is None else rng)
    t_start = time.perf_counter()
    prep = _prepare(g, part, kind, cfg, gen, float(eps.min()))
    k = part.k

    t = time.perf_counter()
    audit = []
    work, b = prep.work, prep.bounds
    if b is None or b.R == 0.0:
        # nothing left to sample: the residual estimate is exactly zero
        f_prime, eps_hat, s, it, term = np.zeros(k), np.zeros(k), 0, 0, BOUNDS_MET
    else:
        scale = scale_factors(work.m, part)
        chunks = []
        s, it, batch = 0, 0, b.s_0
        eta_i = cfg.eta / 2.0
        while True:
            take = max(min(batch, b.s_max - s), 1)
            idx = gen.integers(0, work.m, size=take, dtype=np.int64)
            chunks.append(edge_parts(work, part, prep.denoms, idx, cfg.threads).raw(prep.q) * scale)
            s += take
            X = np.concatenate(chunks) if len(chunks) > 1 else chunks[0]
            chunks = [X]
            center, width = _widths(cfg.width_engine, X, b.R_j, eta_i, k)
            met = bool(np.all(width <= eps))
            audit.append({"iteration": it, "s": s, "eta_i": eta_i,
                          "eps_hat": np.asarray(width).tolist(), "met": met})
            if met:
                f_prime, eps_hat, term = center, width, BOUNDS_MET
                break
            if s >= b.s_max:
                f_prime, eps_hat, term = X.mean(axis=0), eps.copy(), BUDGET_CAP
                break
            it += 1
            eta_i /= 2.0
            batch = int(math.ceil(cfg.theta * batch))
        it += 1
    prep.phases["loop"] = time.perf_counter() - t

    return EstimateReport(
        estimates=f_prime + prep.correction, eps_hat=np.asarray(eps_hat, dtype=np.float64),
        sizes=part.sizes.copy(), samples=int(s), iterations=int(it), termination=term,
        q=float(prep.q), wall_time=time.perf_counter() - t_start, algorithm="triad",
        kind=kind.value, eps_target=eps, phases=prep.phases, bounds=_bounds_dict(b),
        filter=prep.filter_info, audit=audit)


def run_triad_f(g: Graph, part: NodePartition, kind, budget: int | None = None,
                cfg: RunConfig | None = None, rng=None, full_sweep: bool = False) -> EstimateReport:
    """Process exactly ``budget`` uniform edge draws and return the plain mean.

    ``full_sweep=True`` replaces the random draws with one pass over every
    edge of the (filtered) graph, which reproduces the exhaustive mean.
    The half-widths are informational only.
    """
    cfg = cfg or RunConfig()
    kind = CoefficientKind.parse(kind)
    eps = cfg.validate(part.k)
    if not full_sweep and (budget is None or budget < 1):
        raise ValueError("budget must be >= 1")
    gen = make_rng(cfg.seed if rng is None else rng)
    t_start = time.perf_counter()
    prep = _prepare(g, part, kind, cfg, gen, float(eps.min()))
    k = part.k

    t = time.perf_counter()
    work, b = prep.work, prep.bounds
    if work.m == 0:
        f_prime, eps_hat, s = np.zeros(k), np.zeros(k), 0 if full_sweep else budget
    else:
        if full_sweep:
            idx = np.arange(work.m, dtype=np.int64)
        else:
            idx = gen.integers(0, work.m, size=budget, dtype=np.int64)
        X = edge_parts(work, part, prep.denoms, idx, cfg.threads).raw(prep.q) * scale_factors(work.m, part)
        s = int(idx.size)
        f_prime = X.mean(axis=0)
        _, eps_hat = _widths(cfg.width_engine, X, b.R_j, cfg.eta / 2.0, k)
    prep.phases["loop"] = time.perf_counter() - t

    return EstimateReport(
        estimates=f_prime + prep.correction, eps_hat=np.asarray(eps_hat, dtype=np.float64),
        sizes=part.sizes.copy(), samples=int(s), iterations=1, termination=FIXED_BUDGET,
        q=float(prep.q), wall_time=time.perf_counter() - t_start, algorithm="triad-f",
        kind=kind.value, eps_target=eps, phases=prep.phases, bounds=_bounds_dict(b),
        filter=prep.filter_info)
