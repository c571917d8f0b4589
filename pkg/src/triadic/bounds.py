"""Range bounds, pseudo-dimension bound, sample sizes and confidence widths."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .exact import WedgeDenominators
from .graph import Graph
from .partition import NodePartition


@dataclass(frozen=True)
class BoundsBundle:
    """Per-bucket range bounds ``R_j`` on the scaled single-draw estimate and derived sizes."""

    R_j: np.ndarray
    chi_hat: int
    zeta: int
    s_max: int | None = None
    s_0: int | None = None

    @property
    def R(self) -> float:
        return float(self.R_j.max()) if self.R_j.size else 0.0

    def with_sizes(self, eps: float, eta: float, eta0: float) -> "BoundsBundle":
        k = self.R_j.size
        return replace(self, s_max=sample_cap(self.R, self.zeta, eps, eta),
                       s_0=initial_size(self.R, eps, eta0, k))


def upper_bounds(g: Graph, part: NodePartition, denoms: WedgeDenominators, q: float) -> BoundsBundle:
    """Deterministic ``R_j`` and the pseudo-dimension bound ``zeta``.

    For each edge the bound is built from its lower-degree endpoint ``z``
    (ties to the lower id): the neighbor weights of all of ``N(z)`` plus
    ``q d_z / |W*_x|`` for each endpoint ``x``.  ``zeta = floor(log2 chi) + 1``
    where ``chi`` is the largest number of buckets met around such a ``z``;
    at ``q = 0`` only ``N(z)`` counts, at ``q = 1/2`` zeta is capped at 2.
    """
    inv = denoms.inverse()
    if g.m == 0:
        return BoundsBundle(np.zeros(part.k), 1, 1)
    best, zs = _kernels.range_bounds(g.offsets, g.neighbors, g.edges, g.degrees,
                                     part.assignment, inv, part.k, float(q))
    R_j = best * g.m / part.sizes
    chi = _kernels.node_bucket_spread(g.offsets, g.neighbors, part.assignment, part.k,
                                      q != 0.0)
    chi_hat = max(int(chi[zs].max()), 1)
    zeta = pseudo_dimension_bound(chi_hat)
    if q == 0.5:
        zeta = min(zeta, 2)
    return BoundsBundle(R_j, chi_hat, zeta)


def pseudo_dimension_bound(chi_hat: int) -> int:
    if chi_hat < 1:
        raise ValueError("chi_hat must be >= 1")
    return int(chi_hat).bit_length()  # == floor(log2 chi) + 1


def sample_cap(R: float, zeta: int, eps: float, eta: float) -> int:
    """``ceil(R^2/eps^2 * (zeta + ln(1/eta)))``."""
    _check_unit("eps", eps)
    _check_unit("eta", eta)
    return max(int(math.ceil(R * R / (eps * eps) * (zeta + math.log(1.0 / eta)))), 1)


def initial_size(R: float, eps: float, eta0: float, k: int) -> int:
    """``ceil(3 R ln(4k/eta0) / eps + 1)``: smallest size at which a zero-variance width can reach eps."""
    _check_unit("eps", eps)
    _check_unit("eta0", eta0)
    return int(math.ceil(R * 3.0 * math.log(4.0 * k / eta0) / eps + 1.0))


def _check_unit(name, x):
    if not (0.0 < x < 1.0):
        raise ValueError(f"{name} must lie in (0, 1), got {x}")


# -- empirical Bernstein -----------------------------------------------------

def eb_width(var_hat, s: int, R, eta_i: float, k: int):
    """Empirical Bernstein half-width with the biased (1/s) sample variance.

    ``sqrt(2 v ln(4k/eta_i) / s) + 7 R ln(4k/eta_i) / (3 (s-1))``; vectorizes
    over ``var_hat`` and ``R``.
    """
    if s < 2:
        raise ValueError("empirical Bernstein width needs s >= 2")
    var_hat = np.asarray(var_hat, dtype=np.float64)
    if np.any(var_hat < 0):
        raise ValueError("negative variance")
    L = math.log(4.0 * k / eta_i)
    out = np.sqrt(2.0 * var_hat * L / s) + 7.0 * np.asarray(R, dtype=np.float64) * L / (3.0 * (s - 1))
    return float(out) if out.ndim == 0 else out


# -- predictable plug-in empirical Bernstein ---------------------------------

@dataclass(frozen=True)
class StreamMoments:
    """Prefix quantities of one bucket's stream ``X_1..X_s``.

    ``mu_prev[i]`` and ``sigma_prev[i]`` are the running mean and the
    predictable variance estimate *before* ``X_{i+1}``, so they start at 0
    and ``R^2/4``.
    """

    x: np.ndarray
    mu_prev: np.ndarray
    sigma_prev: np.ndarray
    lam: np.ndarray


def omega(lam, R):
    """``(-ln(1 - R lam) - R lam) / 4``."""
    rl = np.asarray(lam) * R
    return (-np.log1p(-rl) - rl) / 4.0


def stream_moments(x, R, eta_eff: float) -> StreamMoments:
    """Running means, predictable variances and the betting weights ``lam_{i,s}``.

    ``x`` is ``(s,)`` or ``(s, k)``; ``R`` broadcasts against the last axis
    and must be positive.
    """
    x = np.asarray(x, dtype=np.float64)
    s = x.shape[0]
    R = np.asarray(R, dtype=np.float64)
    idx = np.arange(1, s + 1, dtype=np.float64).reshape((s,) + (1,) * (x.ndim - 1))
    csum = np.cumsum(x, axis=0)
    mu = csum / idx
    mu_prev = np.concatenate([np.zeros_like(x[:1]), mu[:-1]], axis=0)
    dev2 = (x - mu_prev) ** 2
    prior = R * R / 4.0
    sig = (prior + np.cumsum(dev2, axis=0)) / idx
    sigma_prev = np.concatenate([np.broadcast_to(prior, x[:1].shape), sig[:-1]], axis=0)
    L = math.log(2.0 / eta_eff)
    with np.errstate(divide="ignore"):
        lam = np.minimum(np.sqrt(2.0 * L / (s * sigma_prev)), 1.0 / (2.0 * R))
    return StreamMoments(x, mu_prev, sigma_prev, lam)


def prpl_width(x, R, eta_eff: float):
    """Predictable plug-in empirical Bernstein interval for values in ``[0, R]``.

    Returns ``(weighted_mean, half_width)``.  Columns with ``R == 0`` are
    constant zero streams and get ``(0, 0)``.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] < 1:
        raise ValueError("empty stream")
    R = np.broadcast_to(np.asarray(R, dtype=np.float64), x.shape[1:]).copy()
    zero = R <= 0
    Rs = np.where(zero, 1.0, R)
    st = stream_moments(x, Rs, eta_eff)
    lam_sum = st.lam.sum(axis=0)
    mean = (st.lam * x).sum(axis=0) / lam_sum
    L = math.log(2.0 / eta_eff)
    pen = ((2.0 / Rs) ** 2 * omega(st.lam, Rs) * (x - st.mu_prev) ** 2).sum(axis=0)
    width = (L + pen) / lam_sum
    mean = np.where(zero, 0.0, mean)
    width = np.where(zero, 0.0, width)
    if mean.ndim == 0:
        return float(mean), float(width)
    return mean, width
