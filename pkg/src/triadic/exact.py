"""Exact local triangle counts, wedge denominators and bucket averages."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph, StructuralError


class CoefficientKind(enum.Enum):
    CLUSTERING = "clustering"
    CLOSURE = "closure"

    @classmethod
    def parse(cls, value) -> "CoefficientKind":
        if isinstance(value, cls):
            return value
        aliases = {"clustering": cls.CLUSTERING, "alpha": cls.CLUSTERING, "c": cls.CLUSTERING,
                   "closure": cls.CLOSURE, "phi": cls.CLOSURE, "h": cls.CLOSURE}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown coefficient kind {value!r}") from None


@dataclass(frozen=True)
class WedgeDenominators:
    """Per-node ``|W*_v|``: centered wedges for clustering, half the headed wedges for closure."""

    kind: CoefficientKind
    values: np.ndarray

    def inverse(self) -> np.ndarray:
        """``1/|W*_v|`` with zero where the denominator vanishes."""
        out = np.zeros_like(self.values)
        nz = self.values > 0
        out[nz] = 1.0 / self.values[nz]
        return out


@dataclass(frozen=True)
class LocalCounts:
    triangles: np.ndarray

    @property
    def total(self) -> int:
        return int(self.triangles.sum()) // 3


def headed_wedges(g: Graph) -> np.ndarray:
    """``|W^h_v| = sum over neighbors u of (d_u - 1)``, as integers."""
    src = np.repeat(np.arange(g.n), g.degrees)
    return np.bincount(src, weights=g.degrees[g.neighbors] - 1, minlength=g.n).astype(np.int64)


def wedge_denominators(g: Graph, kind) -> WedgeDenominators:
    kind = CoefficientKind.parse(kind)
    d = g.degrees.astype(np.float64)
    if kind is CoefficientKind.CLUSTERING:
        vals = d * (d - 1) / 2.0
    else:
        vals = headed_wedges(g) / 2.0
    return WedgeDenominators(kind, vals)


def local_triangle_counts(g: Graph) -> LocalCounts:
    return LocalCounts(_kernels.local_triangles(g.offsets, g.neighbors, g.edges, g.n))


def exact_coefficients(g: Graph, kind, counts: LocalCounts | None = None) -> np.ndarray:
    """Per-node coefficient; nodes with an empty wedge set get 0."""
    denoms = wedge_denominators(g, kind)
    if counts is None:
        counts = local_triangle_counts(g)
    return counts.triangles * denoms.inverse()


def bucket_means(values: np.ndarray, part) -> np.ndarray:
    if np.any(part.sizes == 0):
        raise StructuralError("partition has an empty bucket")
    return np.bincount(part.assignment, weights=values, minlength=part.k) / part.sizes


def exact_bucket_averages(g: Graph, part, kind) -> np.ndarray:
    if part.assignment.size != g.n:
        raise StructuralError("partition does not cover the graph's nodes")
    return bucket_means(exact_coefficients(g, kind), part)
