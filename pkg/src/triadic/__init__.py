"""Sampling estimators of bucket-average local clustering and closure coefficients."""

from .bounds import BoundsBundle, eb_width, prpl_width, upper_bounds
from .estimator import edge_parts, exhaustive_mean, exhaustive_variance, optimize_q, variance_model
from .exact import (CoefficientKind, WedgeDenominators, exact_bucket_averages, exact_coefficients,
                    local_triangle_counts, wedge_denominators)
from .graph import Graph, GraphFormatError, StructuralError, load_edge_list, load_graph
from .partition import NodePartition, core_numbers, make_partition
from .rng import make_rng
from .triad import EstimateReport, RunConfig, filter_small_degree, run_triad, run_triad_f
from .wedge import run_wedge_sampler

__all__ = [
    "BoundsBundle", "CoefficientKind", "EstimateReport", "Graph", "GraphFormatError",
    "NodePartition", "RunConfig", "StructuralError", "WedgeDenominators", "core_numbers",
    "eb_width", "edge_parts", "exact_bucket_averages", "exact_coefficients", "exhaustive_mean",
    "exhaustive_variance", "filter_small_degree", "load_edge_list", "load_graph",
    "local_triangle_counts", "make_partition", "make_rng", "optimize_q", "prpl_width",
    "run_triad", "run_triad_f", "run_wedge_sampler", "upper_bounds", "variance_model",
    "wedge_denominators",
]
