"""Seeded graphs shared by the test modules."""

from functools import lru_cache

import numpy as np

from triadic.graph import (Graph, complete_graph, cycle_graph, disjoint_union, erdos_renyi,
                           gnm, path_graph, star_graph)


def chung_lu(n: int, m: int, gamma: float, seed: int) -> Graph:
    """Heavy-tailed graph: ``m`` endpoint pairs drawn with weight ``(i+1)^(-1/(gamma-1))``."""
    rng = np.random.default_rng(seed)
    w = (np.arange(n) + 1.0) ** (-1.0 / (gamma - 1.0))
    w /= w.sum()
    pairs = rng.choice(n, size=(m, 2), p=w)
    return Graph.from_edges(pairs, n=n)


def with_isolated(g: Graph, extra: int) -> Graph:
    return Graph.from_edges(g.edges, n=g.n + extra)


@lru_cache(maxsize=None)
def corpus() -> dict:
    """Name -> graph.  Everything here has at most 1e5 edges."""
    return {
        "K3": complete_graph(3),
        "K4": complete_graph(4),
        "K6": complete_graph(6),
        "C4": cycle_graph(4),
        "P5": path_graph(5),
        "star6": star_graph(6),
        "K3+C4": disjoint_union(complete_graph(3), cycle_graph(4)),
        "K4+P3+iso": with_isolated(disjoint_union(complete_graph(4), path_graph(3)), 2),
        "er30": erdos_renyi(30, 0.3, np.random.default_rng(11)),
        "er50": erdos_renyi(50, 0.15, np.random.default_rng(12)),
        "er60": erdos_renyi(60, 0.2, np.random.default_rng(13)),
        "er200": erdos_renyi(200, 0.05, np.random.default_rng(14)),
        "cl400": chung_lu(400, 2500, 2.3, 15),
        "gnm2k": gnm(2000, 20000, np.random.default_rng(16)),
        "cl5k": chung_lu(5000, 40000, 2.1, 17),
    }


def small_corpus(max_n: int = 50) -> dict:
    return {k: g for k, g in corpus().items() if g.n <= max_n}
