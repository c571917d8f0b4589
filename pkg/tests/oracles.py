"""Brute-force reference computations, written independently of the package internals.

They work on dense boolean adjacency matrices and plain Python loops, so
they are only meant for graphs with a few hundred nodes.
"""

from fractions import Fraction

import numpy as np


def dense_from_text(text: str):
    """Edge-list text -> (n, m, adjacency) using a sorted relabelling of the ids seen."""
    pairs = []
    for line in text.splitlines():
        s = line.strip()
        if not s or s[0] in "#%":
            continue
        a, b = s.split()[:2]
        pairs.append((int(a), int(b)))
    ids = sorted({x for p in pairs for x in p})
    pos = {x: i for i, x in enumerate(ids)}
    A = np.zeros((len(ids), len(ids)), dtype=bool)
    for a, b in pairs:
        if a != b:
            A[pos[a], pos[b]] = A[pos[b], pos[a]] = True
    return len(ids), int(A.sum()) // 2, A


def dense(g) -> np.ndarray:
    A = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges.tolist():
        A[u, v] = A[v, u] = True
    return A


def triangles_by_triples(A: np.ndarray) -> np.ndarray:
    """Per-node triangle counts by enumerating every triple ``i < j < k``."""
    n = A.shape[0]
    t = np.zeros(n, dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            if not A[i, j]:
                continue
            for k in range(j + 1, n):
                if A[i, k] and A[j, k]:
                    t[i] += 1
                    t[j] += 1
                    t[k] += 1
    return t


def edge_triangles_dense(A: np.ndarray, u: int, v: int) -> list:
    return [w for w in range(A.shape[0]) if A[u, w] and A[v, w]]


def wedge_counts(A: np.ndarray):
    """(centered wedges d(d-1)/2, headed wedges) per node, by counting paths."""
    n = A.shape[0]
    deg = A.sum(axis=1).astype(np.int64)
    centered = np.array([d * (d - 1) // 2 for d in deg], dtype=np.int64)
    headed = np.zeros(n, dtype=np.int64)
    for v in range(n):
        for u in range(n):
            if A[v, u]:
                headed[v] += sum(1 for w in range(n) if A[u, w] and w != v)
    return centered, headed


def cores_by_deletion(A: np.ndarray) -> np.ndarray:
    """Core number = largest k whose k-core (repeated deletion of degree < k) contains the node."""
    n = A.shape[0]
    core = np.zeros(n, dtype=np.int64)
    k = 1
    while True:
        alive = np.ones(n, dtype=bool)
        changed = True
        while changed:
            deg = (A & alive[None, :] & alive[:, None]).sum(axis=1)
            drop = alive & (deg < k)
            changed = bool(drop.any())
            alive &= ~drop
        if not alive.any():
            return core
        core[alive] = k
        k += 1


def coefficients(A: np.ndarray, kind: str) -> list:
    """Per-node coefficient as exact fractions (0 where the denominator vanishes)."""
    tri = triangles_by_triples(A)
    centered, headed = wedge_counts(A)
    out = []
    for v in range(A.shape[0]):
        if kind == "clustering":
            out.append(Fraction(int(tri[v]), int(centered[v])) if centered[v] else Fraction(0))
        else:
            out.append(Fraction(2 * int(tri[v]), int(headed[v])) if headed[v] else Fraction(0))
    return out


def node_weights_for_edge(A: np.ndarray, u: int, v: int, q: float) -> np.ndarray:
    """``a_q(x, e)`` for every node ``x`` and the edge ``e = {u, v}``."""
    common = A[u] & A[v]
    a = (1.0 - 2.0 * q) * common.astype(np.float64)
    a[u] += q * common.sum()
    a[v] += q * common.sum()
    return a
