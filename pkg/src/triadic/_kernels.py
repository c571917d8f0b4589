"""Compiled inner loops over CSR adjacency.

Every kernel takes the raw arrays of a :class:`~triadic.graph.Graph`
(``offsets``, ``neighbors``, ``edges``) so that numba sees plain int64
buffers.  Rows of batch outputs are computed independently, which keeps the
parallel variants bit-identical to the serial ones.
"""

import os

import numba
import numpy as np
from numba import njit, prange

if "NUMBA_THREADING_LAYER" not in os.environ:
    # the system TBB is often too old for numba and only produces a warning
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@njit(cache=True, inline="always")
def _merge_count(nbrs, a0, a1, b0, b1):
    c = 0
    i = a0
    j = b0
    while i < a1 and j < b1:
        x = nbrs[i]
        y = nbrs[j]
        if x < y:
            i += 1
        elif x > y:
            j += 1
        else:
            c += 1
            i += 1
            j += 1
    return c


@njit(cache=True)
def common_neighbors(offsets, nbrs, u, v):
    a0, a1 = offsets[u], offsets[u + 1]
    b0, b1 = offsets[v], offsets[v + 1]
    out = np.empty(min(a1 - a0, b1 - b0), dtype=np.int64)
    c = 0
    i = a0
    j = b0
    while i < a1 and j < b1:
        x = nbrs[i]
        y = nbrs[j]
        if x < y:
            i += 1
        elif x > y:
            j += 1
        else:
            out[c] = x
            c += 1
            i += 1
            j += 1
    return out[:c]


@njit(cache=True)
def edge_triangle_counts(offsets, nbrs, edges):
    m = edges.shape[0]
    out = np.zeros(m, dtype=np.int64)
    for e in range(m):
        u = edges[e, 0]
        v = edges[e, 1]
        out[e] = _merge_count(nbrs, offsets[u], offsets[u + 1], offsets[v], offsets[v + 1])
    return out


@njit(cache=True)
def local_triangles(offsets, nbrs, edges, n):
    # each triangle u<v<w is credited once, from its lowest edge (u, v)
    tri = np.zeros(n, dtype=np.int64)
    for e in range(edges.shape[0]):
        u = edges[e, 0]
        v = edges[e, 1]
        i = offsets[u]
        i1 = offsets[u + 1]
        j = offsets[v]
        j1 = offsets[v + 1]
        while i < i1 and j < j1:
            x = nbrs[i]
            y = nbrs[j]
            if x < y:
                i += 1
            elif x > y:
                j += 1
            else:
                if x > v:
                    tri[u] += 1
                    tri[v] += 1
                    tri[x] += 1
                i += 1
                j += 1
    return tri


@njit(cache=True, inline="always")
def _edge_parts_into(offsets, nbrs, u, v, assign, inv_w, nb_row, ep_row):
    i = offsets[u]
    i1 = offsets[u + 1]
    j = offsets[v]
    j1 = offsets[v + 1]
    c = 0
    while i < i1 and j < j1:
        x = nbrs[i]
        y = nbrs[j]
        if x < y:
            i += 1
        elif x > y:
            j += 1
        else:
            nb_row[assign[x]] += inv_w[x]
            c += 1
            i += 1
            j += 1
    if c > 0:
        ep_row[assign[u]] += c * inv_w[u]
        ep_row[assign[v]] += c * inv_w[v]


@njit(cache=True)
def batch_parts(offsets, nbrs, edges, idx, assign, inv_w, k):
    """Per sampled edge: neighbor part and endpoint part of the bucket sums."""
    s = idx.shape[0]
    nb = np.zeros((s, k))
    ep = np.zeros((s, k))
    for r in range(s):
        e = idx[r]
        _edge_parts_into(offsets, nbrs, edges[e, 0], edges[e, 1], assign, inv_w, nb[r], ep[r])
    return nb, ep


@njit(cache=True, parallel=True)
def batch_parts_parallel(offsets, nbrs, edges, idx, assign, inv_w, k):
    s = idx.shape[0]
    nb = np.zeros((s, k))
    ep = np.zeros((s, k))
    for r in prange(s):
        e = idx[r]
        _edge_parts_into(offsets, nbrs, edges[e, 0], edges[e, 1], assign, inv_w, nb[r], ep[r])
    return nb, ep


@njit(cache=True)
def edge_moments(offsets, nbrs, edges, assign, inv_w, k, q):
    """Sum and sum of squares of the raw bucket contribution over all edges."""
    m = edges.shape[0]
    s1 = np.zeros(k)
    s2 = np.zeros(k)
    nb = np.zeros(k)
    ep = np.zeros(k)
    touched = np.empty(k, dtype=np.int64)
    stamp = np.full(k, -1, dtype=np.int64)
    for e in range(m):
        u = edges[e, 0]
        v = edges[e, 1]
        nt = 0
        i = offsets[u]
        i1 = offsets[u + 1]
        j = offsets[v]
        j1 = offsets[v + 1]
        c = 0
        while i < i1 and j < j1:
            x = nbrs[i]
            y = nbrs[j]
            if x < y:
                i += 1
            elif x > y:
                j += 1
            else:
                b = assign[x]
                if stamp[b] != e:
                    stamp[b] = e
                    touched[nt] = b
                    nt += 1
                nb[b] += inv_w[x]
                c += 1
                i += 1
                j += 1
        if c == 0:
            continue
        for b, w in ((assign[u], inv_w[u]), (assign[v], inv_w[v])):
            if stamp[b] != e:
                stamp[b] = e
                touched[nt] = b
                nt += 1
            ep[b] += c * w
        for t in range(nt):
            b = touched[t]
            val = (1.0 - 2.0 * q) * nb[b] + q * ep[b]
            s1[b] += val
            s2[b] += val * val
            nb[b] = 0.0
            ep[b] = 0.0
    return s1, s2


@njit(cache=True)
def node_bucket_spread(offsets, nbrs, assign, k, include_self):
    """Number of distinct buckets met in N(v) (optionally N(v) + v)."""
    n = offsets.shape[0] - 1
    chi = np.zeros(n, dtype=np.int64)
    stamp = np.full(k, -1, dtype=np.int64)
    for v in range(n):
        c = 0
        if include_self:
            stamp[assign[v]] = v
            c = 1
        for t in range(offsets[v], offsets[v + 1]):
            b = assign[nbrs[t]]
            if stamp[b] != v:
                stamp[b] = v
                c += 1
        chi[v] = c
    return chi


@njit(cache=True)
def range_bounds(offsets, nbrs, edges, degrees, assign, inv_w, k, q):
    """Max over edges of the per-bucket raw bound built from the min-degree endpoint."""
    m = edges.shape[0]
    best = np.zeros(k)
    acc = np.zeros(k)
    touched = np.empty(k, dtype=np.int64)
    stamp = np.full(k, -1, dtype=np.int64)
    zs = np.empty(m, dtype=np.int64)
    for e in range(m):
        u = edges[e, 0]
        v = edges[e, 1]
        # ties go to the lower id; edges are stored with u < v
        z = u if degrees[u] <= degrees[v] else v
        zs[e] = z
        nt = 0
        for t in range(offsets[z], offsets[z + 1]):
            w = nbrs[t]
            b = assign[w]
            if stamp[b] != e:
                stamp[b] = e
                touched[nt] = b
                nt += 1
            acc[b] += (1.0 - 2.0 * q) * inv_w[w]
        dz = degrees[z]
        for b, w in ((assign[u], inv_w[u]), (assign[v], inv_w[v])):
            if stamp[b] != e:
                stamp[b] = e
                touched[nt] = b
                nt += 1
            acc[b] += q * dz * w
        for t in range(nt):
            b = touched[t]
            if acc[b] > best[b]:
                best[b] = acc[b]
            acc[b] = 0.0
    return best, zs


@njit(cache=True)
def _adjacent(offsets, nbrs, a, b):
    lo = offsets[a]
    hi = offsets[a + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        x = nbrs[mid]
        if x < b:
            lo = mid + 1
        elif x > b:
            hi = mid
        else:
            return True
    return False


@njit(cache=True)
def peel_small(offsets, nbrs, alive, order):
    """Count and remove the triangles of each node in ``order``, one node at a time.

    ``alive`` is modified in place.  Returns the per-node leftover counts.
    """
    n = offsets.shape[0] - 1
    left = np.zeros(n, dtype=np.int64)
    buf = np.empty(n, dtype=np.int64)
    for v in order:
        if not alive[v]:
            continue
        na = 0
        for t in range(offsets[v], offsets[v + 1]):
            w = nbrs[t]
            if alive[w]:
                buf[na] = w
                na += 1
        for x in range(na):
            a = buf[x]
            for y in range(x + 1, na):
                b = buf[y]
                if _adjacent(offsets, nbrs, a, b):
                    left[v] += 1
                    left[a] += 1
                    left[b] += 1
        alive[v] = False
    return left


@njit(cache=True)
def core_peel(offsets, nbrs, degrees):
    """Bucket-queue peeling (Batagelj and Zaversnik), O(n + m)."""
    n = degrees.shape[0]
    deg = degrees.copy()
    if n == 0:
        return deg
    md = 0
    for v in range(n):
        if deg[v] > md:
            md = deg[v]
    bin_ = np.zeros(md + 1, dtype=np.int64)
    for v in range(n):
        bin_[deg[v]] += 1
    start = 0
    for d in range(md + 1):
        num = bin_[d]
        bin_[d] = start
        start += num
    pos = np.empty(n, dtype=np.int64)
    vert = np.empty(n, dtype=np.int64)
    for v in range(n):
        pos[v] = bin_[deg[v]]
        vert[pos[v]] = v
        bin_[deg[v]] += 1
    for d in range(md, 0, -1):
        bin_[d] = bin_[d - 1]
    bin_[0] = 0
    for i in range(n):
        v = vert[i]
        for t in range(offsets[v], offsets[v + 1]):
            u = nbrs[t]
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bin_[du]
                w = vert[pw]
                if u != w:
                    pos[u] = pw
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                bin_[du] += 1
                deg[u] -= 1
    return deg
