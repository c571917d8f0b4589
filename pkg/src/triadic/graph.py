"""Immutable undirected graph in CSR form, edge-list I/O and uniform edge sampling."""

from __future__ import annotations

import hashlib
import io
import os
import struct
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import _kernels
from .rng import make_rng


class GraphFormatError(ValueError):
    """Malformed edge-list or cache input."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class StructuralError(ValueError):
    """Input is well formed but structurally unusable (empty graph, bad partition...)."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph.

    ``neighbors[offsets[v]:offsets[v+1]]`` is the strictly increasing
    neighbor slice of ``v``; ``edges`` holds the ``m`` canonical pairs
    ``(u, v)`` with ``u < v`` in lexicographic order.
    """

    n: int
    m: int
    offsets: np.ndarray
    neighbors: np.ndarray
    edges: np.ndarray
    degrees: np.ndarray = field(repr=False)

    @classmethod
    def from_edges(cls, pairs, n: int | None = None) -> "Graph":
        """Build a graph from an ``(m, 2)`` integer array.

        Self-loops are dropped and duplicate/reversed pairs collapsed.  Node
        ids must already be dense; ``n`` defaults to ``max id + 1``.
        """
        arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if arr.size and arr.min() < 0:
            raise StructuralError("negative node id")
        if n is None:
            n = int(arr.max()) + 1 if arr.size else 0
        elif arr.size and arr.max() >= n:
            raise StructuralError(f"node id {int(arr.max())} out of range for n={n}")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        keep = lo != hi
        key = np.unique(lo[keep] * n + hi[keep])
        edges = np.empty((key.size, 2), dtype=np.int64)
        edges[:, 0] = key // n if n else key
        edges[:, 1] = key % n if n else key
        m = edges.shape[0]

        src = np.concatenate([edges[:, 0], edges[:, 1]])
        dst = np.concatenate([edges[:, 1], edges[:, 0]])
        order = np.lexsort((dst, src))
        neighbors = np.ascontiguousarray(dst[order])
        degrees = np.bincount(src, minlength=n).astype(np.int64)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degrees, out=offsets[1:])
        return cls(n=int(n), m=int(m), offsets=offsets, neighbors=neighbors,
                   edges=edges, degrees=degrees)

    def neighbors_of(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors_of(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.size and nb[i] == v)

    def edge_index(self, u: int, v: int) -> int:
        """Position of edge ``{u, v}`` in :attr:`edges`; ``KeyError`` if absent."""
        a, b = (u, v) if u < v else (v, u)
        keys = self.edges[:, 0] * self.n + self.edges[:, 1]
        i = int(np.searchsorted(keys, a * self.n + b))
        if i >= self.m or keys[i] != a * self.n + b:
            raise KeyError((u, v))
        return i

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(struct.pack("<qq", self.n, self.m))
        h.update(self.edges.astype("<i8").tobytes())
        return h.hexdigest()

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.m == other.m
                and np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.neighbors, other.neighbors)
                and np.array_equal(self.edges, other.edges))

    __hash__ = None


@dataclass(frozen=True)
class EdgeNeighborhood:
    edge: tuple[int, int]
    common: np.ndarray

    @property
    def count(self) -> int:
        return int(self.common.size)


@dataclass(frozen=True)
class EdgeSampleBag:
    edges: np.ndarray
    seed: int | None

    @property
    def size(self) -> int:
        return int(self.edges.size)


# -- ingestion ---------------------------------------------------------------

def _open_text(source):
    if isinstance(source, (str, os.PathLike)):
        return open(source, "rb"), True
    if isinstance(source, (bytes, bytearray)):
        return io.BytesIO(source), True
    return source, False


def load_edge_list(source, *, duplicates: str = "collapse", self_loops: str = "drop",
                   comments: str = "#%", extra_columns: bool = False):
    """Read a whitespace-separated integer edge list.

    ``source`` may be a path, raw bytes or a binary/text stream.  Lines whose
    first non-blank character is in ``comments`` are skipped.  Original ids
    are relabelled to ``0..n-1`` in increasing order; ids never seen in the
    file do not exist in the result.

    Returns ``(graph, labels)`` where ``labels[i]`` is the original id of
    node ``i``.
    """
    if duplicates not in ("collapse", "error"):
        raise ValueError(f"unknown duplicates policy {duplicates!r}")
    if self_loops not in ("drop", "error"):
        raise ValueError(f"unknown self_loops policy {self_loops!r}")
    fh, close = _open_text(source)
    us, vs = [], []
    try:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.decode() if isinstance(raw, bytes) else raw
            s = line.strip()
            if not s or s[0] in comments:
                continue
            tok = s.split()
            if len(tok) < 2 or (len(tok) > 2 and not extra_columns):
                raise GraphFormatError(f"expected two node ids, got {s!r}", lineno)
            try:
                a, b = int(tok[0]), int(tok[1])
            except ValueError:
                raise GraphFormatError(f"non-integer node id in {s!r}", lineno) from None
            if a == b and self_loops == "error":
                raise GraphFormatError(f"self-loop on node {a}", lineno)
            us.append(a)
            vs.append(b)
    finally:
        if close:
            fh.close()

    raw_pairs = np.array([us, vs], dtype=np.int64).T.reshape(-1, 2)
    labels, dense = np.unique(raw_pairs, return_inverse=True)
    dense = dense.reshape(-1, 2)
    if duplicates == "error":
        lo = np.minimum(dense[:, 0], dense[:, 1])
        hi = np.maximum(dense[:, 0], dense[:, 1])
        key = (lo * max(labels.size, 1) + hi)[lo != hi]
        if np.unique(key).size != key.size:
            raise GraphFormatError("duplicate edge")
    g = Graph.from_edges(dense, n=labels.size)
    if g.m == 0:
        raise StructuralError("edge list contains no edges")
    return g, labels


def write_edge_list(g: Graph, dest, labels=None) -> None:
    """Write canonical edges, one ``u v`` pair per line."""
    pairs = g.edges if labels is None else np.asarray(labels)[g.edges]
    text = "".join(f"{a} {b}\n" for a, b in pairs.tolist())
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w") as fh:
            fh.write(text)
    elif isinstance(dest, io.TextIOBase):
        dest.write(text)
    else:
        dest.write(text.encode())


_MAGIC = b"TRIADCSR"
_VERSION = 1
_HEADER = struct.Struct("<8sIqq")


def save_cache(g: Graph, path) -> None:
    """Binary cache: header (magic, version, n, m) then offsets, neighbors, edges as little-endian int64."""
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, _VERSION, g.n, g.m))
        for arr in (g.offsets, g.neighbors, g.edges.reshape(-1)):
            fh.write(np.ascontiguousarray(arr, dtype="<i8").tobytes())


def load_cache(path) -> Graph:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise GraphFormatError("truncated cache header")
    magic, version, n, m = _HEADER.unpack_from(blob)
    if magic != _MAGIC:
        raise GraphFormatError("not a graph cache file")
    if version != _VERSION:
        raise GraphFormatError(f"unsupported cache version {version}")
    body = np.frombuffer(blob, dtype="<i8", offset=_HEADER.size)
    if body.size != (n + 1) + 2 * m + 2 * m:
        raise GraphFormatError("cache payload size does not match header")
    offsets = body[:n + 1].astype(np.int64)
    neighbors = body[n + 1:n + 1 + 2 * m].astype(np.int64)
    edges = body[n + 1 + 2 * m:].astype(np.int64).reshape(m, 2)
    return Graph(n=int(n), m=int(m), offsets=offsets, neighbors=neighbors,
                 edges=edges, degrees=np.diff(offsets))


def load_graph(path, cache=None) -> tuple[Graph, np.ndarray | None]:
    """Load from a cache file if given and present, else parse and (optionally) write the cache."""
    if cache and os.path.exists(cache):
        return load_cache(cache), None
    g, labels = load_edge_list(path)
    if cache:
        save_cache(g, cache)
    return g, labels


# -- queries -----------------------------------------------------------------

def edge_triangles(g: Graph, e: int) -> EdgeNeighborhood:
    """Common neighbors of the endpoints of edge ``e`` (sorted merge)."""
    u, v = int(g.edges[e, 0]), int(g.edges[e, 1])
    common = _kernels.common_neighbors(g.offsets, g.neighbors, u, v)
    return EdgeNeighborhood((u, v), common)


def edge_triangle_counts(g: Graph) -> np.ndarray:
    """``|Δ_e|`` for every edge."""
    return _kernels.edge_triangle_counts(g.offsets, g.neighbors, g.edges)


def sample_edges(g: Graph, s: int, rng=None) -> EdgeSampleBag:
    """Draw ``s`` edge indices uniformly with replacement."""
    if s < 1:
        raise ValueError("sample size must be >= 1")
    if g.m < 1:
        raise StructuralError("cannot sample from a graph without edges")
    seed = rng if isinstance(rng, (int, np.integer)) else None
    gen = make_rng(rng)
    return EdgeSampleBag(gen.integers(0, g.m, size=s, dtype=np.int64), seed)


# -- generators used by tests and demos --------------------------------------

def erdos_renyi(n: int, p: float, rng=None) -> Graph:
    """G(n, p) via a dense upper-triangle coin flip (desk-scale only)."""
    gen = make_rng(rng)
    iu, ju = np.triu_indices(n, k=1)
    keep = gen.random(iu.size) < p
    return Graph.from_edges(np.column_stack([iu[keep], ju[keep]]), n=n)


def gnm(n: int, m: int, rng=None) -> Graph:
    """Uniform simple graph with exactly ``m`` edges (rejection on duplicates)."""
    if m > n * (n - 1) // 2:
        raise ValueError("too many edges")
    gen = make_rng(rng)
    keys = np.empty(0, dtype=np.int64)
    while keys.size < m:
        a = gen.integers(0, n, size=2 * (m - keys.size) + 16)
        b = gen.integers(0, n, size=a.size)
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        new = (lo * n + hi)[lo != hi]
        keys = np.unique(np.concatenate([keys, new]))
    keys = gen.permutation(keys)[:m]
    return Graph.from_edges(np.column_stack([keys // n, keys % n]), n=n)


def disjoint_union(*graphs: Graph) -> Graph:
    parts, shift = [], 0
    for h in graphs:
        parts.append(h.edges + shift)
        shift += h.n
    return Graph.from_edges(np.concatenate(parts) if parts else np.empty((0, 2)), n=shift)


def complete_graph(n: int) -> Graph:
    iu, ju = np.triu_indices(n, k=1)
    return Graph.from_edges(np.column_stack([iu, ju]), n=n)


def cycle_graph(n: int) -> Graph:
    a = np.arange(n)
    return Graph.from_edges(np.column_stack([a, (a + 1) % n]), n=n)


def path_graph(n: int) -> Graph:
    a = np.arange(n - 1)
    return Graph.from_edges(np.column_stack([a, a + 1]), n=n)


def star_graph(leaves: int) -> Graph:
    a = np.arange(1, leaves + 1)
    return Graph.from_edges(np.column_stack([np.zeros_like(a), a]), n=leaves + 1)


def from_pairs(pairs: Iterable[tuple[int, int]], n: int | None = None) -> Graph:
    return Graph.from_edges(np.array(list(pairs), dtype=np.int64).reshape(-1, 2), n=n)
