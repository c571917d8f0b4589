"""Node partitions: core/degree/log-degree/random schemes and external label files."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph, GraphFormatError, StructuralError
from .rng import make_rng

SCHEMES = ("core", "deg", "logdeg", "rand", "file")
DEFAULT_K = {"core": 30, "deg": 25, "rand": 30}


@dataclass(frozen=True)
class NodePartition:
    """Assignment of every node to one of ``k`` nonempty buckets.

    ``raw_ids[j]`` records the label bucket ``j`` carried before compaction.
    """

    assignment: np.ndarray
    k: int
    sizes: np.ndarray
    raw_ids: np.ndarray

    @classmethod
    def from_labels(cls, labels, order: str = "sorted") -> "NodePartition":
        """Compact arbitrary integer labels to ``0..k-1``.

        ``order="sorted"`` keeps the numeric order of labels, ``"first"``
        numbers them by first occurrence.
        """
        labels = np.asarray(labels, dtype=np.int64)
        if order == "sorted":
            raw, assignment = np.unique(labels, return_inverse=True)
        elif order == "first":
            uniq, first, inv = np.unique(labels, return_index=True, return_inverse=True)
            rank = np.empty(uniq.size, dtype=np.int64)
            rank[np.argsort(first, kind="stable")] = np.arange(uniq.size)
            assignment = rank[inv]
            raw = uniq[np.argsort(first, kind="stable")]
        else:
            raise ValueError(f"unknown order {order!r}")
        assignment = assignment.astype(np.int64).reshape(-1)
        k = int(raw.size)
        return cls(assignment, k, np.bincount(assignment, minlength=k).astype(np.int64), raw)

    @classmethod
    def single(cls, n: int) -> "NodePartition":
        return cls.from_labels(np.zeros(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.assignment.size)

    def members(self, j: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == j)

    def fingerprint(self) -> str:
        import hashlib
        return hashlib.sha256(self.assignment.astype("<i8").tobytes()).hexdigest()


def core_numbers(g: Graph) -> np.ndarray:
    return _kernels.core_peel(g.offsets, g.neighbors, g.degrees)


def log_degree_index(d) -> np.ndarray:
    """Raw log-degree bucket: ``floor(ln(1 + (d-2)/ln 2)) + 2`` for ``d >= 2``, else 1."""
    d = np.asarray(d, dtype=np.float64)
    out = np.ones(d.shape, dtype=np.int64)
    big = d >= 2
    out[big] = np.floor(np.log1p((d[big] - 2) / math.log(2))).astype(np.int64) + 2
    return out


def equal_frequency(stat, k: int, ties: str = "split") -> np.ndarray:
    """Rank nodes by ``stat`` (ties by node id) and cut into ``k`` equal-size groups.

    With ``ties="group"`` every run of equal statistic values is moved to
    the bucket of its first (lowest-ranked) member.
    """
    stat = np.asarray(stat)
    n = stat.size
    if k < 1:
        raise ValueError("k must be positive")
    order = np.lexsort((np.arange(n), stat))
    rank_bucket = (np.arange(n) * k) // max(n, 1)
    if ties == "group":
        sorted_stat = stat[order]
        starts = np.r_[True, sorted_stat[1:] != sorted_stat[:-1]]
        first_pos = np.maximum.accumulate(np.where(starts, np.arange(n), 0))
        rank_bucket = rank_bucket[first_pos]
    elif ties != "split":
        raise ValueError(f"unknown tie policy {ties!r}")
    labels = np.empty(n, dtype=np.int64)
    labels[order] = rank_bucket
    return labels


def make_partition(g: Graph, scheme: str, k: int | None = None, rng=None,
                   path=None, ties: str = "split") -> NodePartition:
    """Build a partition of ``g``'s nodes.

    ``core`` (k=30) and ``deg`` (k=25) are equal-frequency splits of the
    core number / degree; ``logdeg`` uses :func:`log_degree_index`; ``rand``
    draws a uniform bucket per node (k=30); ``file`` reads ``path``.
    """
    if scheme in ("degree",):
        scheme = "deg"
    if scheme in ("random",):
        scheme = "rand"
    if scheme not in SCHEMES:
        raise ValueError(f"unknown partition scheme {scheme!r}")
    if k is None:
        k = DEFAULT_K.get(scheme)
    if k is not None and k < 1:
        raise ValueError("k must be positive")
    if scheme == "core":
        labels = equal_frequency(core_numbers(g), k, ties)
    elif scheme == "deg":
        labels = equal_frequency(g.degrees, k, ties)
    elif scheme == "logdeg":
        labels = log_degree_index(g.degrees)
    elif scheme == "rand":
        labels = make_rng(rng).integers(0, k, size=g.n)
    else:
        if path is None:
            raise ValueError("file scheme needs a label path")
        return load_partition_file(path, g)
    return NodePartition.from_labels(labels, order="sorted")


def load_partition_file(path, g: Graph | None = None, n: int | None = None) -> NodePartition:
    """Integer labels in node order, normally one per line (any whitespace separates).

    Labels are compacted to ``0..k-1`` by first occurrence.
    """
    labels = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            for tok in s.split():
                try:
                    labels.append(int(tok))
                except ValueError:
                    raise GraphFormatError(f"non-integer label {tok!r}", lineno) from None
    expected = g.n if g is not None else n
    if expected is not None and len(labels) != expected:
        raise StructuralError(f"label file has {len(labels)} labels, graph has {expected} nodes")
    if not labels:
        raise StructuralError("label file is empty")
    return NodePartition.from_labels(labels, order="first")


def write_partition(part: NodePartition, path) -> None:
    with open(os.fspath(path), "w") as fh:
        fh.write("".join(f"{j}\n" for j in part.assignment.tolist()))
