"""Locating and reading the small public benchmark graphs.

Nothing is downloaded automatically.  Files are looked up under
``$TRIAD_DATA_DIR`` (then ``~/.cache/triadic``) by the stems below; the
pages where they are published are listed in ``SOURCES``.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .graph import Graph, GraphFormatError, load_edge_list

DATA_ENV = "TRIAD_DATA_DIR"

SOURCES = {
    "fb-CMU": "https://networkrepository.com/fb-CMU-Carnegie49.php",
    "PT": "https://networkrepository.com/proteins-all.php",
}

STEMS = {
    "fb-CMU": ("fb-CMU", "socfb-CMU", "fb-CMU-Carnegie49", "socfb-Carnegie49"),
    "PT": ("PT", "proteins-all"),
}

SUFFIXES = (".mtx", ".edges", ".txt", ".el")


def data_dirs() -> list[Path]:
    dirs = []
    if os.environ.get(DATA_ENV):
        dirs.append(Path(os.environ[DATA_ENV]))
    dirs.append(Path.home() / ".cache" / "triadic")
    return dirs


def find_dataset(name: str) -> Path | None:
    """Path of a local copy of ``name``, or None."""
    if name not in STEMS:
        raise KeyError(f"unknown dataset {name!r}; known: {sorted(STEMS)}")
    for d in data_dirs():
        for stem in STEMS[name]:
            for suf in SUFFIXES:
                p = d / f"{stem}{suf}"
                if p.is_file():
                    return p
    return None


def load_mtx(path) -> Graph:
    """Symmetric MatrixMarket coordinate file as an undirected graph.

    The size line fixes ``n``, so isolated nodes are kept.  Values and
    self-loops are ignored.
    """
    header = None
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s[0] == "%":
                continue
            tok = s.split()
            if header is None:
                header = tok
                continue
            if len(tok) < 2:
                raise GraphFormatError(f"bad entry {s!r}", lineno)
            rows.append((int(tok[0]), int(tok[1])))
    if header is None or len(header) < 2:
        raise GraphFormatError("missing size line")
    n = max(int(header[0]), int(header[1]))
    pairs = np.asarray(rows, dtype=np.int64).reshape(-1, 2) - 1
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    return Graph.from_edges(pairs, n=n)


def load_dataset(name: str) -> Graph | None:
    p = find_dataset(name)
    if p is None:
        return None
    if p.suffix == ".mtx":
        return load_mtx(p)
    return load_edge_list(p, extra_columns=True)[0]
