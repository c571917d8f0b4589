"""Run manifests and CSV / JSON emitters for estimate reports."""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from .graph import Graph
from .partition import NodePartition
from .triad import EstimateReport

CSV_COLUMNS = ("bucket_id", "size", "estimate", "eps_hat", "samples", "terminated_by")
PHASES = ("filter", "fixq", "upperbounds", "loop")


def software_version() -> str:
    from importlib.metadata import PackageNotFoundError, version
    try:
        return version("triadic")
    except PackageNotFoundError:
        return "unknown"


@dataclass
class RunManifest:
    """Everything needed to trace a result row back to the run that made it."""

    command: list
    config: dict
    graph: dict
    partition: str
    seed: int | None
    version: str = field(default_factory=software_version)
    phases: dict = field(default_factory=dict)

    @classmethod
    def build(cls, argv, config: dict, g: Graph, part: NodePartition, seed, phases=None):
        return cls(list(argv), _plain(config), {"n": g.n, "m": g.m, "sha256": g.fingerprint()},
                   part.fingerprint(), seed, phases=dict(phases or {}))

    def to_dict(self) -> dict:
        return asdict(self)


def _plain(obj):
    """Convert numpy containers and scalars to JSON-friendly Python values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def report_rows(report: EstimateReport) -> list[dict]:
    return [{"bucket_id": j, "size": int(report.sizes[j]), "estimate": float(report.estimates[j]),
             "eps_hat": float(report.eps_hat[j]), "samples": int(report.samples),
             "terminated_by": report.termination}
            for j in range(report.k)]


def _fmt(v):
    return repr(v) if isinstance(v, float) else str(v)


def write_csv(rows, dest=None, columns=CSV_COLUMNS) -> str:
    """Write dict rows with fixed columns; floats use ``repr`` so they round-trip exactly."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    text = buf.getvalue()
    _emit(text, dest)
    return text


def report_json(report: EstimateReport, manifest: RunManifest | None = None) -> dict:
    d = _plain(report.to_dict())
    d["rows"] = report_rows(report)
    if manifest is not None:
        d["manifest"] = manifest.to_dict()
    return d


def write_json(obj, dest=None) -> str:
    text = json.dumps(_plain(obj), indent=2, sort_keys=True) + "\n"
    _emit(text, dest)
    return text


def read_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def phase_fractions(phases: dict) -> dict:
    total = sum(phases.get(p, 0.0) for p in PHASES)
    if total <= 0:
        return {p: 0.0 for p in PHASES}
    return {p: phases.get(p, 0.0) / total for p in PHASES}


def _emit(text: str, dest) -> None:
    if dest is None:
        return
    if dest == "-":
        sys.stdout.write(text)
        return
    with open(dest, "w") as fh:
        fh.write(text)
