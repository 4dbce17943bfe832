"""Deterministic report emitters: DOT snapshots, CSV series, JSON summary.

Every emitter is a pure function of its inputs with sorted collections
and fixed number formatting, so identical analyses produce byte-identical
artifacts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from .clustering import ClusterModel
from .coreperiphery import CorenessRanking, CpdmPoint, CpdmSeries, PeopleClusterMatrix
from .history import TimeWindow
from .shift import ShiftReport


def _iso(ts: int) -> str:
    return datetime.fromtimestamp(ts, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(model: ClusterModel, ranking: CorenessRanking, cdm: np.ndarray,
             pcm: PeopleClusterMatrix, window: TimeWindow) -> str:
    """Author-cluster snapshot of one window as an undirected DOT graph.

    Clusters are red boxes labeled with weight and size, active
    developers blue ellipses; cluster-cluster edges mark nonzero
    dependency counts, developer-cluster edges carry touch counts. Node
    and edge lines are sorted for byte-stable output.
    """
    nodes = []
    for c in range(model.k):
        label = f"C{c} (w={ranking.weights[c]}, n={model.sizes[c]})"
        nodes.append(f'  "C{c}" [label="{label}", shape=box, style=filled, fillcolor=red];')
    for author in pcm.authors:
        nodes.append(f"  {_quote(author)} [shape=ellipse, style=filled, fillcolor=lightblue];")

    edges = []
    for c in range(model.k):
        for c2 in range(c + 1, model.k):
            if cdm[c, c2] > 0 or cdm[c2, c] > 0:
                edges.append(f'  "C{c}" -- "C{c2}";')
    for i, author in enumerate(pcm.authors):
        for c in range(model.k):
            count = int(pcm.counts[i, c])
            if count > 0:
                edges.append(f'  {_quote(author)} -- "C{c}" [label="{count}"];')

    lines = ["graph coreperiphery {"]
    lines.append(f"  // window {window.index}: {_iso(window.start)} .. {_iso(window.end)}")
    lines.extend(sorted(nodes))
    lines.extend(sorted(edges))
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_series_csv(series: CpdmSeries) -> str:
    """CSV of the series, reals at 6 significant digits."""
    header = "window_index,window_start_iso,window_end_iso,average_cpdm,active_developers,no_activity"
    rows = [header]
    for point, window in zip(series.points, series.windows):
        rows.append(",".join([
            str(point.window_index),
            _iso(window.start),
            _iso(window.end),
            _fmt(point.average),
            str(point.active_count),
            "true" if point.no_activity else "false",
        ]))
    return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class HealthReport:
    """Aggregate result of one analysis run."""

    project: str
    parameters: dict
    clustered_cost: int
    cluster_sizes: tuple[int, ...]
    bus_modules: tuple[str, ...]
    coreness: CorenessRanking
    points: tuple[CpdmPoint, ...]
    windows: tuple[TimeWindow, ...]
    shift: ShiftReport
    stats: dict


def emit_report_json(report: HealthReport) -> str:
    """Single JSON document with stable key order."""
    doc = {
        "project": report.project,
        "parameters": dict(sorted(report.parameters.items())),
        "clustered_cost": report.clustered_cost,
        "cluster_sizes": list(report.cluster_sizes),
        "bus_count": len(report.bus_modules),
        "bus_modules": list(report.bus_modules),
        "coreness": [
            {
                "cluster": c,
                "score": report.coreness.scores[c],
                "weight": report.coreness.weights[c],
            }
            for c in report.coreness.order
        ],
        "windows": [
            {
                "window_index": p.window_index,
                "start": _iso(w.start),
                "end": _iso(w.end),
                "average_cpdm": p.average,
                "active_developers": p.active_count,
                "no_activity": p.no_activity,
                "per_author": {a: p.per_author[a] for a in sorted(p.per_author)},
            }
            for p, w in zip(report.points, report.windows)
        ],
        "shift": {
            "label": report.shift.label,
            "slope": report.shift.slope,
            "reversals": report.shift.reversals,
            "touched_zero": report.shift.touched_zero,
            "stsc_flag": report.shift.stsc_flag,
        },
        "stats": dict(sorted(report.stats.items())),
    }
    return json.dumps(doc, indent=2) + "\n"
