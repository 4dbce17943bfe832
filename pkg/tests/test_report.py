import csv
import io
import json

import numpy as np

from coreshift import (
    ClusterAssignment,
    ClusteringParams,
    ClusterModel,
    CorenessRanking,
    CpdmPoint,
    CpdmSeries,
    DependencyGraph,
    HealthReport,
    PeopleClusterMatrix,
    ShiftReport,
    TimeWindow,
    build_dsm,
    clustered_cost,
    emit_dot,
    emit_report_json,
    emit_series_csv,
)

DAY = 86400


def two_cluster_model():
    g = DependencyGraph(
        ["A", "B", "C", "D"],
        [("A", "B"), ("B", "A"), ("C", "D"), ("D", "C"), ("A", "C")],
    )
    d = build_dsm(g)
    assignment = ClusterAssignment({0: 0, 1: 0, 2: 1, 3: 1}, frozenset(), 2)
    model = ClusterModel(
        assignment=assignment,
        sizes=(2, 2),
        total_cost=clustered_cost(d, assignment, 2),
        params=ClusteringParams(k=2),
        seed_used=42,
        n_modules=4,
    )
    return d, model


def ranking2():
    return CorenessRanking((10, 4), (0, 1), {0: 2, 1: 1})


def window(idx=0):
    return TimeWindow(idx, 1_577_836_800 + idx * DAY, 1_577_836_800 + (idx + 1) * DAY, "disjoint")


def pcm(authors=("ana",), counts=((3, 0),), k=2):
    if authors:
        a = np.array(counts, dtype=np.int64).reshape(len(authors), k)
    else:
        a = np.zeros((0, k), dtype=np.int64)
    zeros = np.zeros(len(authors), dtype=np.int64)
    return PeopleClusterMatrix(tuple(authors), a, zeros, zeros)


def test_emit_dot_counts_nodes_and_edges():
    d, model = two_cluster_model()
    cdm = np.array([[2, 1], [0, 2]])
    text = emit_dot(model, ranking2(), cdm, pcm(), window())
    node_lines = [ln for ln in text.splitlines() if "shape=" in ln]
    edge_lines = [ln for ln in text.splitlines() if " -- " in ln]
    assert len(node_lines) == 3  # 2 clusters + 1 developer
    assert len(edge_lines) == 2  # C0--C1 dependency + ana--C0 touches
    assert '"C0" [label="C0 (w=2, n=2)"' in text
    assert '"ana" -- "C0" [label="3"];' in text


def test_emit_dot_empty_pcm_has_clusters_only():
    _, model = two_cluster_model()
    cdm = np.array([[2, 1], [0, 2]])
    text = emit_dot(model, ranking2(), cdm, pcm(authors=(), counts=()), window())
    assert "ellipse" not in text
    assert '"C0" -- "C1";' in text


def test_emit_dot_cluster_edges_follow_cdm_support():
    _, model = two_cluster_model()
    no_cross = np.array([[2, 0], [0, 2]])
    text = emit_dot(model, ranking2(), no_cross, pcm(authors=(), counts=()), window())
    assert '"C0" -- "C1";' not in text
    lower_only = np.array([[2, 0], [1, 2]])
    text = emit_dot(model, ranking2(), lower_only, pcm(authors=(), counts=()), window())
    assert '"C0" -- "C1";' in text


def test_emit_dot_deterministic():
    d, model = two_cluster_model()
    cdm = np.array([[2, 1], [0, 2]])
    p = pcm(authors=("zoe", "ana"), counts=((1, 2), (3, 0)))
    assert emit_dot(model, ranking2(), cdm, p, window()) == emit_dot(
        model, ranking2(), cdm, p, window())


def series2():
    points = (
        CpdmPoint(0, 8.5, {"ana": 8.5}, 1, False),
        CpdmPoint(1, 0.0, {}, 0, True),
    )
    return CpdmSeries(points, (window(0), window(1)))


def test_emit_series_csv_shape_and_values():
    text = emit_series_csv(series2())
    lines = text.strip().split("\n")
    assert len(lines) == 3
    assert lines[0].startswith("window_index,window_start_iso")
    assert lines[1].split(",")[3] == "8.5"
    assert lines[2].split(",")[5] == "true"
    assert lines[2].split(",")[3] == "0"


def test_emit_series_csv_empty_series_is_header_only():
    assert emit_series_csv(CpdmSeries((), ())).strip().count("\n") == 0


def test_series_csv_round_trips_to_six_significant_digits():
    values = [1.2345678901, 0.000123456789, 7.0, 3.99999999, 0.0]
    points = tuple(CpdmPoint(i, v, {}, 1, False) for i, v in enumerate(values))
    windows = tuple(window(i) for i in range(len(values)))
    text = emit_series_csv(CpdmSeries(points, windows))
    rows = list(csv.DictReader(io.StringIO(text)))
    for row, v in zip(rows, values):
        parsed = float(row["average_cpdm"])
        assert parsed == float(f"{v:.6g}")


def health_report(label="shift_away"):
    return HealthReport(
        project="demo",
        parameters={"clusters": 2, "lambda": 2},
        clustered_cost=96,
        cluster_sizes=(2, 2),
        bus_modules=("lib.Util",),
        coreness=ranking2(),
        points=series2().points,
        windows=series2().windows,
        shift=ShiftReport(label, -0.12, 0, True, label == "shift_away"),
        stats={"modules": 4, "commits": 7},
    )


def test_emit_report_json_contains_fields():
    doc = json.loads(emit_report_json(health_report()))
    assert doc["project"] == "demo"
    assert doc["clustered_cost"] == 96
    assert doc["shift"]["label"] == "shift_away"
    assert doc["shift"]["stsc_flag"] is True
    assert doc["bus_count"] == 1
    assert doc["coreness"][0]["weight"] == 2
    assert doc["windows"][1]["no_activity"] is True


def test_emit_report_json_deterministic():
    assert emit_report_json(health_report()) == emit_report_json(health_report())


def test_emit_report_json_label_verbatim():
    doc = json.loads(emit_report_json(health_report(label="indeterminate")))
    assert doc["shift"]["label"] == "indeterminate"
    assert doc["shift"]["stsc_flag"] is False
