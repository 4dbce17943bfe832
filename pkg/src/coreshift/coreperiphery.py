"""Core-ness ranking of clusters and the core-periphery distance metric.

Pipeline per time window: aggregate the DSM into a cluster dependency
matrix, rank clusters by the row sums of its product with the cluster
size diagonal (larger means more core), give the most core cluster
weight k down to 1 for the most peripheral, then score each active
developer by the weighted average of the clusters they touched. Touches
on paths outside the module set dilute the score toward zero, so a
developer drifting entirely to documentation bottoms out at 0. Touches
on vertical buses carry no cluster weight and stay out of the average;
they are tallied so reports can surface them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import ClusteringParams, ClusterModel, cluster
from .dsm import DSM
from .history import TimeWindow, TouchTable, build_touch_table

__all__ = [
    "cluster_dependency_matrix",
    "cluster_size_matrix",
    "CorenessRanking",
    "coreness_ranking",
    "PeopleClusterMatrix",
    "people_cluster_matrix",
    "developer_cpdm",
    "CpdmPoint",
    "CpdmSeries",
    "average_cpdm",
    "WindowAnalysis",
    "analyze_windows",
    "cpdm_series",
]


def cluster_dependency_matrix(dsm: DSM, model: ClusterModel) -> np.ndarray:
    """k x k matrix of dependency counts between clusters.

    Cell (c, c') sums cells[i, j] over i in c, j in c'; the diagonal
    holds intra-cluster counts. Vertical buses are excluded entirely.
    """
    k = model.k
    cdm = np.zeros((k, k), dtype=np.int64)
    members = [[] for _ in range(k)]
    for m, c in model.assignment.cluster_of.items():
        members[c].append(m)
    for c in range(k):
        if not members[c]:
            continue
        for c2 in range(k):
            if not members[c2]:
                continue
            cdm[c, c2] = int(dsm.cells[np.ix_(members[c], members[c2])].sum())
    return cdm


def cluster_size_matrix(model: ClusterModel) -> np.ndarray:
    """Diagonal of per-cluster module counts, as a length-k vector."""
    return np.array(model.sizes, dtype=np.int64)


@dataclass(frozen=True)
class CorenessRanking:
    """Clusters ordered from most to least core, with weights k..1."""

    scores: tuple[int, ...]
    order: tuple[int, ...]
    weights: dict[int, int]

    @property
    def k(self) -> int:
        return len(self.order)

    @property
    def top_cluster(self) -> int:
        return self.order[0]


def coreness_ranking(cdm: np.ndarray, sizes: np.ndarray) -> CorenessRanking:
    """Rank clusters by core-ness.

    score(c) is the row sum of CDM @ diag(sizes): a cluster is core when
    its dependency mass lands on large clusters. Ties break toward the
    larger cluster, then the lower id. Weights run k (most core) down
    to 1.
    """
    k = cdm.shape[0]
    if cdm.shape != (k, k) or len(sizes) != k:
        raise ValueError("cluster dependency matrix and size matrix disagree on k")
    scores = tuple(int(s) for s in cdm @ np.asarray(sizes, dtype=np.int64))
    order = tuple(sorted(range(k), key=lambda c: (-scores[c], -int(sizes[c]), c)))
    weights = {c: k - pos for pos, c in enumerate(order)}
    return CorenessRanking(scores, order, weights)


@dataclass(frozen=True)
class PeopleClusterMatrix:
    """Author x cluster touch counts for one window.

    Rows exist exactly for the window's active authors (sorted). Bus
    touches sit in a pseudo-column outside the weighted average;
    non-module touches are carried per author.
    """

    authors: tuple[str, ...]
    counts: np.ndarray  # (len(authors), k)
    bus_touches: np.ndarray  # (len(authors),)
    non_module: np.ndarray  # (len(authors),)

    @property
    def k(self) -> int:
        return self.counts.shape[1] if self.counts.ndim == 2 else 0


def people_cluster_matrix(touch_table: TouchTable, model: ClusterModel) -> PeopleClusterMatrix:
    """Aggregate a touch table over the model's clusters."""
    authors = tuple(sorted(touch_table.active_authors))
    row_of = {a: i for i, a in enumerate(authors)}
    counts = np.zeros((len(authors), model.k), dtype=np.int64)
    bus = np.zeros(len(authors), dtype=np.int64)
    non_module = np.zeros(len(authors), dtype=np.int64)
    for (author, module), count in touch_table.touches.items():
        if module in model.bus_set:
            bus[row_of[author]] += count
        else:
            counts[row_of[author], model.assignment.cluster_of[module]] += count
    for author, count in touch_table.non_module_touches.items():
        non_module[row_of[author]] += count
    counts.setflags(write=False)
    bus.setflags(write=False)
    non_module.setflags(write=False)
    return PeopleClusterMatrix(authors, counts, bus, non_module)


def developer_cpdm(cluster_counts, non_module_count: int, ranking: CorenessRanking,
                   binary: bool = False) -> float:
    """Weighted average of cluster weights for one developer.

    With t = total cluster touches: sum(weight(c) * count(c)) divided by
    t + non-module count, so documentation-only work pulls the value
    toward 0; t == 0 yields exactly 0. `binary` collapses every count to
    membership (touched or not).
    """
    counts = [int(c) for c in cluster_counts]
    nm = int(non_module_count)
    if binary:
        counts = [1 if c > 0 else 0 for c in counts]
        nm = 1 if nm > 0 else 0
    t = sum(counts)
    if t == 0:
        return 0.0
    weighted = sum(ranking.weights[c] * counts[c] for c in range(len(counts)))
    return weighted / (t + nm)


@dataclass(frozen=True)
class CpdmPoint:
    """Average core-periphery distance of one window."""

    window_index: int
    average: float
    per_author: dict[str, float]
    active_count: int
    no_activity: bool


@dataclass(frozen=True)
class CpdmSeries:
    """Chronological averages, one point per window."""

    points: tuple[CpdmPoint, ...]
    windows: tuple[TimeWindow, ...]

    def averages(self) -> list[float]:
        return [p.average for p in self.points]


def average_cpdm(pcm: PeopleClusterMatrix, ranking: CorenessRanking,
                 window: TimeWindow, binary: bool = False) -> CpdmPoint:
    """Mean developer score over the window's active authors.

    A window without commits yields average 0 flagged no_activity -- a
    gap, distinct from a measured zero.
    """
    per_author = {
        author: developer_cpdm(pcm.counts[i], int(pcm.non_module[i]), ranking, binary)
        for i, author in enumerate(pcm.authors)
    }
    if not per_author:
        return CpdmPoint(window.index, 0.0, {}, 0, True)
    avg = sum(per_author.values()) / len(per_author)
    return CpdmPoint(window.index, avg, per_author, len(per_author), False)


@dataclass(frozen=True)
class WindowAnalysis:
    """Everything computed for one window, kept for reporting."""

    window: TimeWindow
    table: TouchTable
    model: ClusterModel
    ranking: CorenessRanking
    cdm: np.ndarray
    pcm: PeopleClusterMatrix
    point: CpdmPoint


def analyze_windows(dsm: DSM, commits, windows, params: ClusteringParams, path_map,
                    *, binary_touches: bool = False,
                    recluster_per_window: bool = False) -> list[WindowAnalysis]:
    """Run the per-window metric pipeline.

    One cluster model is built from the full-history DSM and shared by
    every window, so series movement reflects people moving rather than
    clusters re-forming. With recluster_per_window each window clusters
    independently under a seed derived from (seed, window index).
    """
    if not recluster_per_window:
        base_model = cluster(dsm, params)
        base_cdm = cluster_dependency_matrix(dsm, base_model)
        base_ranking = coreness_ranking(base_cdm, cluster_size_matrix(base_model))

    analyses = []
    for window in windows:
        if recluster_per_window:
            derived = ClusteringParams(
                k=params.k, power=params.power, bus_threshold=params.bus_threshold,
                seed=params.seed + 1_000_003 * (window.index + 1),
                restarts=params.restarts, stability_window=params.stability_window)
            model = cluster(dsm, derived)
            cdm = cluster_dependency_matrix(dsm, model)
            ranking = coreness_ranking(cdm, cluster_size_matrix(model))
        else:
            model, ranking, cdm = base_model, base_ranking, base_cdm
        table = build_touch_table(commits, window, path_map)
        pcm = people_cluster_matrix(table, model)
        point = average_cpdm(pcm, ranking, window, binary_touches)
        analyses.append(WindowAnalysis(window, table, model, ranking, cdm, pcm, point))
    return analyses


def cpdm_series(dsm: DSM, commits, windows, params: ClusteringParams, path_map,
                *, binary_touches: bool = False,
                recluster_per_window: bool = False) -> CpdmSeries:
    """Average core-periphery distance per window, in window order."""
    analyses = analyze_windows(
        dsm, commits, windows, params, path_map,
        binary_touches=binary_touches, recluster_per_window=recluster_per_window)
    return CpdmSeries(tuple(a.point for a in analyses), tuple(windows))
