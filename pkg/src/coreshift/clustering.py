"""Dependency-based clustering of a DSM by stochastic bid local search.

The objective is the clustered cost: over every ordered module pair
(i, j), i != j, with d = cells[i, j] + cells[j, i],

    cost(i, j) = d                    if i or j is a vertical bus
    cost(i, j) = d * n**power         if i and j share a cluster of size n
    cost(i, j) = d * N**power         otherwise (N = total module count)

so dependencies are cheap onto buses, cheap inside small clusters, and
expensive across clusters. The search repeatedly picks a random non-bus
module, asks every cluster for the cost change of absorbing it, applies
the best strictly-negative bid, and stops once a full stability window of
consecutive proposals is rejected. Multiple restarts with independent
seed streams keep the local search honest; the cheapest model wins.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .dsm import DSM, identify_vertical_buses
from .validation import check_cluster_count

__all__ = [
    "ClusteringParams",
    "ClusterAssignment",
    "Bid",
    "ClusterModel",
    "pair_dependency",
    "dependency_cost",
    "clustered_cost",
    "compute_bid",
    "cluster",
    "DependencyClustering",
]


@dataclass(frozen=True)
class ClusteringParams:
    """Knobs of the clustering search.

    power is the cluster-size exponent of the cost law (the tuning
    exponent, optimal at 2). stability_window None means 2n, resolved at
    run time. When the DSM has fewer modules than k, the effective k is
    clamped to the module count.
    """

    k: int = 9
    power: int = 2
    bus_threshold: float = 0.25
    seed: int = 42
    restarts: int = 10
    stability_window: int | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.power < 1:
            raise ValueError(f"power must be >= 1, got {self.power}")
        if not 0.0 <= self.bus_threshold <= 1.0:
            raise ValueError("bus_threshold must be in [0, 1]")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.stability_window is not None and self.stability_window < 1:
            raise ValueError("stability_window must be >= 1")


@dataclass(frozen=True)
class ClusterAssignment:
    """Placement of every module: non-bus modules into clusters 0..k-1,
    bus modules outside all clusters."""

    cluster_of: dict[int, int]
    bus_set: frozenset[int]
    k: int

    def __post_init__(self):
        overlap = self.bus_set.intersection(self.cluster_of)
        if overlap:
            raise ValueError(f"modules both clustered and bus: {sorted(overlap)}")
        bad = [m for m, c in self.cluster_of.items() if not 0 <= c < self.k]
        if bad:
            raise ValueError(f"cluster id out of range for modules {sorted(bad)}")

    @property
    def n(self) -> int:
        return len(self.cluster_of) + len(self.bus_set)

    def sizes(self) -> tuple[int, ...]:
        counts = [0] * self.k
        for c in self.cluster_of.values():
            counts[c] += 1
        return tuple(counts)


@dataclass(frozen=True)
class Bid:
    """Cost change a cluster offers for absorbing a module."""

    module: int
    target_cluster: int
    delta: int


@dataclass(frozen=True)
class ClusterModel:
    """Result of a clustering run: assignment, per-cluster sizes, and the
    total clustered cost, plus the parameters that produced it."""

    assignment: ClusterAssignment
    sizes: tuple[int, ...]
    total_cost: int
    params: ClusteringParams
    seed_used: int
    n_modules: int

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def bus_set(self) -> frozenset[int]:
        return self.assignment.bus_set


def pair_dependency(dsm: DSM, i: int, j: int) -> int:
    """Mutual dependency mass of an ordered pair: cells[i,j] + cells[j,i]."""
    if i == j:
        raise ValueError("pair dependency is undefined for i == j")
    return int(dsm.cells[i, j]) + int(dsm.cells[j, i])


def dependency_cost(dsm: DSM, assignment: ClusterAssignment, i: int, j: int, power: int) -> int:
    """Cost of one ordered pair under the three-case cost law."""
    d = pair_dependency(dsm, i, j)
    if i in assignment.bus_set or j in assignment.bus_set:
        return d
    if assignment.cluster_of[i] == assignment.cluster_of[j]:
        size = sum(1 for c in assignment.cluster_of.values() if c == assignment.cluster_of[i])
        return d * size**power
    return d * dsm.n**power


def clustered_cost(dsm: DSM, assignment: ClusterAssignment, power: int) -> int:
    """Total cost over all ordered pairs i != j.

    Computed by mass decomposition (exact integer arithmetic): pairs with
    a bus endpoint contribute their raw mass, intra-cluster mass scales
    with cluster size ** power, everything else with n ** power.
    """
    n = dsm.n
    if len(assignment.cluster_of) + len(assignment.bus_set) != n:
        raise ValueError("assignment does not cover the DSM")
    D = dsm.cells.astype(np.int64) + dsm.cells.T
    total_mass = int(D.sum())

    labels = np.full(n, -1, dtype=np.int64)
    for m, c in assignment.cluster_of.items():
        labels[m] = c

    nonbus = labels >= 0
    nb_idx = np.nonzero(nonbus)[0]
    D_nb = D[np.ix_(nb_idx, nb_idx)]
    nonbus_mass = int(D_nb.sum())

    sizes = assignment.sizes()
    cost = total_mass - nonbus_mass  # every pair touching a bus, at weight 1
    intra_mass_sum = 0
    nb_labels = labels[nb_idx]
    for c in range(assignment.k):
        members = np.nonzero(nb_labels == c)[0]
        if len(members) == 0:
            continue
        w = int(D_nb[np.ix_(members, members)].sum())
        intra_mass_sum += w
        cost += w * sizes[c] ** power
    cost += (nonbus_mass - intra_mass_sum) * n**power
    return cost


def _neighbor_lists(dsm: DSM) -> list[list[tuple[int, int]]]:
    # per module: [(j, d_ij)] for every j with d_ij > 0
    D = dsm.cells.astype(np.int64) + dsm.cells.T
    out = []
    for i in range(dsm.n):
        js = np.nonzero(D[i])[0]
        out.append([(int(j), int(D[i, j])) for j in js])
    return out


def _move_delta(power, n_pow, size_a, w_a, link_a, size_b, w_b, link_b):
    # cost change of moving one module from cluster a (its current home)
    # to cluster b; w_* are ordered intra-cluster masses, link_* the
    # unordered mass between the module and each cluster's other members
    da = (w_a - 2 * link_a) * (size_a - 1) ** power - w_a * size_a**power
    db = (w_b + 2 * link_b) * (size_b + 1) ** power - w_b * size_b**power
    return da + db + 2 * (link_a - link_b) * n_pow


def compute_bid(dsm: DSM, assignment: ClusterAssignment, module: int,
                target_cluster: int, power: int) -> Bid:
    """Cost delta of relocating `module` into `target_cluster`.

    Relocating a module re-prices every pair it participates in and also
    re-prices the pairs wholly inside the shrinking and growing clusters,
    whose size factor changes. Moving to the current cluster is a no-op.
    """
    if module in assignment.bus_set:
        raise ValueError(f"module {module} is a vertical bus and cannot relocate")
    if not 0 <= target_cluster < assignment.k:
        raise ValueError(f"target cluster {target_cluster} out of range (k={assignment.k})")
    a = assignment.cluster_of[module]
    if target_cluster == a:
        return Bid(module, target_cluster, 0)

    D_row = (dsm.cells[module].astype(np.int64) + dsm.cells[:, module])
    link = [0] * assignment.k
    members = {c: [] for c in range(assignment.k)}
    for m, c in assignment.cluster_of.items():
        members[c].append(m)
        if m != module:
            link[c] += int(D_row[m])

    def intra_mass(c):
        idx = members[c]
        if len(idx) < 2:
            return 0
        sub = dsm.cells[np.ix_(idx, idx)].astype(np.int64)
        return int(sub.sum()) * 2  # ordered pairs: each edge counted in d_ij and d_ji

    sizes = assignment.sizes()
    delta = _move_delta(
        power, dsm.n**power,
        sizes[a], intra_mass(a), link[a],
        sizes[target_cluster], intra_mass(target_cluster), link[target_cluster],
    )
    return Bid(module, target_cluster, delta)


def cluster(dsm: DSM, params: ClusteringParams, on_accept=None) -> ClusterModel:
    """Cluster a DSM by restarted stochastic bid search.

    Each restart: identify vertical buses, scatter the remaining modules
    uniformly over k clusters, then repeatedly propose a uniformly random
    non-bus module, collect bids from all k clusters, and apply the most
    negative one (ties: lowest cluster id) when it strictly reduces total
    cost. A restart ends after `stability_window` consecutive rejected
    proposals (default 2n). The minimum-cost restart wins; ties keep the
    lowest restart index.

    Restarts draw from independent streams derived from (seed, restart
    index), so the result is identical regardless of execution order.
    `on_accept(restart, assignment, total_cost)` is invoked after every
    accepted bid (test instrumentation).
    """
    n = dsm.n
    if n < 1:
        raise ValueError("cannot cluster an empty DSM")
    k = check_cluster_count(params.k, n)
    power = params.power
    n_pow = n**power
    stability = params.stability_window if params.stability_window is not None else 2 * n

    buses = identify_vertical_buses(dsm, params.bus_threshold)
    free = [i for i in range(n) if i not in buses]
    nbrs = _neighbor_lists(dsm)

    best: tuple[int, dict[int, int]] | None = None
    for r in range(params.restarts):
        rng = random.Random(f"{params.seed}:{r}")
        cluster_of = {m: rng.randrange(k) for m in free}
        assignment = ClusterAssignment(dict(cluster_of), buses, k)
        total = clustered_cost(dsm, assignment, power)

        labels = [-1] * n
        for m, c in cluster_of.items():
            labels[m] = c
        sizes = list(assignment.sizes())
        W = [0] * k  # ordered intra-cluster mass per cluster
        for m in free:
            for j, d in nbrs[m]:
                if labels[j] == labels[m]:
                    W[labels[m]] += d

        rejected = 0
        while free and total > 0 and rejected < stability:
            m = free[rng.randrange(len(free))]
            a = labels[m]
            link = [0] * k
            for j, d in nbrs[m]:
                c = labels[j]
                if c >= 0:
                    link[c] += d

            term_a = ((W[a] - 2 * link[a]) * (sizes[a] - 1) ** power
                      - W[a] * sizes[a] ** power + 2 * link[a] * n_pow)
            best_delta = 0
            best_c = -1
            for c in range(k):
                if c == a:
                    continue
                delta = (term_a
                         + (W[c] + 2 * link[c]) * (sizes[c] + 1) ** power
                         - W[c] * sizes[c] ** power
                         - 2 * link[c] * n_pow)
                if delta < best_delta:
                    best_delta = delta
                    best_c = c

            if best_c < 0:
                rejected += 1
                continue
            W[a] -= 2 * link[a]
            W[best_c] += 2 * link[best_c]
            sizes[a] -= 1
            sizes[best_c] += 1
            labels[m] = best_c
            cluster_of[m] = best_c
            total += best_delta
            rejected = 0
            if on_accept is not None:
                on_accept(r, ClusterAssignment(dict(cluster_of), buses, k), total)

        if best is None or total < best[0]:
            best = (total, dict(cluster_of))

    final = ClusterAssignment(best[1], buses, k)
    final_cost = clustered_cost(dsm, final, power)
    assert final_cost == best[0], "incremental cost drifted from recomputation"
    return ClusterModel(
        assignment=final,
        sizes=final.sizes(),
        total_cost=final_cost,
        params=params,
        seed_used=params.seed,
        n_modules=n,
    )


class DependencyClustering(ClusterMixin, BaseEstimator):
    """Scikit-learn style wrapper around :func:`cluster`.

    fit(X) takes a square binary dependency matrix (or a :class:`DSM`)
    and exposes the usual estimator surface: ``labels_`` holds cluster
    ids with vertical buses labeled -1, ``fit_predict`` and
    ``get_params``/``set_params`` behave as in any sklearn clusterer.

    Parameters
    ----------
    n_clusters : target cluster count (clamped to n when n is smaller).
    power : cluster-size exponent of the cost law.
    bus_threshold : column fan-in fraction above which a module is a
        vertical bus (1.0 disables buses).
    restarts : independent search restarts; the cheapest model wins.
    stability_window : consecutive rejected proposals that end a restart
        (None means 2n).
    random_state : seed of the deterministic proposal streams.
    """

    def __init__(self, n_clusters=9, power=2, bus_threshold=0.25,
                 restarts=10, stability_window=None, random_state=0):
        self.n_clusters = n_clusters
        self.power = power
        self.bus_threshold = bus_threshold
        self.restarts = restarts
        self.stability_window = stability_window
        self.random_state = random_state

    def fit(self, X, y=None):
        dsm = X if isinstance(X, DSM) else DSM.from_matrix(X)
        params = ClusteringParams(
            k=self.n_clusters,
            power=self.power,
            bus_threshold=self.bus_threshold,
            seed=self.random_state,
            restarts=self.restarts,
            stability_window=self.stability_window,
        )
        model = cluster(dsm, params)
        labels = np.full(dsm.n, -1, dtype=int)
        for m, c in model.assignment.cluster_of.items():
            labels[m] = c
        self.model_ = model
        self.labels_ = labels
        self.bus_indices_ = np.array(sorted(model.bus_set), dtype=int)
        self.cluster_sizes_ = np.array(model.sizes, dtype=int)
        self.cost_ = model.total_cost
        self.n_features_in_ = dsm.n
        return self
