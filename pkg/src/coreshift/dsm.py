"""Dependency structure matrix: construction and vertical-bus identification.

A DSM is a square binary matrix over the modules of a dependency graph:
cell (i, j) is 1 exactly when module i depends on module j. Modules whose
column fan-in exceeds a threshold fraction of the matrix size are
*vertical buses* -- shared infrastructure called from everywhere, treated
as living outside every cluster.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .validation import check_dependency_matrix

ModuleId = str


@dataclass(frozen=True)
class DependencyGraph:
    """Simple directed dependency graph over named modules.

    Construction normalizes the edge list: self-edges are dropped and
    duplicate edges collapsed (dependency strength is binary). Module ids
    must be unique and non-empty, and every edge endpoint must be a known
    module.
    """

    modules: tuple[ModuleId, ...]
    edges: tuple[tuple[ModuleId, ModuleId], ...]

    def __init__(self, modules, edges):
        mods = tuple(modules)
        seen = set()
        for m in mods:
            if not m:
                raise ValueError("module ids must be non-empty")
            if m in seen:
                raise ValueError(f"duplicate module id {m!r}")
            seen.add(m)
        normalized = []
        dedup = set()
        for src, dst in edges:
            if src not in seen or dst not in seen:
                raise ValueError(f"edge ({src!r}, {dst!r}) references unknown module")
            if src == dst or (src, dst) in dedup:
                continue
            dedup.add((src, dst))
            normalized.append((src, dst))
        object.__setattr__(self, "modules", mods)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def n(self) -> int:
        return len(self.modules)


@dataclass(frozen=True)
class DSM:
    """Binary dependency matrix with a fixed module order.

    cells[i, j] == 1 iff module i depends on module j; the diagonal is
    zero. `index_of` maps a module id to its row/column index.
    """

    modules: tuple[ModuleId, ...]
    cells: np.ndarray
    index_of: dict[ModuleId, int] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.modules)

    @classmethod
    def from_matrix(cls, X, modules=None) -> "DSM":
        """Build a DSM from a raw matrix, synthesizing ids when absent."""
        M = check_dependency_matrix(X)
        if modules is None:
            modules = tuple(f"m{i}" for i in range(M.shape[0]))
        else:
            modules = tuple(modules)
            if len(modules) != M.shape[0]:
                raise ValueError("module list length does not match matrix size")
        M.setflags(write=False)
        return cls(modules, M, {m: i for i, m in enumerate(modules)})

    def to_graph(self) -> DependencyGraph:
        """Recover the dependency graph encoded by the matrix."""
        rows, cols = np.nonzero(self.cells)
        edges = [(self.modules[i], self.modules[j]) for i, j in zip(rows, cols)]
        return DependencyGraph(self.modules, edges)


def build_dsm(graph: DependencyGraph) -> DSM:
    """Encode a dependency graph as a DSM, rows in graph.modules order."""
    n = graph.n
    cells = np.zeros((n, n), dtype=np.int8)
    index = {m: i for i, m in enumerate(graph.modules)}
    for src, dst in graph.edges:
        cells[index[src], index[dst]] = 1
    cells.setflags(write=False)
    return DSM(graph.modules, cells, index)


def identify_vertical_buses(dsm: DSM, bus_threshold: float) -> frozenset[int]:
    """Return indices whose column fan-in strictly exceeds threshold * n.

    Fan-in of column j counts the modules i != j with cells[i, j] == 1.
    At threshold 1.0 the set is always empty (fan-in <= n - 1 < n).
    """
    if not 0.0 <= bus_threshold <= 1.0:
        raise ValueError(f"bus threshold must be in [0, 1], got {bus_threshold}")
    fan_in = dsm.cells.sum(axis=0)
    return frozenset(int(j) for j in np.nonzero(fan_in > bus_threshold * dsm.n)[0])
