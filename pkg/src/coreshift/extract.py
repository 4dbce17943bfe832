"""Dependency graph sources: edge-list files and lexical import scans.

The edge-list TSV is the interchange format: one `source<TAB>target` line
per dependency, `#` comments allowed. A self-edge line (`m<TAB>m`) is the
canonical encoding of an isolated module -- loading keeps the endpoint
and drops the edge, so serializing and reloading loses nothing.

The scanner is a deliberately lexical stand-in for call-graph analysis:
one module per owned file, one edge per import line that resolves to
another scanned module. Precision is whatever the language's import
syntax exposes; unresolved targets (external libraries) are only tallied.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path, PurePosixPath

from .dsm import DependencyGraph, ModuleId
from .errors import EdgeListFormatError, ExtractError


@dataclass(frozen=True)
class LanguageProfile:
    """How one language maps files to modules and lines to imports.

    import_patterns are line-anchored regexes whose first group captures
    the imported module name. roots are repository path prefixes holding
    source code; paths outside every root are not modules.
    """

    name: str
    extensions: tuple[str, ...]
    import_patterns: tuple[str, ...]
    roots: tuple[str, ...] = ("src",)

    def __post_init__(self):
        if not self.extensions:
            raise ValueError("a language profile needs at least one extension")

    def owns(self, path: str) -> bool:
        return PurePosixPath(path.replace("\\", "/")).suffix in self.extensions

    def compiled_patterns(self):
        return [re.compile(p) for p in self.import_patterns]


JAVA_PROFILE = LanguageProfile(
    name="java",
    extensions=(".java",),
    import_patterns=(r"^\s*import\s+(?:static\s+)?([A-Za-z_][\w.]*)\s*;",),
    roots=("src/main/java", "src"),
)

BUILTIN_PROFILES = {JAVA_PROFILE.name: JAVA_PROFILE}


@dataclass(frozen=True)
class ScanReport:
    """Counters from one source-tree scan."""

    files_scanned: int
    modules: int
    edges: int
    unresolved_imports: int
    skipped_files: tuple[str, ...] = ()

    def to_text(self) -> str:
        lines = [
            f"files scanned: {self.files_scanned}",
            f"modules: {self.modules}",
            f"edges: {self.edges}",
            f"unresolved imports: {self.unresolved_imports}",
        ]
        for path in self.skipped_files:
            lines.append(f"skipped (unreadable): {path}")
        return "\n".join(lines) + "\n"


def _relpath_to_module(rel: str) -> ModuleId:
    # separators to dots, extension stripped
    p = PurePosixPath(rel.replace("\\", "/"))
    stem = p.with_suffix("")
    return ".".join(stem.parts)


def path_to_module(path: str, profile: LanguageProfile) -> ModuleId | None:
    """Canonical module id of a repository path, or None.

    None for extensions the profile does not own and for paths outside
    every configured source root. Longest root wins so nested roots
    (src/main/java under src) resolve correctly.
    """
    norm = path.replace("\\", "/")
    if not profile.owns(norm):
        return None
    for root in sorted(profile.roots, key=len, reverse=True):
        if norm.startswith(root + "/"):
            rel = norm[len(root) + 1:]
            return _relpath_to_module(rel) if rel else None
    return None


def load_edge_list(data: bytes) -> DependencyGraph:
    """Parse edge-list TSV into a graph with lexicographic module order."""
    edges: list[tuple[str, str]] = []
    modules: set[str] = set()
    text = data.decode("utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise EdgeListFormatError(
                f"line {lineno}: expected source<TAB>target (exactly one tab), "
                f"got {len(parts)} field(s)"
            )
        src, dst = parts[0].strip(), parts[1].strip()
        if not src or not dst:
            raise EdgeListFormatError(f"line {lineno}: empty module id")
        modules.add(src)
        modules.add(dst)
        edges.append((src, dst))
    return DependencyGraph(sorted(modules), edges)


def serialize_edge_list(graph: DependencyGraph) -> str:
    """Canonical TSV form: sorted edges, isolated modules as self-edge lines.

    Loading the output reproduces the graph exactly, and re-serializing
    it is byte-stable (a fixed point).
    """
    touched = {m for e in graph.edges for m in e}
    lines = [f"{s}\t{t}" for s, t in graph.edges]
    lines.extend(f"{m}\t{m}" for m in graph.modules if m not in touched)
    return "".join(line + "\n" for line in sorted(lines))


def scan_imports(root, profile: LanguageProfile) -> tuple[DependencyGraph, ScanReport]:
    """Scan a source tree into a dependency graph plus a scan report.

    One module per owned file under `root`; paths are taken relative to
    `root` with a matching profile root prefix stripped when present.
    Import lines resolving to another scanned module become edges;
    everything else counts as unresolved. Unreadable files are skipped
    and recorded.
    """
    base = Path(root)
    if not base.is_dir():
        raise ExtractError(f"source root {base} is not a directory")
    owned = sorted(
        p for p in base.rglob("*")
        if p.is_file() and p.suffix in profile.extensions
    )

    module_of: dict[Path, ModuleId] = {}
    claimed: dict[ModuleId, Path] = {}
    for path in owned:
        rel = path.relative_to(base).as_posix()
        for r in sorted(profile.roots, key=len, reverse=True):
            if rel.startswith(r + "/"):
                rel = rel[len(r) + 1:]
                break
        mid = _relpath_to_module(rel)
        if mid in claimed:
            raise ExtractError(
                f"module id {mid!r} claimed by both {claimed[mid]} and {path}"
            )
        claimed[mid] = path
        module_of[path] = mid

    patterns = profile.compiled_patterns()
    edges: list[tuple[ModuleId, ModuleId]] = []
    unresolved = 0
    skipped: list[str] = []
    for path in owned:
        try:
            text = path.read_text(encoding="utf-8", errors="replace")
        except OSError:
            skipped.append(path.relative_to(base).as_posix())
            continue
        src = module_of[path]
        for line in text.splitlines():
            for pat in patterns:
                m = pat.match(line)
                if not m:
                    continue
                target = m.group(1)
                if target in claimed:
                    edges.append((src, target))  # self-imports dropped by the graph
                else:
                    unresolved += 1
                break

    graph = DependencyGraph(sorted(claimed), sorted(set(edges)))
    report = ScanReport(
        files_scanned=len(owned),
        modules=graph.n,
        edges=len(graph.edges),
        unresolved_imports=unresolved,
        skipped_files=tuple(skipped),
    )
    return graph, report
