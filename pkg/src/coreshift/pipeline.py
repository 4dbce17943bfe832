"""End-to-end analysis pipeline and plain-text configuration.

run_pipeline wires the stages together: load the dependency source,
build and cluster the DSM, window the commit history, compute the
series, classify the shift, and write report.json, series.csv, one DOT
snapshot per window, and scan.txt into the output directory.

The config file is flat `key = value` text with `#` comments. Keys match
the analyze flags with underscores (clusters, lambda, bus_threshold,
seed, restarts, interval, windows, window_mode, binary_touches,
recluster_per_window, slope_eps, amp_eps, fail_on_stsc, deps, git_log,
touch_tsv, out_dir, profile, project). Custom language profiles use
`profile.<name>.extensions`, `.roots`, `.import_patterns` (each a
comma-separated list). Command-line flags override file values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .clustering import ClusteringParams
from .coreperiphery import CpdmSeries, analyze_windows
from .dsm import build_dsm
from .errors import ConfigError, CoreshiftError
from .extract import BUILTIN_PROFILES, LanguageProfile, load_edge_list, path_to_module
from .history import make_windows, parse_git_log, parse_touch_tsv
from .report import HealthReport, emit_dot, emit_report_json, emit_series_csv
from .shift import ShiftThresholds, classify_shift

DEFAULT_WINDOWS = 10


@dataclass
class AnalyzeConfig:
    """Everything one analysis run needs; mirrors the CLI flags."""

    deps: Path
    out_dir: Path
    git_log: Path | None = None
    touch_tsv: Path | None = None
    project: str | None = None
    profile: str = "java"
    clusters: int = 9
    power: int = 2
    bus_threshold: float = 0.25
    seed: int = 42
    restarts: int = 10
    interval: int | None = None
    windows: int = DEFAULT_WINDOWS
    window_mode: str = "disjoint"
    binary_touches: bool = False
    recluster_per_window: bool = False
    slope_eps: float = 0.05
    amp_eps: float = 0.10
    min_points: int = 3
    fail_on_stsc: bool = False
    extra_profiles: dict[str, LanguageProfile] = field(default_factory=dict)


def parse_config_file(path) -> dict[str, str]:
    """Read `key = value` lines; later keys win."""
    values: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}: line {lineno}: expected key = value")
        key, _, value = stripped.partition("=")
        values[key.strip()] = value.strip()
    return values


def profiles_from_config(values: dict[str, str]) -> dict[str, LanguageProfile]:
    """Collect `profile.<name>.<field>` keys into language profiles."""
    raw: dict[str, dict[str, str]] = {}
    for key, value in values.items():
        if not key.startswith("profile."):
            continue
        parts = key.split(".")
        if len(parts) != 3:
            raise ConfigError(f"bad profile key {key!r} (want profile.<name>.<field>)")
        raw.setdefault(parts[1], {})[parts[2]] = value
    profiles = {}
    for name, fields in raw.items():
        if "extensions" not in fields:
            raise ConfigError(f"profile {name!r} needs an extensions list")
        profiles[name] = LanguageProfile(
            name=name,
            extensions=tuple(x.strip() for x in fields["extensions"].split(",") if x.strip()),
            import_patterns=tuple(
                x.strip() for x in fields.get("import_patterns", "").split(",") if x.strip()),
            roots=tuple(x.strip() for x in fields.get("roots", "src").split(",") if x.strip()),
        )
    return profiles


def resolve_profile(name: str, extra: dict[str, LanguageProfile]) -> LanguageProfile:
    if name in extra:
        return extra[name]
    if name in BUILTIN_PROFILES:
        return BUILTIN_PROFILES[name]
    known = sorted(set(BUILTIN_PROFILES) | set(extra))
    raise ConfigError(f"unknown language profile {name!r} (known: {', '.join(known)})")


def _read(path: Path, what: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CoreshiftError(f"cannot read {what} {path}: {exc}") from exc


def run_pipeline(config: AnalyzeConfig) -> HealthReport:
    """Run the full analysis and write artifacts into config.out_dir."""
    if (config.git_log is None) == (config.touch_tsv is None):
        raise ConfigError("exactly one of git_log and touch_tsv is required")

    graph = load_edge_list(_read(config.deps, "dependency edge list"))
    if graph.n == 0:
        raise CoreshiftError(f"dependency source {config.deps} contains no modules")
    dsm = build_dsm(graph)

    if config.git_log is not None:
        commits = parse_git_log(_read(config.git_log, "git log"))
        history_source = str(config.git_log)
    else:
        commits = parse_touch_tsv(_read(config.touch_tsv, "touch TSV"))
        history_source = str(config.touch_tsv)

    interval = config.interval
    if interval is None:
        if not commits:
            raise CoreshiftError(f"history {history_source} contains no commits")
        span = max(c.timestamp for c in commits) - min(c.timestamp for c in commits)
        interval = max(1, -(-span // max(1, config.windows)))
    windows = make_windows(commits, interval, config.window_mode)

    profile = resolve_profile(config.profile, config.extra_profiles)

    def path_map(path: str):
        mid = path_to_module(path, profile)
        return None if mid is None else dsm.index_of.get(mid)

    params = ClusteringParams(
        k=config.clusters, power=config.power, bus_threshold=config.bus_threshold,
        seed=config.seed, restarts=config.restarts)
    analyses = analyze_windows(
        dsm, commits, windows, params, path_map,
        binary_touches=config.binary_touches,
        recluster_per_window=config.recluster_per_window)
    series = CpdmSeries(tuple(a.point for a in analyses), tuple(windows))

    model = analyses[0].model
    ranking = analyses[0].ranking
    thresholds = ShiftThresholds(config.slope_eps, config.amp_eps, config.min_points)
    shift = classify_shift(series, model.k, thresholds)

    mapped_paths = sum(len(t.table.touches) for t in analyses)
    stats = {
        "modules": dsm.n,
        "edges": len(graph.edges),
        "bus_modules": len(model.bus_set),
        "commits": len(commits),
        "authors": len({c.author for c in commits}),
        "windows": len(windows),
        "window_interval_seconds": interval,
        "bus_touches": int(sum(int(a.pcm.bus_touches.sum()) for a in analyses)),
        "non_module_touches": int(sum(sum(t.table.non_module_touches.values()) for t in analyses)),
        "history_source": history_source,
    }
    parameters = {
        "clusters": config.clusters,
        "lambda": config.power,
        "bus_threshold": config.bus_threshold,
        "seed": config.seed,
        "restarts": config.restarts,
        "interval_seconds": interval,
        "window_mode": config.window_mode,
        "binary_touches": config.binary_touches,
        "recluster_per_window": config.recluster_per_window,
        "slope_eps": config.slope_eps,
        "amp_eps": config.amp_eps,
        "min_points": config.min_points,
        "profile": profile.name,
    }
    report = HealthReport(
        project=config.project or Path(config.deps).stem,
        parameters=parameters,
        clustered_cost=model.total_cost,
        cluster_sizes=model.sizes,
        bus_modules=tuple(sorted(dsm.modules[i] for i in model.bus_set)),
        coreness=ranking,
        points=series.points,
        windows=series.windows,
        shift=shift,
        stats=stats,
    )

    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(emit_report_json(report), encoding="utf-8")
    (out / "series.csv").write_text(emit_series_csv(series), encoding="utf-8")
    for a in analyses:
        dot = emit_dot(a.model, a.ranking, a.cdm, a.pcm, a.window)
        (out / f"window_{a.window.index}.dot").write_text(dot, encoding="utf-8")
    (out / "scan.txt").write_text(_stats_text(stats, mapped_paths), encoding="utf-8")
    return report


def _stats_text(stats: dict, mapped_paths: int) -> str:
    lines = [f"{key}: {stats[key]}" for key in sorted(stats)]
    lines.append(f"mapped_author_module_pairs: {mapped_paths}")
    return "\n".join(lines) + "\n"
