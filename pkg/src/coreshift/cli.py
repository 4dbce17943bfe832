"""Command-line interface: `coreshift extract` and `coreshift analyze`.

Exit codes: 0 success, 2 bad input or configuration, 3 when the analysis
raises the structure-clash flag and --fail-on-stsc was given.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .errors import ConfigError, CoreshiftError
from .extract import scan_imports, serialize_edge_list
from .pipeline import (
    AnalyzeConfig,
    parse_config_file,
    profiles_from_config,
    resolve_profile,
    run_pipeline,
)

_DURATION_UNITS = {"s": 1, "m": 60, "h": 3600, "d": 86400, "w": 7 * 86400}


def parse_duration(text: str) -> int:
    """`30d`-style duration to seconds; a bare integer means seconds."""
    m = re.fullmatch(r"\s*(\d+)\s*([smhdw]?)\s*", text)
    if not m or int(m.group(1)) == 0:
        raise ConfigError(f"bad duration {text!r} (use e.g. 30d, 12h, 900s)")
    return int(m.group(1)) * _DURATION_UNITS.get(m.group(2), 1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coreshift",
        description="Measure a project's socio-technical core-periphery drift",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ext = sub.add_parser("extract", help="scan a source tree into a dependency edge list")
    ext.add_argument("--src", required=True, help="source tree to scan")
    ext.add_argument("--profile", default=None, help="language profile name (default java)")
    ext.add_argument("--out", required=True, help="output edge-list TSV path")
    ext.add_argument("--config", default=None, help="key=value config file")

    ana = sub.add_parser("analyze", help="run the core-periphery shift analysis")
    ana.add_argument("--deps", default=None, help="dependency edge-list TSV")
    src = ana.add_mutually_exclusive_group()
    src.add_argument("--git-log", default=None, help="git log in the 0x1E/0x1F record format")
    src.add_argument("--touch-tsv", default=None, help="timestamp/author/path TSV history")
    ana.add_argument("--out-dir", default=None, help="directory for report artifacts")
    ana.add_argument("--project", default=None, help="project name for the report")
    ana.add_argument("--profile", default=None, help="language profile for path mapping")
    ana.add_argument("--config", default=None, help="key=value config file")
    ana.add_argument("--clusters", type=int, default=None, help="cluster count k (default 9)")
    ana.add_argument("--lambda", dest="power", type=int, default=None,
                     help="cluster-size exponent (default 2)")
    ana.add_argument("--bus-threshold", type=float, default=None,
                     help="vertical-bus fan-in fraction (default 0.25)")
    ana.add_argument("--seed", type=int, default=None, help="clustering seed (default 42)")
    ana.add_argument("--restarts", type=int, default=None, help="search restarts (default 10)")
    ana.add_argument("--interval", default=None,
                     help="window length, e.g. 30d (default: span / --windows)")
    ana.add_argument("--windows", type=int, default=None,
                     help="window count when --interval is absent (default 10)")
    ana.add_argument("--window-mode", choices=["disjoint", "cumulative"], default=None)
    ana.add_argument("--binary-touches", action="store_true", default=None,
                     help="weight by cluster membership instead of touch counts")
    ana.add_argument("--recluster-per-window", action="store_true", default=None,
                     help="cluster each window independently")
    ana.add_argument("--slope-eps", type=float, default=None,
                     help="normalized slope threshold (default 0.05)")
    ana.add_argument("--amp-eps", type=float, default=None,
                     help="reversal amplitude as fraction of k (default 0.10)")
    ana.add_argument("--min-points", type=int, default=None,
                     help="measured points needed to classify (default 3)")
    ana.add_argument("--fail-on-stsc", action="store_true", default=None,
                     help="exit 3 when the structure-clash flag is raised")
    return parser


def _pick(cli_value, file_values: dict, key: str, default, convert=None):
    if cli_value is not None:
        return cli_value
    if key in file_values:
        raw = file_values[key]
        return convert(raw) if convert else raw
    return default


def _to_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"bad boolean value {raw!r}")


def _analyze_config(args, file_values: dict) -> AnalyzeConfig:
    deps = _pick(args.deps, file_values, "deps", None)
    out_dir = _pick(args.out_dir, file_values, "out_dir", None)
    git_log = _pick(args.git_log, file_values, "git_log", None)
    touch_tsv = _pick(args.touch_tsv, file_values, "touch_tsv", None)
    if deps is None:
        raise ConfigError("--deps is required (flag or config file)")
    if out_dir is None:
        raise ConfigError("--out-dir is required (flag or config file)")
    if (git_log is None) == (touch_tsv is None):
        raise ConfigError("exactly one of --git-log and --touch-tsv is required")

    interval_raw = _pick(args.interval, file_values, "interval", None)
    return AnalyzeConfig(
        deps=Path(deps),
        out_dir=Path(out_dir),
        git_log=Path(git_log) if git_log else None,
        touch_tsv=Path(touch_tsv) if touch_tsv else None,
        project=_pick(args.project, file_values, "project", None),
        profile=_pick(args.profile, file_values, "profile", "java"),
        clusters=_pick(args.clusters, file_values, "clusters", 9, int),
        power=_pick(args.power, file_values, "lambda", 2, int),
        bus_threshold=_pick(args.bus_threshold, file_values, "bus_threshold", 0.25, float),
        seed=_pick(args.seed, file_values, "seed", 42, int),
        restarts=_pick(args.restarts, file_values, "restarts", 10, int),
        interval=parse_duration(interval_raw) if interval_raw is not None else None,
        windows=_pick(args.windows, file_values, "windows", 10, int),
        window_mode=_pick(args.window_mode, file_values, "window_mode", "disjoint"),
        binary_touches=_pick(args.binary_touches, file_values, "binary_touches", False, _to_bool),
        recluster_per_window=_pick(
            args.recluster_per_window, file_values, "recluster_per_window", False, _to_bool),
        slope_eps=_pick(args.slope_eps, file_values, "slope_eps", 0.05, float),
        amp_eps=_pick(args.amp_eps, file_values, "amp_eps", 0.10, float),
        min_points=_pick(args.min_points, file_values, "min_points", 3, int),
        fail_on_stsc=_pick(args.fail_on_stsc, file_values, "fail_on_stsc", False, _to_bool),
        extra_profiles=profiles_from_config(file_values),
    )


def _cmd_extract(args) -> int:
    file_values = parse_config_file(args.config) if args.config else {}
    extra = profiles_from_config(file_values)
    name = _pick(args.profile, file_values, "profile", "java")
    profile = resolve_profile(name, extra)
    graph, scan = scan_imports(args.src, profile)
    Path(args.out).write_text(serialize_edge_list(graph), encoding="utf-8")
    sys.stdout.write(scan.to_text())
    return 0


def _cmd_analyze(args) -> int:
    file_values = parse_config_file(args.config) if args.config else {}
    config = _analyze_config(args, file_values)
    report = run_pipeline(config)
    sys.stdout.write(
        f"{report.project}: {report.shift.label}"
        f" (slope {report.shift.slope:.4f}, reversals {report.shift.reversals},"
        f" touched_zero {str(report.shift.touched_zero).lower()})\n"
    )
    if report.shift.stsc_flag:
        sys.stdout.write("core-periphery structure clash detected\n")
        if config.fail_on_stsc:
            return 3
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "extract":
            return _cmd_extract(args)
        return _cmd_analyze(args)
    except CoreshiftError as exc:
        print(f"coreshift: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"coreshift: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
