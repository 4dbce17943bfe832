"""Regenerate the bundled fixture project (deps.tsv + scripted histories).

The dependency graph is three cliques -- a 4-module core, a 3-module
service layer, a 3-module util layer -- joined by two mutual bridge
pairs. Under the cost law the planted split is the exhaustive optimum,
and the core-ness weights come out core=3, service=2, util=1. The three
histories walk developers through those weights to reproduce the three
shift archetypes:

  shift_away:  dingo drops from core (3) to service (2) to util (1) to
               docs (0) while pat only ever edits docs -> averages
               1.5, 1.0, 0.5, 0.0
  oscillatory: osa bounces core/util/core/util/core, hits a docs-only
               window, then lands on service -> 3,1,3,1,3,0,2
  steady:      ced mixes core+service (2.5), dips to service-only (2.0),
               then holds the mix -> 2.5,2.0,2.5,2.5,2.5,2.5

Run from the repository root:  python3 tests/fixtures/make_fixtures.py
"""

from datetime import datetime, timezone
from pathlib import Path

HERE = Path(__file__).parent
BASE = 1609459200  # 2021-01-01T00:00:00Z
DAY = 86400
HOUR = 3600

CORE = ["app.core.Engine", "app.core.Kernel", "app.core.Model", "app.core.Store"]
MID = ["app.service.Api", "app.service.Jobs", "app.service.Sync"]
OUTER = ["app.util.Cfg", "app.util.Fmt", "app.util.Log"]

PATHS = {m: "src/" + m.replace(".", "/") + ".java" for m in CORE + MID + OUTER}
DOCS = ["README.md", "docs/notes.html"]


def edges():
    out = []
    for group in (CORE, MID, OUTER):
        for a in group:
            for b in group:
                if a != b:
                    out.append((a, b))
    out.append(("app.core.Engine", "app.service.Api"))
    out.append(("app.service.Api", "app.core.Engine"))
    out.append(("app.service.Sync", "app.util.Log"))
    out.append(("app.util.Log", "app.service.Sync"))
    return out


def iso(ts):
    return datetime.fromtimestamp(ts, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def batch_ts(i):
    # batch 0 anchors the span; later batches sit 2h into their window so
    # the span overshoots an exact interval multiple
    return BASE + i * 30 * DAY + (2 * HOUR if i else 0)


def tsv_rows(schedule):
    rows = []
    for i, author_files in enumerate(schedule):
        ts = batch_ts(i)
        for author, files in author_files.items():
            for f in files:
                rows.append(f"{iso(ts)}\t{author}\t{f}")
    return "\n".join(rows) + "\n"


def git_log(schedule):
    chunks = []
    commit_no = 0
    for i, author_files in enumerate(schedule):
        ts = batch_ts(i)
        for author, files in author_files.items():
            commit_no += 1
            header = "\x1f".join([f"{commit_no:040x}", author, iso(ts)])
            chunks.append("\x1e" + header + "\n\n" + "".join(f + "\n" for f in files))
    return "".join(chunks)


def main():
    dep_lines = sorted(f"{s}\t{t}" for s, t in edges())
    (HERE / "deps.tsv").write_text("".join(ln + "\n" for ln in dep_lines), encoding="utf-8")

    core_p = [PATHS[m] for m in CORE[:3]]
    mid_p = [PATHS[m] for m in MID]
    outer_p = [PATHS[m] for m in OUTER]

    shift_away = [
        {"dingo": core_p, "pat": [DOCS[0]]},
        {"dingo": mid_p, "pat": [DOCS[0]]},
        {"dingo": outer_p, "pat": [DOCS[0]]},
        {"dingo": [DOCS[1]], "pat": [DOCS[0]]},
    ]
    oscillatory = [
        {"osa": core_p},
        {"osa": outer_p},
        {"osa": core_p},
        {"osa": outer_p},
        {"osa": core_p},
        {"osa": [DOCS[0]]},
        {"osa": mid_p},
    ]
    steady = [
        {"ced": core_p + mid_p},
        {"ced": mid_p},
        {"ced": core_p + mid_p},
        {"ced": core_p + mid_p},
        {"ced": core_p + mid_p},
        {"ced": core_p + mid_p},
    ]

    (HERE / "history_shift_away.tsv").write_text(tsv_rows(shift_away), encoding="utf-8")
    (HERE / "history_oscillatory.tsv").write_text(tsv_rows(oscillatory), encoding="utf-8")
    (HERE / "history_steady.tsv").write_text(tsv_rows(steady), encoding="utf-8")
    (HERE / "history_shift_away.log").write_bytes(git_log(shift_away).encode("utf-8"))
    print("fixtures written to", HERE)


if __name__ == "__main__":
    main()
