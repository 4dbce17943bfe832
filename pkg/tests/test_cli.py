import json
from pathlib import Path

import pytest

from coreshift.cli import main, parse_duration

FIXTURES = Path(__file__).parent / "fixtures"


def analyze_args(out_dir, history="history_shift_away.tsv", extra=()):
    return [
        "analyze",
        "--deps", str(FIXTURES / "deps.tsv"),
        "--touch-tsv", str(FIXTURES / history),
        "--out-dir", str(out_dir),
        "--clusters", "3",
        "--bus-threshold", "0.4",
        "--seed", "42",
        "--restarts", "10",
        "--interval", "30d",
        *extra,
    ]


def test_parse_duration_units():
    assert parse_duration("30d") == 30 * 86400
    assert parse_duration("12h") == 12 * 3600
    assert parse_duration("900") == 900
    assert parse_duration("2w") == 14 * 86400
    with pytest.raises(Exception):
        parse_duration("30x")


def test_analyze_writes_artifacts_and_exits_zero(tmp_path, capsys):
    code = main(analyze_args(tmp_path / "out"))
    assert code == 0
    out = tmp_path / "out"
    names = {p.name for p in out.iterdir()}
    assert {"report.json", "series.csv", "scan.txt",
            "window_0.dot", "window_1.dot", "window_2.dot", "window_3.dot"} <= names
    doc = json.loads((out / "report.json").read_text())
    assert doc["shift"]["label"] == "shift_away"
    assert doc["shift"]["touched_zero"] is True
    assert "shift_away" in capsys.readouterr().out


def test_analyze_fail_on_stsc_exits_three(tmp_path):
    code = main(analyze_args(tmp_path / "out", extra=["--fail-on-stsc"]))
    assert code == 3
    assert (tmp_path / "out" / "report.json").exists()  # artifacts written first


def test_analyze_steady_fixture_not_flagged(tmp_path):
    code = main(analyze_args(tmp_path / "out", history="history_steady.tsv",
                             extra=["--fail-on-stsc"]))
    assert code == 0
    doc = json.loads((tmp_path / "out" / "report.json").read_text())
    assert doc["shift"]["label"] == "steady"


def test_analyze_git_log_input(tmp_path):
    code = main([
        "analyze",
        "--deps", str(FIXTURES / "deps.tsv"),
        "--git-log", str(FIXTURES / "history_shift_away.log"),
        "--out-dir", str(tmp_path / "out"),
        "--clusters", "3", "--bus-threshold", "0.4",
        "--seed", "42", "--restarts", "10", "--interval", "30d",
    ])
    assert code == 0
    doc = json.loads((tmp_path / "out" / "report.json").read_text())
    assert doc["shift"]["label"] == "shift_away"


def test_missing_log_file_exits_two(tmp_path, capsys):
    code = main(analyze_args(tmp_path / "out", history="no_such_file.tsv"))
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_missing_history_flag_exits_two(tmp_path, capsys):
    code = main([
        "analyze", "--deps", str(FIXTURES / "deps.tsv"),
        "--out-dir", str(tmp_path / "out"),
    ])
    assert code == 2


def test_malformed_deps_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.tsv"
    bad.write_text("not a tab line\n")
    code = main([
        "analyze", "--deps", str(bad),
        "--touch-tsv", str(FIXTURES / "history_shift_away.tsv"),
        "--out-dir", str(tmp_path / "out"),
    ])
    assert code == 2
    assert "line 1" in capsys.readouterr().err


def test_config_file_supplies_values_and_flags_override(tmp_path):
    conf = tmp_path / "coreshift.conf"
    conf.write_text(
        f"deps = {FIXTURES / 'deps.tsv'}\n"
        f"touch_tsv = {FIXTURES / 'history_shift_away.tsv'}\n"
        f"out_dir = {tmp_path / 'from_file'}\n"
        "clusters = 3\n"
        "bus_threshold = 0.4\n"
        "seed = 42\n"
        "restarts = 10\n"
        "interval = 30d\n"
        "project = confproj\n"
    )
    assert main(["analyze", "--config", str(conf)]) == 0
    doc = json.loads((tmp_path / "from_file" / "report.json").read_text())
    assert doc["project"] == "confproj"
    assert doc["parameters"]["clusters"] == 3

    assert main(["analyze", "--config", str(conf),
                 "--out-dir", str(tmp_path / "cli_wins"),
                 "--project", "cliproj"]) == 0
    doc2 = json.loads((tmp_path / "cli_wins" / "report.json").read_text())
    assert doc2["project"] == "cliproj"


def test_extract_then_analyze_round_trip(tmp_path, capsys):
    src = tmp_path / "repo" / "src"
    files = {
        "a/Core.java": "import a.Base;\nimport a.Util;\n",
        "a/Base.java": "import a.Util;\n",
        "a/Util.java": "",
        "b/Edge.java": "import a.Core;\nimport java.util.List;\n",
    }
    for rel, content in files.items():
        p = src / rel
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(content)
    deps = tmp_path / "deps.tsv"
    assert main(["extract", "--src", str(tmp_path / "repo"),
                 "--profile", "java", "--out", str(deps)]) == 0
    out = capsys.readouterr().out
    assert "files scanned: 4" in out
    assert "unresolved imports: 1" in out  # java.util.List
    text = deps.read_text()
    assert "a.Core\ta.Base" in text

    history = tmp_path / "touch.tsv"
    history.write_text(
        "2021-01-01T00:00:00Z\tdev\tsrc/a/Core.java\n"
        "2021-02-01T01:00:00Z\tdev\tsrc/a/Util.java\n"
        "2021-03-01T01:00:00Z\tdev\tREADME.md\n"
    )
    assert main(["analyze", "--deps", str(deps), "--touch-tsv", str(history),
                 "--out-dir", str(tmp_path / "out"), "--clusters", "2",
                 "--interval", "30d", "--bus-threshold", "1.0"]) == 0
    doc = json.loads((tmp_path / "out" / "report.json").read_text())
    assert doc["stats"]["modules"] == 4


def test_default_interval_splits_span_into_requested_windows(tmp_path):
    code = main([
        "analyze", "--deps", str(FIXTURES / "deps.tsv"),
        "--touch-tsv", str(FIXTURES / "history_shift_away.tsv"),
        "--out-dir", str(tmp_path / "out"),
        "--clusters", "3", "--bus-threshold", "0.4", "--windows", "5",
    ])
    assert code == 0
    doc = json.loads((tmp_path / "out" / "report.json").read_text())
    assert len(doc["windows"]) == 5


def test_window_mode_and_touch_weighting_flags(tmp_path):
    code = main(analyze_args(
        tmp_path / "out",
        extra=["--window-mode", "cumulative", "--binary-touches", "--recluster-per-window"]))
    assert code == 0
    doc = json.loads((tmp_path / "out" / "report.json").read_text())
    assert doc["parameters"]["window_mode"] == "cumulative"
    assert doc["parameters"]["binary_touches"] is True
    # cumulative windows all share the first commit's start
    starts = {w["start"] for w in doc["windows"]}
    assert len(starts) == 1


def test_runs_are_byte_identical(tmp_path):
    main(analyze_args(tmp_path / "r1"))
    main(analyze_args(tmp_path / "r2"))
    for name in ["report.json", "series.csv", "scan.txt"] + [
        f"window_{i}.dot" for i in range(4)
    ]:
        assert (tmp_path / "r1" / name).read_bytes() == (tmp_path / "r2" / name).read_bytes()


def test_custom_profile_from_config(tmp_path):
    conf = tmp_path / "conf"
    conf.write_text(
        "profile.py.extensions = .py\n"
        r"profile.py.import_patterns = ^import\s+([\w.]+)" + "\n"
        "profile.py.roots = lib\n"
    )
    src = tmp_path / "lib"
    (src / "pkg").mkdir(parents=True)
    (src / "pkg" / "one.py").write_text("import pkg.two\n")
    (src / "pkg" / "two.py").write_text("")
    deps = tmp_path / "deps.tsv"
    assert main(["extract", "--src", str(src), "--profile", "py",
                 "--config", str(conf), "--out", str(deps)]) == 0
    assert "pkg.one\tpkg.two" in deps.read_text()


def test_unknown_profile_exits_two(tmp_path, capsys):
    code = main(["extract", "--src", str(tmp_path), "--profile", "cobol",
                 "--out", str(tmp_path / "deps.tsv")])
    assert code == 2
    assert "unknown language profile" in capsys.readouterr().err
