"""Commit-history parsing, time windowing, and developer-module touch tables.

Two input formats are supported. The git-log format is machine-oriented
and bit-exact: records separated by byte 0x1E; inside a record the fields
hash, author, ISO-8601-strict date separated by byte 0x1F; then a blank
line; then one file path per line until the next 0x1E (see README for the
`git log` invocation that produces it). The touch-TSV format is the
VCS-neutral interchange: `timestamp<TAB>author<TAB>path` per line, UTF-8,
`#` comment lines ignored.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timezone

from .errors import GitLogFormatError, HistoryError, TouchTsvFormatError

DISJOINT = "disjoint"
CUMULATIVE = "cumulative"

RECORD_SEP = 0x1E
FIELD_SEP = "\x1f"


@dataclass(frozen=True)
class CommitRecord:
    """One commit: author, UTC timestamp (seconds), touched paths."""

    timestamp: int
    author: str
    files: tuple[str, ...]

    def __post_init__(self):
        if self.timestamp <= 0:
            raise ValueError(f"timestamp must be positive, got {self.timestamp}")
        if not self.author:
            raise ValueError("author must be non-empty")
        if any(not f for f in self.files):
            raise ValueError("file paths must be non-empty")


@dataclass(frozen=True)
class TimeWindow:
    """Half-open interval [start, end) of UTC seconds.

    The final window of a series carries closed_end=True so that a last
    commit landing exactly on the span boundary (span an exact multiple
    of the interval) still belongs to exactly one window.
    """

    index: int
    start: int
    end: int
    mode: str
    closed_end: bool = False

    def __post_init__(self):
        if self.start >= self.end:
            raise ValueError("window start must precede end")
        if self.mode not in (DISJOINT, CUMULATIVE):
            raise ValueError(f"unknown window mode {self.mode!r}")

    def contains(self, ts: int) -> bool:
        return self.start <= ts < self.end or (self.closed_end and ts == self.end)


@dataclass(frozen=True)
class TouchTable:
    """Per-window activity: (author, module index) -> touch count, plus
    touches on paths outside the module set and the set of authors with
    any commit in the window (doc-only committers stay active)."""

    window: TimeWindow
    touches: dict[tuple[str, int], int]
    non_module_touches: dict[str, int]
    active_authors: frozenset[str]


def parse_iso8601(text: str) -> int:
    """ISO-8601 timestamp to UTC epoch seconds; naive times are UTC."""
    raw = text.strip()
    cleaned = raw[:-1] + "+00:00" if raw.endswith("Z") else raw
    dt = datetime.fromisoformat(cleaned)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return int(dt.timestamp())


def parse_git_log(data: bytes) -> list[CommitRecord]:
    """Parse the 0x1E/0x1F git-log stream into commit records, input order.

    Malformed records raise :class:`GitLogFormatError` naming the byte
    offset of the record and the offending field.
    """
    records: list[CommitRecord] = []
    offset = 0
    for chunk in data.split(bytes([RECORD_SEP])):
        try:
            if chunk.strip() == b"":
                continue
            try:
                text = chunk.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise GitLogFormatError(
                    f"git log record at byte offset {offset}: undecodable bytes ({exc})"
                ) from exc
            lines = text.split("\n")
            fields = lines[0].split(FIELD_SEP)
            if len(fields) != 3:
                raise GitLogFormatError(
                    f"git log record at byte offset {offset}: header has "
                    f"{len(fields)} field(s), expected hash/author/date"
                )
            commit_hash, author, date = (f.strip() for f in fields)
            if not commit_hash:
                raise GitLogFormatError(
                    f"git log record at byte offset {offset}: empty field 'hash'"
                )
            if not author:
                raise GitLogFormatError(
                    f"git log record at byte offset {offset}: empty field 'author'"
                )
            try:
                ts = parse_iso8601(date)
            except ValueError as exc:
                raise GitLogFormatError(
                    f"git log record at byte offset {offset}: bad field 'date' ({date!r})"
                ) from exc
            files = tuple(ln.strip() for ln in lines[1:] if ln.strip())
            records.append(CommitRecord(ts, author, files))
        finally:
            offset += len(chunk) + 1
    return records


def parse_touch_tsv(data: bytes) -> list[CommitRecord]:
    """Parse touch-TSV rows into commit records sorted by timestamp.

    Rows sharing (timestamp, author) merge into one record; file order
    within a record follows row order. Errors carry the 1-based line
    number.
    """
    grouped: dict[tuple[int, str], list[str]] = {}
    text = data.decode("utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise TouchTsvFormatError(
                f"line {lineno}: expected timestamp<TAB>author<TAB>path, "
                f"got {len(parts)} field(s)"
            )
        raw_ts, author, path = parts
        try:
            ts = parse_iso8601(raw_ts)
        except ValueError as exc:
            raise TouchTsvFormatError(
                f"line {lineno}: unparsable timestamp {raw_ts!r}"
            ) from exc
        author = author.strip()
        path = path.strip()
        if not author:
            raise TouchTsvFormatError(f"line {lineno}: empty author")
        if not path:
            raise TouchTsvFormatError(f"line {lineno}: empty path")
        grouped.setdefault((ts, author), []).append(path)
    records = [CommitRecord(ts, author, tuple(files))
               for (ts, author), files in grouped.items()]
    records.sort(key=lambda r: r.timestamp)
    return records


def make_windows(commits: list[CommitRecord], interval: int, mode: str = DISJOINT) -> list[TimeWindow]:
    """Cover [first_commit, last_commit] with equal windows.

    Window count is ceil(span / interval), at least one; the last end may
    overshoot the final commit to complete its interval. Disjoint windows
    tile the span; cumulative windows all start at the first commit and
    grow by one interval each.
    """
    if not commits:
        raise HistoryError("no history: commit list is empty")
    if interval <= 0:
        raise ValueError(f"interval must be positive, got {interval}")
    if mode not in (DISJOINT, CUMULATIVE):
        raise ValueError(f"unknown window mode {mode!r}")
    first = min(c.timestamp for c in commits)
    last = max(c.timestamp for c in commits)
    count = max(1, -((first - last) // interval))  # ceil(span / interval)
    windows = []
    for i in range(count):
        start = first if mode == CUMULATIVE else first + i * interval
        end = first + (i + 1) * interval
        windows.append(TimeWindow(i, start, end, mode, closed_end=(i == count - 1)))
    return windows


def build_touch_table(commits, window: TimeWindow, path_map) -> TouchTable:
    """Count (author, module) touches for commits inside one window.

    path_map maps a repository path to a module index or None; None paths
    count as non-module touches. Each (commit, file) pair increments one
    counter; a commit with no files still marks its author active.
    """
    touches: Counter = Counter()
    non_module: Counter = Counter()
    active = set()
    for commit in commits:
        if not window.contains(commit.timestamp):
            continue
        active.add(commit.author)
        for path in commit.files:
            idx = path_map(path)
            if idx is None:
                non_module[commit.author] += 1
            else:
                touches[(commit.author, idx)] += 1
    return TouchTable(window, dict(touches), dict(non_module), frozenset(active))
