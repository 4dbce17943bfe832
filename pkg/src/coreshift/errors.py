"""Exception types raised on malformed inputs and bad configuration."""


class CoreshiftError(Exception):
    """Base class for all input and configuration errors raised by coreshift."""


class EdgeListFormatError(CoreshiftError):
    """A dependency edge-list line is not `source<TAB>target`."""


class GitLogFormatError(CoreshiftError):
    """A git-log record violates the 0x1E/0x1F record format."""


class TouchTsvFormatError(CoreshiftError):
    """A touch-TSV line is not `timestamp<TAB>author<TAB>path`."""


class HistoryError(CoreshiftError):
    """The commit history is unusable (e.g. empty)."""


class ExtractError(CoreshiftError):
    """Source-tree scanning could not produce a consistent module set."""


class ConfigError(CoreshiftError):
    """A configuration file or flag combination is invalid."""
