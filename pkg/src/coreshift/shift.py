"""Classification of a core-periphery series into shift patterns.

Three observed patterns: a steady shift away from the core, oscillatory
shifts away and towards it, and no perceptible shift. The rules
operationalize what is otherwise a visual judgement: values are
normalized by k, the trend is the least-squares slope over window
indices, and a reversal is a sign change between consecutive deltas that
are both large enough to matter. Oscillation takes precedence over the
slope test so a declining-peaks series still reads as oscillatory.
Windows without any activity are gaps, not measurements, and stay out of
both computations. A measured zero is flagged: it means a stretch where
nobody touched the code at all, only documentation or similar files.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coreperiphery import CpdmSeries

SHIFT_AWAY = "shift_away"
OSCILLATORY = "oscillatory"
STEADY = "steady"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ShiftThresholds:
    """Tunable cutoffs; defaults separate the three archetypes cleanly."""

    slope_eps: float = 0.05
    amp_eps: float = 0.10
    min_points: int = 3

    def __post_init__(self):
        if self.slope_eps <= 0 or self.amp_eps <= 0 or self.min_points <= 0:
            raise ValueError("shift thresholds must be positive")


@dataclass(frozen=True)
class ShiftReport:
    """Outcome of classification; stsc_flag marks the structure clash."""

    label: str
    slope: float
    reversals: int
    touched_zero: bool
    stsc_flag: bool


def _least_squares_slope(xs, ys) -> float:
    if len(xs) < 2:
        return 0.0
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / sxx if sxx else 0.0


def classify_shift(series: CpdmSeries, k: int,
                   thresholds: ShiftThresholds = ShiftThresholds()) -> ShiftReport:
    """Label a series as shift_away, oscillatory, steady, or indeterminate.

    Precedence: too few measured points -> indeterminate; at least two
    qualifying reversals -> oscillatory; slope at most -slope_eps ->
    shift_away (raising the structure-clash flag); otherwise steady.
    touched_zero is true when any measured point is exactly 0.
    """
    if not series.points:
        raise ValueError("cannot classify an empty series")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    measured = [p for p in series.points if not p.no_activity]
    xs = [float(p.window_index) for p in measured]
    ys = [p.average / k for p in measured]
    slope = _least_squares_slope(xs, ys)

    deltas = [b - a for a, b in zip(ys, ys[1:])]
    reversals = sum(
        1 for d1, d2 in zip(deltas, deltas[1:])
        if d1 * d2 < 0 and abs(d1) >= thresholds.amp_eps and abs(d2) >= thresholds.amp_eps
    )

    if len(measured) < thresholds.min_points:
        label = INDETERMINATE
    elif reversals >= 2:
        label = OSCILLATORY
    elif slope <= -thresholds.slope_eps:
        label = SHIFT_AWAY
    else:
        label = STEADY

    touched_zero = any(p.average == 0 for p in measured)
    return ShiftReport(
        label=label,
        slope=slope,
        reversals=reversals,
        touched_zero=touched_zero,
        stsc_flag=(label == SHIFT_AWAY),
    )
