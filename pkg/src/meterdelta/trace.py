"""Core data model for 1 Hz power traces.

A trace is a sequence of (timestamp, power) samples on a one-second grid
with the left-hold convention: the sample at time t holds its power constant
over [t, t+1). Gaps (missing seconds) stay explicit. Statistics only ever
sum what is present, and first differences are taken only between samples
that are exactly one resolution step apart, so gaps never manufacture
artificial power spikes.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    DegenerateTraceError,
    EmptyInputError,
    NegativePowerError,
    NonFiniteError,
)

log = logging.getLogger(__name__)

SECONDS_PER_HOUR = 3600.0
SECONDS_PER_DAY = 86400.0


@dataclass(frozen=True, eq=False)
class PowerTrace:
    """Validated power trace. Build one with :func:`validate_trace`.

    Timestamps are strictly increasing integer epoch seconds; powers are
    finite, non-negative watts. Arrays are frozen after construction, so a
    trace can be shared across threads freely.
    """

    timestamps: np.ndarray
    powers: np.ndarray
    nominal_resolution: int = 1

    def __post_init__(self):
        ts = np.ascontiguousarray(self.timestamps, dtype=np.int64)
        pw = np.ascontiguousarray(self.powers, dtype=np.float64)
        if ts.ndim != 1 or ts.shape != pw.shape:
            raise ValueError("timestamps and powers must be equal-length 1-d arrays")
        if ts.size == 0:
            raise ValueError("a trace needs at least one sample")
        if ts.size > 1 and not np.all(ts[1:] > ts[:-1]):
            raise ValueError("timestamps must be strictly increasing")
        if not np.all(np.isfinite(pw)) or np.any(pw < 0):
            raise ValueError("powers must be finite and non-negative")
        ts.setflags(write=False)
        pw.setflags(write=False)
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "powers", pw)

    def __len__(self) -> int:
        return int(self.timestamps.size)

    @property
    def start(self) -> int:
        return int(self.timestamps[0])

    @property
    def end(self) -> int:
        """Exclusive end of coverage: one hold interval past the last sample."""
        return int(self.timestamps[-1]) + self.nominal_resolution

    @property
    def duration(self) -> int:
        return self.end - self.start

    @property
    def samples(self) -> list[tuple[int, float]]:
        return list(zip(self.timestamps.tolist(), self.powers.tolist()))


@dataclass(frozen=True)
class TraceStats:
    """Summary statistics of one trace.

    peak_variation_w is the largest one-second power change; changes across
    gaps are never counted. Energies are watt-hours.
    """

    peak_power_w: float
    peak_variation_w: float
    total_energy_wh: float
    mean_daily_energy_wh: float
    coverage: float
    duration_s: int
    gap_count: int


@dataclass(frozen=True, eq=False)
class Segment:
    """Contiguous run of samples whose internal gaps never exceed the
    segmentation limit. Covers [start, end) with end exclusive."""

    timestamps: np.ndarray
    powers: np.ndarray
    nominal_resolution: int = 1

    def __post_init__(self):
        self.timestamps.setflags(write=False)
        self.powers.setflags(write=False)

    def __len__(self) -> int:
        return int(self.timestamps.size)

    @property
    def start(self) -> int:
        return int(self.timestamps[0])

    @property
    def end(self) -> int:
        return int(self.timestamps[-1]) + self.nominal_resolution

    @property
    def duration(self) -> int:
        return self.end - self.start

    @property
    def total_energy_ws(self) -> float:
        return float(self.powers.sum()) * self.nominal_resolution

    @property
    def total_energy_wh(self) -> float:
        return self.total_energy_ws / SECONDS_PER_HOUR

    def to_trace(self) -> PowerTrace:
        return PowerTrace(self.timestamps, self.powers, self.nominal_resolution)


class DiffDistribution(NamedTuple):
    """Sorted, normalized curve of one-second power changes.

    rank_percent[i] is (i + 1) / n for the i-th largest change, so the curve
    is ready for log-log plotting; normalized_delta is each |change| divided
    by the largest one.
    """

    rank_percent: np.ndarray
    normalized_delta: np.ndarray


def validate_trace(raw: Iterable[tuple[float, float]]) -> PowerTrace:
    """Turn raw (timestamp, power) pairs into a :class:`PowerTrace`.

    Out-of-order input is sorted. Duplicate timestamps keep the value seen
    last (a meter overwriting its own reading) and are logged as a warning.
    Fractional timestamps are truncated toward zero onto the 1 s grid.

    Raises:
        EmptyInputError: raw contains no samples.
        NonFiniteError: any timestamp or power is NaN or infinite.
        NegativePowerError: any power is below zero.
    """
    arr = raw if isinstance(raw, np.ndarray) else np.asarray(list(raw), dtype=np.float64)
    arr = np.asarray(arr, dtype=np.float64)
    if arr.size == 0:
        raise EmptyInputError("no samples")
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("expected a sequence of (timestamp, power) pairs")
    bad = ~np.isfinite(arr)
    if bad.any():
        row = int(np.argwhere(bad)[0][0])
        raise NonFiniteError(arr[row, 0])
    negative = arr[:, 1] < 0
    if negative.any():
        row = int(np.flatnonzero(negative)[0])
        raise NegativePowerError(int(arr[row, 0]), float(arr[row, 1]))
    ts = arr[:, 0].astype(np.int64)
    pw = arr[:, 1].copy()
    order = np.argsort(ts, kind="stable")
    ts, pw = ts[order], pw[order]
    if ts.size > 1:
        # stable sort keeps input order within equal timestamps, so the last
        # element of each run is the last occurrence in the raw input
        keep = np.append(np.flatnonzero(ts[1:] != ts[:-1]), ts.size - 1)
        if keep.size != ts.size:
            log.warning(
                "collapsed %d duplicate timestamps (last value wins)",
                ts.size - keep.size,
            )
            ts, pw = ts[keep], pw[keep]
    return PowerTrace(ts, pw)


def trace_stats(trace: PowerTrace) -> TraceStats:
    """Compute :class:`TraceStats` for a validated trace."""
    step = np.diff(trace.timestamps)
    adjacent = step == trace.nominal_resolution
    if adjacent.any():
        peak_variation = float(np.abs(np.diff(trace.powers))[adjacent].max())
    else:
        peak_variation = 0.0
    total_energy_wh = float(trace.powers.sum()) * trace.nominal_resolution / SECONDS_PER_HOUR
    duration = trace.duration
    return TraceStats(
        peak_power_w=float(trace.powers.max()),
        peak_variation_w=peak_variation,
        total_energy_wh=total_energy_wh,
        mean_daily_energy_wh=total_energy_wh / (duration / SECONDS_PER_DAY),
        coverage=len(trace) / duration,
        duration_s=duration,
        gap_count=int(np.count_nonzero(step > trace.nominal_resolution)),
    )


def segment_trace(trace: PowerTrace, max_gap: int) -> list[Segment]:
    """Split the trace wherever consecutive timestamps differ by more than
    max_gap seconds. The segments partition the samples in order."""
    if max_gap < 1:
        raise ValueError("max_gap must be >= 1")
    cuts = np.flatnonzero(np.diff(trace.timestamps) > max_gap) + 1
    bounds = [0, *cuts.tolist(), len(trace)]
    return [
        Segment(trace.timestamps[a:b], trace.powers[a:b], trace.nominal_resolution)
        for a, b in zip(bounds[:-1], bounds[1:])
    ]


def merge_segments(segments: Sequence[Segment]) -> PowerTrace:
    """Reassemble ordered segments into the trace they partition."""
    if not segments:
        raise EmptyInputError("no segments")
    ts = np.concatenate([s.timestamps for s in segments])
    pw = np.concatenate([s.powers for s in segments])
    return PowerTrace(ts, pw, segments[0].nominal_resolution)


def first_difference_distribution(trace: PowerTrace) -> DiffDistribution:
    """Sorted, normalized magnitudes of the one-second power changes.

    Zero-valued changes are retained. An all-constant trace normalizes to
    zeros rather than failing; a trace with no adjacent sample pair at all
    raises DegenerateTraceError.
    """
    step = np.diff(trace.timestamps)
    adjacent = step == trace.nominal_resolution
    if not adjacent.any():
        raise DegenerateTraceError("no pair of samples exactly one resolution step apart")
    diffs = np.abs(np.diff(trace.powers))[adjacent]
    diffs = np.sort(diffs)[::-1]
    peak = diffs[0]
    normalized = diffs / peak if peak > 0 else np.zeros_like(diffs)
    rank = np.arange(1, diffs.size + 1, dtype=np.float64) / diffs.size
    return DiffDistribution(rank, np.ascontiguousarray(normalized))
