"""Score reading streams against the traces they were sampled from.

Reconstruction spreads each reading's energy uniformly over its interval,
yielding a piecewise-constant average-power signal on the segment's grid.
NMAE is the sum of absolute per-second errors divided by the sum of the
original powers; it penalizes large deviations less brutally than squared
metrics, which matters for spiky household signals. Sweeps evaluate whole
grids of periodic and event parameters, deriving thresholds once from
whole-trace statistics.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    MismatchedSegmentError,
    ZeroCandidateError,
    ZeroEnergySegmentError,
)
from .sampler import ReadingStream, message_count, sample_event_based, sample_time_based
from .thresholds import Thresholds, ThresholdSpec, threshold_grid
from .trace import Segment, TraceStats, merge_segments, trace_stats

DEFAULT_DT_GRID = (10, 30, 60, 300, 600, 900, 1800, 3600, 7200)
COMPRESSION_REFERENCE_DT = 10


@dataclass(frozen=True, eq=False)
class ReconstructedTrace:
    """Average-power signal on the same present-sample grid as its segment."""

    timestamps: np.ndarray
    powers: np.ndarray


@dataclass(frozen=True)
class EvalResult:
    """NMAE, message count and compression for one strategy/parameter point."""

    strategy: str  # "time" or "event"
    nmae: float
    message_count: int
    compression_vs_10s: float
    dt: int | None = None
    p_percent: float | None = None
    e_percent: float | None = None
    thresholds: Thresholds | None = None


@dataclass(frozen=True)
class SweepResult:
    """Every grid point evaluated for one trace."""

    trace_id: str
    stats: TraceStats
    time_based: tuple[EvalResult, ...]
    event_based: tuple[EvalResult, ...]


def reconstruct(stream: ReadingStream, segment: Segment) -> ReconstructedTrace:
    """Rebuild the average-power signal a receiver would infer from a stream.

    For each consecutive reading pair (previous at t0, current at t1), every
    grid second in [t0, t1) takes the value energy / (t1 - t0). The stream
    must have been produced from the given segment.
    """
    if stream.segment_start != segment.start or stream.segment_end != segment.end:
        raise MismatchedSegmentError(
            f"stream covers [{stream.segment_start}, {stream.segment_end}), "
            f"segment covers [{segment.start}, {segment.end})"
        )
    reading_ts = np.array([r.timestamp for r in stream.readings], dtype=np.int64)
    if reading_ts[0] < segment.start or reading_ts[-1] > segment.end:
        raise MismatchedSegmentError("stream timestamps fall outside the segment")
    energies = np.array([r.energy_ws for r in stream.readings], dtype=np.float64)
    widths = np.diff(reading_ts).astype(np.float64)
    interval_power = energies[1:] / widths
    idx = np.searchsorted(reading_ts, segment.timestamps, side="right") - 1
    return ReconstructedTrace(segment.timestamps, interval_power[idx])


def error_components(original: Segment, reconstructed: ReconstructedTrace) -> tuple[float, float]:
    """Numerator and denominator of NMAE, for aggregation across segments."""
    if not np.array_equal(original.timestamps, reconstructed.timestamps):
        raise MismatchedSegmentError("reconstruction is not on the segment's grid")
    numerator = float(np.abs(original.powers - reconstructed.powers).sum())
    denominator = float(original.powers.sum())
    return numerator, denominator


def nmae(original: Segment, reconstructed: ReconstructedTrace) -> float:
    """Sum of absolute per-second errors over the sum of original powers."""
    numerator, denominator = error_components(original, reconstructed)
    if denominator <= 0:
        raise ZeroEnergySegmentError("original powers sum to zero")
    return numerator / denominator


def rmse(original: Segment, reconstructed: ReconstructedTrace) -> float:
    """Root-mean-square error in watts. Secondary metric only; it punishes
    the large deviations periodic averaging produces far harder than NMAE."""
    if not np.array_equal(original.timestamps, reconstructed.timestamps):
        raise MismatchedSegmentError("reconstruction is not on the segment's grid")
    return float(np.sqrt(np.mean((original.powers - reconstructed.powers) ** 2)))


def compression_ratio(reference_count: int, candidate_count: int) -> float:
    """How many reference messages each candidate message replaces."""
    if candidate_count < 1:
        raise ZeroCandidateError("candidate stream has no messages")
    return reference_count / candidate_count


def _pooled_score(segments: Sequence[Segment], streams: Sequence[ReadingStream]) -> tuple[float, int]:
    """NMAE pooled across segments (numerators and denominators summed
    before the division) plus the total message count."""
    numerator = denominator = 0.0
    count = 0
    for seg, stream in zip(segments, streams):
        n, d = error_components(seg, reconstruct(stream, seg))
        numerator += n
        denominator += d
        count += message_count(stream)
    if denominator <= 0:
        raise ZeroEnergySegmentError("trace powers sum to zero")
    return numerator / denominator, count


def run_sweep(
    segments: Sequence[Segment],
    dt_list: Sequence[int],
    p_list: Sequence[float],
    e_list: Sequence[float],
    spec: ThresholdSpec,
    *,
    trace_id: str = "trace",
    stats: TraceStats | None = None,
) -> SweepResult:
    """Evaluate every periodic and event grid point for one trace.

    Thresholds derive once from whole-trace statistics even when the trace
    is split into segments; each grid point is then sampled and scored per
    segment and pooled. compression_vs_10s always compares against the 10 s
    periodic strategy, whether or not 10 appears in dt_list.
    """
    segments = list(segments)
    if not segments:
        raise ValueError("need at least one segment")
    dt_values = [int(dt) for dt in dict.fromkeys(dt_list)]
    if not dt_values:
        raise ValueError("dt_list must be non-empty")
    if stats is None:
        stats = trace_stats(merge_segments(segments))
    reference_count = sum(
        message_count(sample_time_based(s, COMPRESSION_REFERENCE_DT)) for s in segments
    )

    time_rows = []
    for dt in dt_values:
        streams = [sample_time_based(s, dt) for s in segments]
        score, count = _pooled_score(segments, streams)
        time_rows.append(
            EvalResult("time", score, count, compression_ratio(reference_count, count), dt=dt)
        )

    event_rows = []
    for p, e, th in threshold_grid(stats, p_list, e_list, spec):
        streams = [sample_event_based(s, th) for s in segments]
        score, count = _pooled_score(segments, streams)
        event_rows.append(
            EvalResult(
                "event",
                score,
                count,
                compression_ratio(reference_count, count),
                p_percent=float(p),
                e_percent=float(e),
                thresholds=th,
            )
        )
    return SweepResult(trace_id, stats, tuple(time_rows), tuple(event_rows))
