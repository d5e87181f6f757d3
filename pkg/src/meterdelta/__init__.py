"""Event-based electricity metering with autonomously derived thresholds.

The library models high-resolution (1 Hz) mains power traces, derives
send-on-delta trigger thresholds from a trace's own statistics, produces
reading streams under event-based or periodic metering, and scores the
reconstructed signals with NMAE and compression metrics.
"""
from .errors import (
    DegenerateStatsError,
    DegenerateTraceError,
    EmptyInputError,
    MeterDeltaError,
    MismatchedSegmentError,
    MissingColumnError,
    NegativePowerError,
    NonFiniteError,
    ParseError,
    ZeroCandidateError,
    ZeroEnergySegmentError,
)
from .evaluate import (
    COMPRESSION_REFERENCE_DT,
    DEFAULT_DT_GRID,
    EvalResult,
    ReconstructedTrace,
    SweepResult,
    compression_ratio,
    error_components,
    nmae,
    reconstruct,
    rmse,
    run_sweep,
)
from .ingest import (
    combine_mains,
    dump_redd_channel,
    load_csv,
    load_redd_channel,
    load_redd_house,
)
from .sampler import (
    MeterReading,
    ReadingStream,
    message_count,
    sample_event_based,
    sample_time_based,
)
from .thresholds import (
    DEFAULT_PERCENT_GRID,
    Thresholds,
    ThresholdSpec,
    derive_thresholds,
    threshold_grid,
)
from .trace import (
    DiffDistribution,
    PowerTrace,
    Segment,
    TraceStats,
    first_difference_distribution,
    merge_segments,
    segment_trace,
    trace_stats,
    validate_trace,
)

__version__ = "0.1.0"

__all__ = [
    "COMPRESSION_REFERENCE_DT",
    "DEFAULT_DT_GRID",
    "DEFAULT_PERCENT_GRID",
    "DegenerateStatsError",
    "DegenerateTraceError",
    "DiffDistribution",
    "EmptyInputError",
    "EvalResult",
    "MeterDeltaError",
    "MeterReading",
    "MismatchedSegmentError",
    "MissingColumnError",
    "NegativePowerError",
    "NonFiniteError",
    "ParseError",
    "PowerTrace",
    "ReadingStream",
    "ReconstructedTrace",
    "Segment",
    "SweepResult",
    "ThresholdSpec",
    "Thresholds",
    "TraceStats",
    "ZeroCandidateError",
    "ZeroEnergySegmentError",
    "combine_mains",
    "compression_ratio",
    "derive_thresholds",
    "dump_redd_channel",
    "error_components",
    "first_difference_distribution",
    "load_csv",
    "load_redd_channel",
    "load_redd_house",
    "merge_segments",
    "message_count",
    "nmae",
    "reconstruct",
    "rmse",
    "run_sweep",
    "sample_event_based",
    "sample_time_based",
    "segment_trace",
    "threshold_grid",
    "trace_stats",
    "validate_trace",
]
