"""Metering strategies: periodic window averaging and send-on-delta events.

Both strategies turn a Segment into a ReadingStream. Streams open with a
zero-energy "initial" reading at the segment start (the receiver's baseline,
not a transmitted message) and close at the segment's exclusive end, so the
energies of any stream always sum to the segment's energy.

Energies ride in watt-seconds internally: a 1 Hz integrator's native unit,
which keeps window sums and reconstruction exact. Use MeterReading.energy_wh
at presentation boundaries.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .thresholds import Thresholds
from .trace import SECONDS_PER_HOUR, Segment

TRIGGERS = ("initial", "power_delta", "energy", "silence", "window", "final")


@dataclass(frozen=True)
class MeterReading:
    """One transmitted message.

    energy_ws is the energy accumulated since the previous reading (zero for
    the initial baseline); power_w is the instantaneous power at the reading
    time under the left-hold convention.
    """

    timestamp: int
    trigger: str
    energy_ws: float
    power_w: float

    @property
    def energy_wh(self) -> float:
        return self.energy_ws / SECONDS_PER_HOUR


@dataclass(frozen=True)
class ReadingStream:
    """Ordered readings produced from one segment by one strategy."""

    readings: tuple[MeterReading, ...]
    strategy: str
    segment_start: int
    segment_end: int

    @property
    def total_energy_ws(self) -> float:
        return sum(r.energy_ws for r in self.readings)


def sample_time_based(segment: Segment, delta_t: int) -> ReadingStream:
    """Periodic metering: one reading at the end of every delta_t window.

    Windows tile the segment from its start. Full windows emit "window"
    readings; a trailing partial window is flushed as a "final" reading
    covering the remainder. A reading's energy is the sum over the window's
    present samples, so windows inside data gaps emit zero energy.
    """
    if delta_t != int(delta_t) or int(delta_t) < 1:
        raise ValueError("delta_t must be an integer >= 1")
    delta_t = int(delta_t)
    ts = segment.timestamps
    pw = segment.powers
    start, end = segment.start, segment.end

    edges = np.arange(start + delta_t, end + delta_t, delta_t, dtype=np.int64)
    if edges[-1] > end:
        edges[-1] = end
    bounds = np.searchsorted(ts, np.concatenate(([start], edges)))
    # cumulative-sum differences telescope, so the stream conserves energy
    # exactly even when individual windows are empty
    csum = np.concatenate(([0.0], np.cumsum(pw * float(segment.nominal_resolution))))
    energies = csum[bounds[1:]] - csum[bounds[:-1]]
    power_idx = np.searchsorted(ts, edges, side="right") - 1
    powers_at = pw[power_idx]

    readings = [MeterReading(start, "initial", 0.0, float(pw[0]))]
    for edge, e_ws, p in zip(edges.tolist(), energies.tolist(), powers_at.tolist()):
        trigger = "window" if (edge - start) % delta_t == 0 else "final"
        readings.append(MeterReading(int(edge), trigger, float(e_ws), float(p)))
    return ReadingStream(tuple(readings), f"time:dt={delta_t}", start, end)


def sample_event_based(segment: Segment, th: Thresholds) -> ReadingStream:
    """Send-on-delta metering over one segment.

    Sequential scan carrying three state variables: the time and power of
    the last reading and the energy accumulated since it. Arriving at sample
    time t first books the held energy of the preceding sample, then fires
    at most one trigger:

      power_delta  |power(t) - power(last reading)| >= power_delta_w
      energy       accumulated energy >= energy_wh
      silence      t - t(last reading) >= max_silence_s (when enabled)

    in that priority order. Firing emits a reading carrying the accumulated
    energy and resets all three state variables, including the power
    reference, regardless of which trigger fired. Residual energy is flushed
    as a "final" reading at the segment end.
    """
    ts = segment.timestamps.tolist()
    pw = segment.powers.tolist()
    start, end = segment.start, segment.end
    hold = float(segment.nominal_resolution)
    power_delta_w = th.power_delta_w
    energy_ws = th.energy_wh * SECONDS_PER_HOUR  # inf stays inf
    silence = th.max_silence_s

    readings = [MeterReading(start, "initial", 0.0, pw[0])]
    t_last, p_ref, acc = start, pw[0], 0.0
    for i in range(1, len(ts)):
        t = ts[i]
        p = pw[i]
        acc += pw[i - 1] * hold
        if abs(p - p_ref) >= power_delta_w:
            trigger = "power_delta"
        elif acc >= energy_ws:
            trigger = "energy"
        elif silence is not None and t - t_last >= silence:
            trigger = "silence"
        else:
            continue
        readings.append(MeterReading(t, trigger, acc, p))
        t_last, p_ref, acc = t, p, 0.0
    acc += pw[-1] * hold
    readings.append(MeterReading(end, "final", acc, pw[-1]))

    strategy = f"event:dp={power_delta_w},e_wh={th.energy_wh},silence={silence}"
    return ReadingStream(tuple(readings), strategy, start, end)


def message_count(stream: ReadingStream) -> int:
    """Number of transmitted messages: every reading except the initial
    baseline, which both strategies share and neither transmits."""
    return sum(1 for r in stream.readings if r.trigger != "initial")
