"""Independent reference implementations used to check the library.

Everything here is deliberately brute force: per-second walks over the wall
clock and from-scratch slice sums, sharing no code path or running state
with the samplers under test. Traces produced by the generators carry
integer-valued powers so that both routes compute exact float sums and
reading-for-reading comparison can demand strict equality.
"""
from __future__ import annotations

import math

import numpy as np


def random_step_trace(rng, length=1000, max_power=5000, max_dwell=60, start=None):
    """Piecewise-constant random trace on a contiguous 1 s grid."""
    if start is None:
        start = int(rng.integers(0, 10**6))
    powers: list[float] = []
    while len(powers) < length:
        level = float(rng.integers(0, max_power + 1))
        powers.extend([level] * int(rng.integers(1, max_dwell + 1)))
    powers = powers[:length]
    return [(start + t, p) for t, p in enumerate(powers)]


def random_gappy_trace(rng, length=1000, max_power=5000, gap_chance=0.02, max_gap=200):
    """Step trace with occasional missing stretches."""
    samples = random_step_trace(rng, length, max_power)
    out = []
    t = samples[0][0]
    for _, p in samples:
        out.append((t, p))
        t += 1
        if rng.random() < gap_chance:
            t += int(rng.integers(1, max_gap + 1))
    return out


def random_thresholds(rng):
    """Threshold draw covering finite, infinite and silence-enabled cases."""
    power_delta = float(rng.integers(20, 2001)) if rng.random() < 0.8 else math.inf
    energy_wh = float(rng.integers(10, 501)) / 10.0 if rng.random() < 0.8 else math.inf
    silence = int(rng.integers(20, 301)) if rng.random() < 0.3 else None
    if math.isinf(power_delta) and math.isinf(energy_wh) and silence is None:
        power_delta = float(rng.integers(20, 2001))
    return power_delta, energy_wh, silence


def brute_force_event_readings(timestamps, powers, power_delta_w, energy_wh, max_silence_s=None):
    """Per-second replay of the send-on-delta rules.

    Walks the wall clock second by second and recomputes the accumulated
    energy from scratch at every present second instead of carrying a
    running total. Returns (timestamp, trigger, energy_ws, power_w) tuples.
    """
    ts = [int(t) for t in timestamps]
    pw = [float(p) for p in powers]
    start, end = ts[0], ts[-1] + 1
    per_second = np.zeros(end - start)
    present = np.zeros(end - start, dtype=bool)
    value_at = {}
    for t, p in zip(ts, pw):
        per_second[t - start] = p
        present[t - start] = True
        value_at[t] = p
    energy_limit_ws = float(energy_wh) * 3600.0

    readings = [(start, "initial", 0.0, pw[0])]
    t_last, p_ref = start, pw[0]
    for t in range(start + 1, end):
        if not present[t - start]:
            continue
        acc = float(per_second[t_last - start : t - start].sum())
        p = value_at[t]
        if abs(p - p_ref) >= power_delta_w:
            trigger = "power_delta"
        elif acc >= energy_limit_ws:
            trigger = "energy"
        elif max_silence_s is not None and t - t_last >= max_silence_s:
            trigger = "silence"
        else:
            continue
        readings.append((t, trigger, acc, p))
        t_last, p_ref = t, p
    acc = float(per_second[t_last - start :].sum())
    readings.append((end, "final", acc, pw[-1]))
    return readings


def brute_force_time_readings(timestamps, powers, delta_t):
    """Window sums recomputed per window with plain python arithmetic."""
    ts = [int(t) for t in timestamps]
    pw = [float(p) for p in powers]
    start, end = ts[0], ts[-1] + 1
    value_at = dict(zip(ts, pw))

    readings = [(start, "initial", 0.0, pw[0])]
    left = start
    while left < end:
        right = min(left + delta_t, end)
        acc = 0.0
        for s in range(left, right):
            if s in value_at:
                acc += value_at[s]
        probe = right
        while probe not in value_at:
            probe -= 1
        trigger = "window" if right == left + delta_t else "final"
        readings.append((right, trigger, acc, value_at[probe]))
        left = right
    return readings


def stream_tuples(stream):
    """Flatten a ReadingStream for comparison against oracle output."""
    return [(r.timestamp, r.trigger, r.energy_ws, r.power_w) for r in stream.readings]
