import math

import numpy as np
import pytest

from meterdelta import (
    Thresholds,
    message_count,
    sample_event_based,
    sample_time_based,
    segment_trace,
    validate_trace,
)
from oracles import (
    brute_force_event_readings,
    brute_force_time_readings,
    random_gappy_trace,
    random_step_trace,
    random_thresholds,
    stream_tuples,
)


def one_segment(samples):
    return segment_trace(validate_trace(samples), max_gap=10**9)[0]


def test_time_based_trace_a_dt2(segment_a):
    stream = sample_time_based(segment_a, 2)
    assert stream_tuples(stream) == [
        (0, "initial", 0.0, 100.0),
        (2, "window", 200.0, 100.0),
        (4, "window", 600.0, 500.0),
        (6, "window", 600.0, 100.0),
        (8, "window", 200.0, 100.0),
        (10, "window", 200.0, 100.0),
    ]
    assert message_count(stream) == 5


def test_time_based_dt1_reproduces_samples(segment_a):
    stream = sample_time_based(segment_a, 1)
    energies = [r.energy_ws for r in stream.readings[1:]]
    assert energies == segment_a.powers.tolist()


def test_time_based_dt10_single_window(segment_a):
    stream = sample_time_based(segment_a, 10)
    assert stream_tuples(stream)[1:] == [(10, "window", 1800.0, 100.0)]
    assert message_count(stream) == 1


def test_time_based_partial_window_is_final(segment_a):
    stream = sample_time_based(segment_a, 3)
    assert [(r.timestamp, r.trigger, r.energy_ws) for r in stream.readings[1:]] == [
        (3, "window", 300.0),
        (6, "window", 1100.0),
        (9, "window", 300.0),
        (10, "final", 100.0),
    ]


def test_time_based_dt_longer_than_segment(segment_a):
    stream = sample_time_based(segment_a, 60)
    assert stream_tuples(stream)[1:] == [(10, "final", 1800.0, 100.0)]


def test_time_based_rejects_bad_dt(segment_a):
    with pytest.raises(ValueError):
        sample_time_based(segment_a, 0)
    with pytest.raises(ValueError):
        sample_time_based(segment_a, 2.5)


def test_time_based_matches_window_sum_oracle():
    rng = np.random.default_rng(23)
    for _ in range(15):
        samples = random_step_trace(rng, length=200)
        seg = one_segment(samples)
        ts = [t for t, _ in samples]
        pw = [p for _, p in samples]
        for dt in (1, 2, 3, 7, 10, 50, 199, 200, 500):
            assert stream_tuples(sample_time_based(seg, dt)) == brute_force_time_readings(
                ts, pw, dt
            )


def test_time_based_oracle_on_gappy_segments():
    rng = np.random.default_rng(29)
    for _ in range(10):
        samples = random_gappy_trace(rng, length=150, gap_chance=0.1, max_gap=5)
        seg = one_segment(samples)
        ts = [t for t, _ in samples]
        pw = [p for _, p in samples]
        for dt in (1, 4, 17, 60):
            assert stream_tuples(sample_time_based(seg, dt)) == brute_force_time_readings(
                ts, pw, dt
            )


def test_event_trace_a_power_triggers(segment_a):
    stream = sample_event_based(segment_a, Thresholds(300.0, math.inf))
    assert stream_tuples(stream) == [
        (0, "initial", 0.0, 100.0),
        (3, "power_delta", 300.0, 500.0),
        (5, "power_delta", 1000.0, 100.0),
        (10, "final", 500.0, 100.0),
    ]
    assert message_count(stream) == 3
    assert stream.total_energy_ws == 1800.0


def test_event_energy_triggers(constant_segment):
    # 250 Ws expressed in Wh; each reading fires once 300 Ws accumulate
    th = Thresholds(math.inf, 250.0 / 3600.0)
    stream = sample_event_based(constant_segment, th)
    assert [(r.timestamp, r.trigger, r.energy_ws) for r in stream.readings] == [
        (0, "initial", 0.0),
        (3, "energy", 300.0),
        (6, "energy", 300.0),
        (9, "energy", 300.0),
        (10, "final", 100.0),
    ]


def test_event_no_reachable_trigger_gives_initial_and_final(constant_segment):
    stream = sample_event_based(constant_segment, Thresholds(1e12, 1e12))
    assert [r.trigger for r in stream.readings] == ["initial", "final"]
    assert stream.readings[-1].energy_ws == 1000.0
    assert message_count(stream) == 1


def test_event_silence_trigger():
    seg = one_segment([(t, 100.0) for t in range(20)])
    th = Thresholds(math.inf, math.inf, max_silence_s=5)
    stream = sample_event_based(seg, th)
    assert [(r.timestamp, r.trigger, r.energy_ws) for r in stream.readings] == [
        (0, "initial", 0.0),
        (5, "silence", 500.0),
        (10, "silence", 500.0),
        (15, "silence", 500.0),
        (20, "final", 500.0),
    ]


def test_event_silence_measured_on_wall_clock_across_gap():
    seg = one_segment([(t, 100.0) for t in range(5)] + [(t, 100.0) for t in range(50, 55)])
    th = Thresholds(math.inf, math.inf, max_silence_s=10)
    stream = sample_event_based(seg, th)
    # first present sample past the deadline is t=50; energy is the 5
    # present seconds held since the initial reading
    assert (50, "silence", 500.0, 100.0) in stream_tuples(stream)


def test_event_power_delta_has_priority_over_energy():
    seg = one_segment([(0, 100.0), (1, 100.0), (2, 600.0), (3, 600.0)])
    # both conditions hold at t=2; the label must say power_delta
    th = Thresholds(400.0, 150.0 / 3600.0)
    stream = sample_event_based(seg, th)
    assert stream.readings[1].trigger == "power_delta"
    assert stream.readings[1].timestamp == 2


def test_event_matches_brute_force_oracle():
    rng = np.random.default_rng(31)
    for _ in range(15):
        samples = random_step_trace(rng, length=500)
        seg = one_segment(samples)
        dp, e_wh, silence = random_thresholds(rng)
        stream = sample_event_based(seg, Thresholds(dp, e_wh, silence))
        expected = brute_force_event_readings(
            [t for t, _ in samples], [p for _, p in samples], dp, e_wh, silence
        )
        assert stream_tuples(stream) == expected


def test_event_oracle_on_gappy_segments():
    rng = np.random.default_rng(37)
    for _ in range(10):
        samples = random_gappy_trace(rng, length=300, gap_chance=0.05, max_gap=10)
        seg = one_segment(samples)
        dp, e_wh, silence = random_thresholds(rng)
        stream = sample_event_based(seg, Thresholds(dp, e_wh, silence))
        expected = brute_force_event_readings(
            [t for t, _ in samples], [p for _, p in samples], dp, e_wh, silence
        )
        assert stream_tuples(stream) == expected


def test_infinite_power_delta_never_fires_power_trigger():
    rng = np.random.default_rng(41)
    for _ in range(10):
        seg = one_segment(random_step_trace(rng, length=300))
        stream = sample_event_based(seg, Thresholds(math.inf, 20.0))
        assert {r.trigger for r in stream.readings} <= {"initial", "energy", "final"}


def test_infinite_energy_never_fires_energy_trigger():
    rng = np.random.default_rng(43)
    for _ in range(10):
        seg = one_segment(random_step_trace(rng, length=300))
        stream = sample_event_based(seg, Thresholds(100.0, math.inf, max_silence_s=60))
        assert {r.trigger for r in stream.readings} <= {"initial", "power_delta", "silence", "final"}


def test_energy_conservation_over_strategies():
    rng = np.random.default_rng(47)
    for _ in range(10):
        seg = one_segment(random_gappy_trace(rng, length=400, gap_chance=0.03))
        total = seg.total_energy_ws
        for dt in (1, 7, 60, 500):
            stream = sample_time_based(seg, dt)
            assert stream.total_energy_ws == pytest.approx(total, rel=1e-9)
        for _ in range(5):
            dp, e_wh, silence = random_thresholds(rng)
            stream = sample_event_based(seg, Thresholds(dp, e_wh, silence))
            assert stream.total_energy_ws == pytest.approx(total, rel=1e-9)


def test_message_count_bounds():
    rng = np.random.default_rng(53)
    for _ in range(10):
        samples = random_step_trace(rng, length=200)
        seg = one_segment(samples)
        dp, e_wh, silence = random_thresholds(rng)
        assert message_count(sample_event_based(seg, Thresholds(dp, e_wh, silence))) <= len(seg)
        for dt in (1, 3, 50):
            assert message_count(sample_time_based(seg, dt)) <= len(seg)


def test_readings_strictly_increasing_in_time():
    rng = np.random.default_rng(59)
    seg = one_segment(random_gappy_trace(rng, length=300))
    for stream in (
        sample_time_based(seg, 13),
        sample_event_based(seg, Thresholds(50.0, 5.0, max_silence_s=30)),
    ):
        ts = [r.timestamp for r in stream.readings]
        assert all(b > a for a, b in zip(ts, ts[1:]))
        assert stream.readings[0].trigger == "initial"
        assert stream.readings[-1].trigger in ("final", "window")


def test_single_sample_segment_flushes_its_energy():
    seg = one_segment([(5, 100.0)])
    for stream in (sample_time_based(seg, 5), sample_event_based(seg, Thresholds(1.0, 1.0))):
        assert [r.trigger for r in stream.readings] == ["initial", "final"]
        assert stream.readings[-1].timestamp == 6
        assert stream.total_energy_ws == 100.0
        assert message_count(stream) == 1
