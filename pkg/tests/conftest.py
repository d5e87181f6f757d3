import pytest

from meterdelta import segment_trace, validate_trace

# two-step fixture used throughout: 400 W jumps at t=3 and t=5
TRACE_A_POWERS = [100, 100, 100, 500, 500, 100, 100, 100, 100, 100]


@pytest.fixture
def trace_a():
    return validate_trace([(t, float(p)) for t, p in enumerate(TRACE_A_POWERS)])


@pytest.fixture
def segment_a(trace_a):
    (seg,) = segment_trace(trace_a, max_gap=3600)
    return seg


@pytest.fixture
def constant_trace():
    return validate_trace([(t, 100.0) for t in range(10)])


@pytest.fixture
def constant_segment(constant_trace):
    (seg,) = segment_trace(constant_trace, max_gap=3600)
    return seg
