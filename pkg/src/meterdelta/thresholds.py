"""Derive event-trigger thresholds from trace statistics.

The rule: take a percentage of the trace's peak one-second power change
(or, optionally, of its plain peak power) as the power trigger, and a
percentage of its mean daily energy as the energy trigger. By default both
bases are first rounded up to a whole kilowatt / kilowatt-hour so thresholds
stay round numbers across houses of very different size; rounding can be
disabled for exact proportional scaling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import DegenerateStatsError
from .trace import TraceStats

POWER_BASES = ("variation", "peak")
ROUNDING_MODES = ("ceil", "none")

DEFAULT_PERCENT_GRID = (1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0)


@dataclass(frozen=True)
class Thresholds:
    """Event-trigger parameters.

    math.inf disables the power or energy trigger; max_silence_s of None
    disables the time trigger (the default operating mode). At least one
    trigger must remain reachable, or no message after the initial baseline
    would ever be sent.
    """

    power_delta_w: float
    energy_wh: float
    max_silence_s: int | None = None

    def __post_init__(self):
        if not self.power_delta_w > 0:
            raise ValueError("power_delta_w must be positive (math.inf to disable)")
        if not self.energy_wh > 0:
            raise ValueError("energy_wh must be positive (math.inf to disable)")
        if self.max_silence_s is not None and self.max_silence_s < 1:
            raise ValueError("max_silence_s must be >= 1 when set")
        if (
            math.isinf(self.power_delta_w)
            and math.isinf(self.energy_wh)
            and self.max_silence_s is None
        ):
            raise ValueError("at least one trigger must be reachable")


@dataclass(frozen=True)
class ThresholdSpec:
    """How to turn :class:`TraceStats` into :class:`Thresholds`.

    power_base "variation" scales the peak one-second power change, "peak"
    scales the peak power itself. rounding "ceil" rounds the base up to a
    whole kW / kWh before the percentage applies; "none" uses the raw base.
    """

    p_percent: float = 1.0
    e_percent: float = 1.0
    power_base: str = "variation"
    rounding: str = "ceil"

    def __post_init__(self):
        if not self.p_percent > 0:
            raise ValueError("p_percent must be positive")
        if not self.e_percent > 0:
            raise ValueError("e_percent must be positive")
        if self.power_base not in POWER_BASES:
            raise ValueError(f"power_base must be one of {POWER_BASES}")
        if self.rounding not in ROUNDING_MODES:
            raise ValueError(f"rounding must be one of {ROUNDING_MODES}")


def derive_thresholds(stats: TraceStats, spec: ThresholdSpec) -> Thresholds:
    """Percentage-of-consumption thresholds for one trace.

    Raises DegenerateStatsError when the chosen power base or the mean daily
    energy is zero (a flat or empty trace cannot scale a percentage).
    """
    base_w = stats.peak_variation_w if spec.power_base == "variation" else stats.peak_power_w
    if base_w <= 0:
        raise DegenerateStatsError(f"power base ({spec.power_base}) is zero")
    if stats.mean_daily_energy_wh <= 0:
        raise DegenerateStatsError("mean daily energy is zero")
    energy_base_wh = stats.mean_daily_energy_wh
    if spec.rounding == "ceil":
        base_w = math.ceil(base_w / 1000.0) * 1000.0
        energy_base_wh = math.ceil(energy_base_wh / 1000.0) * 1000.0
    return Thresholds(
        power_delta_w=spec.p_percent / 100.0 * base_w,
        energy_wh=spec.e_percent / 100.0 * energy_base_wh,
    )


def threshold_grid(
    stats: TraceStats,
    p_list: Sequence[float],
    e_list: Sequence[float],
    spec: ThresholdSpec,
) -> list[tuple[float, float, Thresholds]]:
    """Cartesian product of the two percentage grids.

    Duplicate percentages are collapsed (first occurrence wins) before the
    product, so a 7 x 7 grid yields exactly 49 cells.
    """
    if not p_list or not e_list:
        raise ValueError("percentage grids must be non-empty")
    p_values = list(dict.fromkeys(p_list))
    e_values = list(dict.fromkeys(e_list))
    return [
        (p, e, derive_thresholds(stats, replace(spec, p_percent=p, e_percent=e)))
        for p in p_values
        for e in e_values
    ]
