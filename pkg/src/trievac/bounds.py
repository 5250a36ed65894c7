"""Closed-form evacuation times and agent-count bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import Y
from .strategies.cxp import cxp_agents

__all__ = ["no_detour_time", "lower_bound_two", "lower_bound_kink", "optimal_any_k",
           "min_agents_lb", "cxp_agents", "BoundReport", "bound_report"]


def _check_r(r: float) -> None:
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r}")


def no_detour_time(r: float) -> float:
    """Worst case of the two mirror agents that never leave the perimeter."""
    _check_r(r)
    return Y + 0.5 + r + 2.0 * (1.0 - r * r) / (2.0 * r + 1.0)


def lower_bound_two(r: float) -> float:
    _check_r(r)
    return max(1.5 + Y, 1.0 + 4.0 * Y - r)


def lower_bound_kink() -> float:
    """Range at which the two-agent bound stops depending on r."""
    return 3.0 * Y - 0.5


def optimal_any_k() -> float:
    """No team, however large, can beat a walk to the centre and on to the far side."""
    return 1.0 + 2.0 * Y


def min_agents_lb(r: float) -> int:
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r}")
    # smallest integer count not below 1/r + 1
    return math.ceil(1.0 / r + 1.0 - 1e-9)


@dataclass
class BoundReport:
    k: int
    r: float
    lower: float
    uppers: dict[str, float] = field(default_factory=dict)

    @property
    def gap(self) -> float:
        return min(self.uppers.values()) - self.lower if self.uppers else math.nan

    @property
    def consistent(self) -> bool:
        return all(u >= self.lower - 1e-6 for u in self.uppers.values())


def bound_report(k: int, r: float, uppers: dict[str, float] | None = None) -> BoundReport:
    lower = lower_bound_two(r) if k == 2 else optimal_any_k()
    return BoundReport(k, r, lower, dict(uppers or {}))
