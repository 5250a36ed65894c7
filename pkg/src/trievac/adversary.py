"""Worst-case exit placement on the perimeter."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .geometry import OffPerimeter, perimeter_coord
from .simulator import Scenario, Simulator

EPS_S = 1e-7
SHIFT_FORWARD, SHIFT_BACKWARD, STATIONARY = "shift-forward", "shift-backward", "stationary"


@dataclass
class WorstCaseResult:
    exit_s: float
    evac_time: float
    profile: np.ndarray  # columns s, evac_time
    candidates: list[float] = field(default_factory=list)

    def profile_csv(self) -> str:
        lines = ["s,evac_time"]
        lines += [f"{s:.6g},{t:.6g}" for s, t in self.profile]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"exit_s": self.exit_s, "evac_time": self.evac_time,
                "candidates": self.candidates}


def critical_candidates(scenario: Scenario) -> list[float]:
    """Vertices, midpoints and every perimeter waypoint of the plan, each with
    one-sided neighbours."""
    base = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5}
    for tr in scenario.trajectories:
        for p in tr.waypoints():
            try:
                base.add(round(perimeter_coord(p), 12))
            except OffPerimeter:
                pass
    out = set()
    for s in base:
        out.update({s % 3.0, (s - EPS_S) % 3.0, (s + EPS_S) % 3.0})
    return sorted(out)


def worst_case(scenario: Scenario, resolution: float = 1e-3, refine_tol: float = 1e-7,
               sim: Simulator | None = None, n_refine: int = 8) -> WorstCaseResult:
    """Maximize the evacuation time over exit positions.

    A uniform sweep is followed by bounded scalar refinement around the
    best sweep cells, and every analytic candidate point is evaluated too.
    """
    if not 0 < resolution <= 1e-2:
        raise ValueError("resolution must lie in (0, 1e-2]")
    sim = sim or Simulator(scenario)
    n = int(round(3.0 / resolution))
    ss = np.arange(n) * (3.0 / n)
    ts = np.array([sim.evac_time(s) for s in ss])
    best_s, best_t = float(ss[np.argmax(ts)]), float(np.max(ts))

    cands = critical_candidates(scenario)
    for s in cands:
        t = sim.evac_time(s)
        if t > best_t:
            best_s, best_t = s, t

    # local maxima of the circular profile
    peaks = np.nonzero((ts >= np.roll(ts, 1)) & (ts >= np.roll(ts, -1)))[0]
    peaks = peaks[np.argsort(-ts[peaks])][:n_refine]
    h = 3.0 / n
    for i in peaks:
        lo, hi = ss[i] - h, ss[i] + h
        res = minimize_scalar(lambda s: -sim.evac_time(s), bounds=(lo, hi), method="bounded",
                              options={"xatol": refine_tol})
        if -res.fun > best_t:
            best_s, best_t = float(res.x) % 3.0, float(-res.fun)
    return WorstCaseResult(best_s, best_t, np.column_stack([ss, ts]), cands)


def direction_test(beta: float, gamma: float, tol: float = 1e-12) -> str:
    """Whether moving the exit along the partner's direction raises the time."""
    if not (0 < beta < math.pi and 0 <= gamma < math.pi):
        raise ValueError("angles must lie in (0, pi)")
    v = 2.0 * math.cos(beta) + math.cos(gamma)
    if abs(v - 1.0) <= tol:
        return STATIONARY
    return SHIFT_FORWARD if v < 1.0 else SHIFT_BACKWARD
