"""Strategy families, their parameter solvers, and a cached evaluator."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..adversary import WorstCaseResult, worst_case
from ..geometry import Y
from ..simulator import Scenario, Simulator
from .cxp import CXPConfig, build_cxp, cxp_agents
from .two_agent import (ONE_DETOUR_LIMIT, TWO_DETOUR_LIMIT, Infeasible, TwoAgentParams,
                        build_no_detour, no_detour_closed_form, one_detour_scenario,
                        optimize_one_detour, optimize_two_detour, solve_detour_points,
                        solve_two_detour, two_detour_scenario)
from .x1c import X1CParams, build_x1c, x1c_scenario
from .x3c import X3CParams, optimize_x3c, solve_x3c, x3c_scenario

FAMILIES = {2: ("TwoDetour", "OneDetour", "NoDetour"), 3: ("X3C3", "X1C3"), 4: ("X3C4", "X1C4")}
X3C3_MAX_R = 0.5
X3C4_MAX_R = 0.2


@dataclass
class Built:
    strategy: str
    r: float
    params: object
    scenario: Scenario
    planned: float  # the construction's own worst-case accounting


def build(strategy: str, r: float) -> Built:
    """Construct (and where needed optimize) one strategy instance."""
    r = float(r)
    if strategy == "NoDetour":
        sc = build_no_detour(r)
        return Built(strategy, r, None, sc, no_detour_closed_form(r))
    if strategy == "OneDetour":
        p, t = optimize_one_detour(r)
        return Built(strategy, r, p, one_detour_scenario(p), t)
    if strategy == "TwoDetour":
        p, t = optimize_two_detour(r)
        return Built(strategy, r, p, two_detour_scenario(p), t)
    if strategy in ("X3C3", "X3C4"):
        k = int(strategy[-1])
        limit = X3C3_MAX_R if k == 3 else X3C4_MAX_R
        if r > limit + 1e-12:
            raise Infeasible(f"{strategy} is only built for r <= {limit}")
        p, t = optimize_x3c(k, r)
        return Built(strategy, r, p, x3c_scenario(p), t)
    if strategy in ("X1C3", "X1C4"):
        p, t = build_x1c(int(strategy[-1]), r)
        return Built(strategy, r, p, x1c_scenario(p), t)
    if strategy == "CXP":
        cfg, sc = build_cxp(r)
        return Built(strategy, r, cfg, sc, 1.0 + 2.0 * Y)
    raise ValueError(f"unknown strategy {strategy!r}")


@dataclass
class Evaluation:
    built: Built
    worst: WorstCaseResult

    @property
    def time(self) -> float:
        return self.worst.evac_time


@lru_cache(maxsize=512)
def evaluate(strategy: str, r: float, resolution: float = 1e-3) -> Evaluation:
    """Build a strategy and find its simulated worst case (memoized)."""
    b = build(strategy, r)
    return Evaluation(b, worst_case(b.scenario, resolution=resolution, sim=Simulator(b.scenario)))


def applicable(k: int, r: float) -> list[str]:
    out = []
    for s in FAMILIES[k]:
        if s == "TwoDetour" and r > TWO_DETOUR_LIMIT:
            continue
        if s == "OneDetour" and r > ONE_DETOUR_LIMIT:
            continue
        if s == "X3C3" and r > X3C3_MAX_R:
            continue
        if s == "X3C4" and r > X3C4_MAX_R:
            continue
        out.append(s)
    return out


def best_strategy(k: int, r: float, resolution: float = 1e-3) -> tuple[str, float]:
    """Family with the smallest simulated worst case at (k, r)."""
    if k not in FAMILIES:
        raise ValueError("best_strategy covers k = 2, 3 and 4")
    scores = {}
    for s in applicable(k, r):
        try:
            scores[s] = evaluate(s, float(r), resolution).time
        except Infeasible:
            continue
    name = min(scores, key=scores.get)
    return name, scores[name]


__all__ = [
    "Built", "CXPConfig", "Evaluation", "FAMILIES", "Infeasible", "TwoAgentParams",
    "X1CParams", "X3CParams", "applicable", "best_strategy", "build", "build_cxp",
    "build_no_detour", "build_x1c", "cxp_agents", "evaluate", "optimize_one_detour",
    "optimize_two_detour", "optimize_x3c", "solve_detour_points", "solve_two_detour",
    "solve_x3c",
]
