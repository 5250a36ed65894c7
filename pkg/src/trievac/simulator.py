"""Continuous-time execution of one evacuation scenario against a fixed exit.

Everyone follows their nominal plan until informed.  With two agents the
finder r-intercepts its partner; with three or more it keeps to its plan
until the whole team's range graph is connected and then broadcasts.  Once
informed, an agent walks straight to the exit.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .communication import ConnectivityTimeline, earliest_interception, range_graph
from .geometry import GEOM_TOL, dist, perimeter_point
from .trajectory import Motion, Plan, Trajectory

STRATEGIES = ("NoDetour", "OneDetour", "TwoDetour", "X3C3", "X1C3", "X3C4", "X1C4", "CXP")
REQUIRED_K = {"NoDetour": 2, "OneDetour": 2, "TwoDetour": 2,
              "X3C3": 3, "X1C3": 3, "X3C4": 4, "X1C4": 4}


class StrategyIncomplete(RuntimeError):
    """No agent ever reaches the exit: the plan leaves part of the perimeter unexplored."""


class BadScenario(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    k: int
    r: float
    strategy: str
    trajectories: tuple[Trajectory, ...]
    params: dict = field(default_factory=dict, compare=False)
    exit_s: float | None = None

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise BadScenario(f"unknown strategy {self.strategy!r}")
        if not 0.0 <= self.r <= 1.0:
            raise BadScenario(f"r must lie in [0, 1], got {self.r}")
        need = REQUIRED_K.get(self.strategy)
        if need is not None and need != self.k:
            raise BadScenario(f"{self.strategy} needs k={need}, got k={self.k}")
        if self.k < 2 or len(self.trajectories) != self.k:
            raise BadScenario(f"expected {self.k} trajectories, got {len(self.trajectories)}")

    @property
    def mode(self) -> str:
        return "intercept" if self.k == 2 else "connect"

    def at_exit(self, s: float) -> "Scenario":
        return Scenario(self.k, self.r, self.strategy, self.trajectories, self.params, float(s) % 3.0)

    def to_json(self) -> dict:
        return {
            "k": self.k, "r": self.r, "strategy": self.strategy,
            "params": _jsonable(self.params),
            "exit_s": self.exit_s,
            "trajectories": [tr.to_json() for tr in self.trajectories],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Scenario":
        try:
            trs = tuple(Trajectory.from_json(x) for x in d["trajectories"])
            return cls(int(d["k"]), float(d["r"]), d["strategy"], trs,
                       d.get("params", {}), d.get("exit_s"))
        except (KeyError, TypeError) as exc:
            raise BadScenario(f"malformed scenario: {exc}") from exc


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


@dataclass(frozen=True)
class Notification:
    time: float
    informer: int
    informed: frozenset[int]
    positions: np.ndarray  # everyone's position at ``time``


@dataclass
class EvacuationOutcome:
    exit_s: float
    exit: np.ndarray
    discovery_time: float
    finder: int
    notifications: list[Notification]
    informed_times: list[float]
    arrivals: list[float]
    motions: list[Motion]
    evac_time: float

    def to_json(self) -> dict:
        return {
            "exit_s": self.exit_s, "exit": self.exit.tolist(),
            "discovery_time": self.discovery_time, "finder": self.finder,
            "notifications": [{"time": n.time, "informer": n.informer,
                               "informed": sorted(n.informed)} for n in self.notifications],
            "arrivals": self.arrivals, "evac_time": self.evac_time,
        }

    def trace(self, dt: float = 0.01) -> np.ndarray:
        """Rows (t, agent, x, y) sampled every ``dt`` up to the evacuation time."""
        ts = np.append(np.arange(0.0, self.evac_time, dt), self.evac_time)
        rows = []
        for i, m in enumerate(self.motions):
            p = m.at(ts)
            rows.append(np.column_stack([ts, np.full(len(ts), i), p]))
        return np.vstack(rows)

    def trace_csv(self, dt: float = 0.01) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "agent", "x", "y"])
        for t, a, x, y in self.trace(dt):
            w.writerow([f"{t:.6g}", int(a), f"{x:.6g}", f"{y:.6g}"])
        return buf.getvalue()


def _cut(m: Motion, t: float, then: list[tuple[float, np.ndarray]] = ()) -> Motion:
    """Nominal motion up to ``t`` followed by the extra knots ``then``."""
    keep = m.t < t
    times = list(m.t[keep]) + [t]
    pts = list(m.p[keep]) + [m.at(t)]
    for tk, pk in then:
        times.append(tk)
        pts.append(pk)
    return Motion(times, pts)


class Simulator:
    """Runs one scenario template against many exits.

    The resolved team plan, the segment tables used for discovery and the
    connectivity timeline only depend on the template, so they are built
    once and shared by every exit query.
    """

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.plan = Plan(scenario.trajectories)
        self.motions = self.plan.motions
        segs = []
        for i, m in enumerate(self.motions):
            for t0, t1, a, b in m.segments():
                segs.append((i, t0, t1, a[0], a[1], b[0], b[1]))
        S = np.array(segs, dtype=float).reshape(-1, 7)
        self._seg_agent = S[:, 0].astype(int)
        self._t0, self._t1 = S[:, 1], S[:, 2]
        self._a = S[:, 3:5]
        self._d = S[:, 5:7] - self._a
        self._L2 = np.einsum("ij,ij->i", self._d, self._d)

    @cached_property
    def timeline(self) -> ConnectivityTimeline:
        return ConnectivityTimeline(self.motions, self.scenario.r)

    def discovery_times(self, E) -> np.ndarray:
        """First time each agent's path passes through ``E`` (inf if never)."""
        E = np.asarray(E, dtype=float)
        w = E - self._a
        with np.errstate(divide="ignore", invalid="ignore"):
            f = np.where(self._L2 > 0, np.einsum("ij,ij->i", self._d, w) / self._L2, 0.0)
        L = np.sqrt(self._L2)
        slack = np.where(L > 0, GEOM_TOL / np.where(L > 0, L, 1.0), 0.0)
        inside = (f >= -slack) & (f <= 1 + slack)
        f = np.clip(f, 0.0, 1.0)
        off = w - f[:, None] * self._d
        hit = inside & (np.hypot(off[:, 0], off[:, 1]) <= GEOM_TOL)
        tq = self._t0 + f * (self._t1 - self._t0)
        out = np.full(self.scenario.k, math.inf)
        for i in range(self.scenario.k):
            sel = hit & (self._seg_agent == i)
            if np.any(sel):
                out[i] = float(np.min(tq[sel]))
            elif dist(self.motions[i].end, E) <= GEOM_TOL:
                out[i] = self.motions[i].end_time
        return out

    def run(self, exit_s: float | None = None) -> EvacuationOutcome:
        s = self.scenario.exit_s if exit_s is None else exit_s
        if s is None:
            raise BadScenario("no exit location given")
        s = float(s) % 3.0
        E = perimeter_point(s)
        found = self.discovery_times(E)
        tN = float(np.min(found))
        if not math.isfinite(tN):
            raise StrategyIncomplete(f"no agent ever reaches the exit at s={s:.9f}")
        finder = int(np.argmin(found))  # argmin picks the lowest id on ties
        if self.scenario.mode == "intercept":
            return self._intercept(s, E, tN, finder, found)
        return self._connect(s, E, tN, finder)

    def evac_time(self, exit_s: float) -> float:
        return self.run(exit_s).evac_time

    def _intercept(self, s, E, tN, finder, found) -> EvacuationOutcome:
        other = 1 - finder
        m_f, m_o = self.motions[finder], self.motions[other]
        hit = earliest_interception(E, tN, m_o, self.scenario.r)
        t = hit.time
        back = t + dist(hit.U, E)
        arrive_f = back
        arrive_o = t + dist(hit.target_point, E)
        informed_o = t
        if found[other] <= t:
            # the partner stumbles on the exit before being reached
            arrive_o = informed_o = float(found[other])
        motions = [None, None]
        motions[finder] = _cut(m_f, tN, [(t, hit.U), (back, E)])
        if informed_o == t:
            motions[other] = _cut(m_o, t, [(arrive_o, E)])
        else:
            motions[other] = _cut(m_o, informed_o)
        pos = np.array([motions[0].at(t), motions[1].at(t)])
        notes = [Notification(t, finder, frozenset({0, 1}), pos)]
        informed = [0.0, 0.0]
        informed[finder], informed[other] = tN, informed_o
        arrivals = [0.0, 0.0]
        arrivals[finder], arrivals[other] = arrive_f, arrive_o
        return EvacuationOutcome(s, E, tN, finder, notes, informed, arrivals, motions,
                                 max(arrivals))

    def _connect(self, s, E, tN, finder) -> EvacuationOutcome:
        tc = self.timeline.next_connected(tN)
        pos = np.array([m.at(tc) for m in self.motions])
        arrivals = [tc + dist(p, E) for p in pos]
        motions = [_cut(m, tc, [(a, E)]) for m, a in zip(self.motions, arrivals)]
        notes = [Notification(tc, finder, frozenset(range(self.scenario.k)), pos)]
        informed = [tc] * self.scenario.k
        informed[finder] = tN
        return EvacuationOutcome(s, E, tN, finder, notes, informed, arrivals, motions,
                                 max(arrivals))


def run(scenario: Scenario) -> EvacuationOutcome:
    return Simulator(scenario).run()


@dataclass
class ConnectivityReport:
    ok: bool
    checks: list[dict]
    violations: list[str]


def replay_connectivity(outcome: EvacuationOutcome, scenario: Scenario) -> ConnectivityReport:
    """Re-check every notification against the range graph of the actual positions."""
    checks, bad = [], []
    for n in outcome.notifications:
        pos = np.array([m.at(n.time) for m in outcome.motions])
        g = range_graph(pos, scenario.r)
        comp = next(c for c in g.components() if n.informer in c)
        reached = n.informed <= comp
        checks.append({"time": n.time, "informer": n.informer,
                       "component": sorted(comp), "informed": sorted(n.informed)})
        if not reached:
            bad.append(f"t={n.time:.6f}: agents {sorted(n.informed - comp)} "
                       f"are out of reach of agent {n.informer}")
    return ConnectivityReport(not bad, checks, bad)


def scenario_dumps(scenario: Scenario) -> str:
    return json.dumps(scenario.to_json(), indent=2, sort_keys=True)
