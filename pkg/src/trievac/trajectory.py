"""Agent plans: unit-speed moves, waits on other agents, and tethered relay legs.

A :class:`Trajectory` is the *plan*; a :class:`Plan` resolves the plans of a
whole team into piecewise-linear motions of time.  Every leg kind used by the
strategies resolves to a piecewise-linear motion: a tether that holds a fixed
fraction of the chord between two piecewise-linear anchors is itself
piecewise linear, with knots at the anchors' knots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .geometry import GEOM_TOL, T, dist, point, point_on_segment

SPEED_TOL = 1e-6


class MissingContext(RuntimeError):
    pass


class SpeedViolation(RuntimeError):
    def __init__(self, agent, t, speed):
        super().__init__(f"agent {agent} moves at speed {speed:.9f} near t={t:.6f}")
        self.agent = agent
        self.t = t
        self.speed = speed


class UnresolvablePlan(RuntimeError):
    pass


@dataclass(frozen=True)
class MoveTo:
    target: tuple[float, float]

    def to_json(self):
        return {"kind": "move", "to": [float(self.target[0]), float(self.target[1])]}


@dataclass(frozen=True)
class WaitFor:
    """Hold position until ``agent`` first reaches ``at`` on its own plan."""

    agent: int
    at: tuple[float, float]

    def to_json(self):
        return {"kind": "wait", "agent": self.agent, "at": [float(self.at[0]), float(self.at[1])]}


@dataclass(frozen=True)
class Tethered:
    """Stay on the chord ``anchor_a`` -> ``anchor_b`` at a fixed ``fraction``.

    The leg lasts until both anchors have finished their plans.
    """

    anchor_a: int
    anchor_b: int
    fraction: float

    def to_json(self):
        return {"kind": "tether", "anchors": [self.anchor_a, self.anchor_b],
                "fraction": float(self.fraction)}


Leg = Union[MoveTo, WaitFor, Tethered]


def leg_from_json(d) -> Leg:
    kind = d["kind"]
    if kind == "move":
        return MoveTo(tuple(d["to"]))
    if kind == "wait":
        return WaitFor(int(d["agent"]), tuple(d["at"]))
    if kind == "tether":
        a, b = d["anchors"]
        return Tethered(int(a), int(b), float(d["fraction"]))
    raise ValueError(f"unknown leg kind {kind!r}")


@dataclass(frozen=True)
class Trajectory:
    agent: int
    legs: tuple[Leg, ...]
    start: tuple[float, float] = (float(T.O[0]), float(T.O[1]))

    @classmethod
    def through(cls, agent: int, *waypoints) -> "Trajectory":
        """Polyline plan O -> waypoints[0] -> ... (the leading O is implicit)."""
        return cls(agent, tuple(MoveTo((float(p[0]), float(p[1]))) for p in waypoints))

    def then(self, *legs: Leg) -> "Trajectory":
        return Trajectory(self.agent, self.legs + tuple(legs), self.start)

    @property
    def needs_context(self) -> bool:
        return any(not isinstance(leg, MoveTo) for leg in self.legs)

    def waypoints(self) -> list[np.ndarray]:
        pts = [point(*self.start)]
        for leg in self.legs:
            if isinstance(leg, MoveTo):
                pts.append(point(*leg.target))
        return pts

    def length(self) -> float:
        pts = self.waypoints()
        return sum(dist(p, q) for p, q in zip(pts, pts[1:]))

    def mirrored(self, agent: int, swap: dict[int, int] | None = None) -> "Trajectory":
        """Reflection about line AO.

        ``swap`` maps every agent referenced by a wait or tether leg to its
        mirror twin, so a tether between R_a and R_b becomes one between
        their twins at the same fraction.
        """
        swap = swap or {}
        legs = []
        for leg in self.legs:
            if isinstance(leg, MoveTo):
                legs.append(MoveTo((1.0 - leg.target[0], leg.target[1])))
            elif isinstance(leg, WaitFor):
                legs.append(WaitFor(swap.get(leg.agent, leg.agent), (1.0 - leg.at[0], leg.at[1])))
            else:
                legs.append(Tethered(swap.get(leg.anchor_a, leg.anchor_a),
                                     swap.get(leg.anchor_b, leg.anchor_b), leg.fraction))
        return Trajectory(agent, tuple(legs), (1.0 - self.start[0], self.start[1]))

    def to_json(self):
        return {"agent": self.agent, "start": list(self.start),
                "legs": [leg.to_json() for leg in self.legs]}

    @classmethod
    def from_json(cls, d) -> "Trajectory":
        return cls(int(d["agent"]), tuple(leg_from_json(x) for x in d["legs"]),
                   tuple(d.get("start", (float(T.O[0]), float(T.O[1])))))


class Motion:
    """Piecewise-linear position as a function of time; holds the last knot forever."""

    def __init__(self, times: Sequence[float], pts: Sequence):
        self.t = np.asarray(times, dtype=float)
        self.p = np.asarray(pts, dtype=float).reshape(-1, 2)
        if len(self.t) != len(self.p) or len(self.t) == 0:
            raise ValueError("times and points must be non-empty and aligned")
        if np.any(np.diff(self.t) < 0):
            raise ValueError("knot times must be nondecreasing")

    @property
    def end_time(self) -> float:
        return float(self.t[-1])

    @property
    def end(self) -> np.ndarray:
        return self.p[-1]

    def at(self, t):
        """Position at time ``t`` (scalar -> (2,), array -> (n, 2))."""
        x = np.interp(t, self.t, self.p[:, 0])
        y = np.interp(t, self.t, self.p[:, 1])
        if np.ndim(t) == 0:
            return np.array([x, y])
        return np.stack([x, y], axis=-1)

    def first_time_at(self, q, after: float = 0.0, tol: float = GEOM_TOL) -> float | None:
        """Earliest time >= ``after`` at which the motion passes through ``q``."""
        if dist(self.at(after), q) <= tol:
            return float(after)
        for k in range(len(self.t) - 1):
            t0, t1 = self.t[k], self.t[k + 1]
            if t1 <= after:
                continue
            f = point_on_segment(q, self.p[k], self.p[k + 1], tol)
            if f is None:
                continue
            tq = t0 + f * (t1 - t0)
            if tq >= after:
                return float(tq)
        return None

    def max_speed(self) -> float:
        dt = np.diff(self.t)
        dp = np.hypot(*np.diff(self.p, axis=0).T)
        moving = dt > 0
        if not np.any(moving):
            return 0.0
        return float(np.max(dp[moving] / dt[moving]))

    def segments(self):
        for k in range(len(self.t) - 1):
            yield self.t[k], self.t[k + 1], self.p[k], self.p[k + 1]


@dataclass
class _Builder:
    times: list = field(default_factory=list)
    pts: list = field(default_factory=list)
    marks: list = field(default_factory=list)

    @property
    def now(self):
        return self.times[-1]

    @property
    def here(self):
        return self.pts[-1]

    def push(self, t, p):
        if self.times and t == self.times[-1]:
            if dist(p, self.pts[-1]) > 1e-12:
                raise UnresolvablePlan("teleport in plan")
            return
        self.times.append(float(t))
        self.pts.append(np.asarray(p, dtype=float))


class Plan:
    """Resolved motions for a whole team.  Index ``i`` is agent ``i``."""

    def __init__(self, trajectories: Sequence[Trajectory]):
        self.trajectories = list(trajectories)
        for i, tr in enumerate(self.trajectories):
            if tr.agent != i:
                raise ValueError(f"trajectory {i} is labelled agent {tr.agent}")
        self.waypoint_times: list[list[float]] = [[] for _ in self.trajectories]
        self.motions: list[Motion] = self._resolve()

    @property
    def k(self) -> int:
        return len(self.motions)

    def _resolve(self) -> list[Motion]:
        n = len(self.trajectories)
        done: dict[int, Motion] = {}
        while len(done) < n:
            progressed = False
            for i, tr in enumerate(self.trajectories):
                if i in done:
                    continue
                deps = set()
                for leg in tr.legs:
                    if isinstance(leg, WaitFor):
                        deps.add(leg.agent)
                    elif isinstance(leg, Tethered):
                        deps.update((leg.anchor_a, leg.anchor_b))
                if deps - done.keys():
                    continue
                done[i] = self._build(i, tr, done)
                progressed = True
            if not progressed:
                raise UnresolvablePlan("cyclic wait/tether dependencies")
        return [done[i] for i in range(n)]

    def _build(self, i, tr: Trajectory, done: dict[int, Motion]) -> Motion:
        b = _Builder()
        b.push(0.0, point(*tr.start))
        marks = [0.0]
        for leg in tr.legs:
            if isinstance(leg, MoveTo):
                q = point(*leg.target)
                b.push(b.now + dist(b.here, q), q)
                marks.append(b.now)
            elif isinstance(leg, WaitFor):
                other = done[leg.agent]
                t_other = other.first_time_at(point(*leg.at))
                if t_other is None:
                    raise UnresolvablePlan(f"agent {leg.agent} never reaches {leg.at}")
                if dist(b.here, leg.at) > GEOM_TOL:
                    raise UnresolvablePlan(f"agent {i} waits away from the meeting point")
                if t_other > b.now:
                    b.push(t_other, b.here)
                marks.append(b.now)
            else:
                ma, mb = done[leg.anchor_a], done[leg.anchor_b]
                start = b.now
                anchor = (1 - leg.fraction) * ma.at(start) + leg.fraction * mb.at(start)
                if dist(anchor, b.here) > 1e-7:
                    raise UnresolvablePlan(
                        f"agent {i} tether starts {dist(anchor, b.here):.3g} off its chord")
                stop = max(ma.end_time, mb.end_time)
                knots = sorted({*ma.t, *mb.t, stop})
                for tk in knots:
                    if start < tk <= stop:
                        b.push(tk, (1 - leg.fraction) * ma.at(tk) + leg.fraction * mb.at(tk))
                marks.append(b.now)
        self.waypoint_times[i] = marks
        return Motion(b.times, b.pts)

    def position(self, agent: int, t: float) -> np.ndarray:
        return self.motions[agent].at(t)

    def positions(self, t: float) -> np.ndarray:
        return np.array([m.at(t) for m in self.motions])

    @property
    def end_time(self) -> float:
        return max(m.end_time for m in self.motions)


def position_at(traj: Trajectory, t: float, context: Plan | None = None) -> np.ndarray:
    """Position of ``traj``'s agent at time ``t``.

    Plans with waits or tethers depend on other agents, so they need the
    resolved team ``context``.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    if context is not None:
        return context.position(traj.agent, t)
    if traj.needs_context:
        raise MissingContext(f"agent {traj.agent} has wait/tether legs; pass the team plan")
    pts = traj.waypoints()
    times = np.concatenate([[0.0], np.cumsum([dist(p, q) for p, q in zip(pts, pts[1:])])])
    return Motion(times, pts).at(t)


def validate_speed(motion: Motion, dt: float = 1e-4, agent=None, limit: float = 1.0) -> float:
    """Largest finite-difference speed over the schedule, sampled every ``dt``."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    end = motion.end_time
    n = max(int(math.ceil(end / dt)), 1)
    ts = np.linspace(0.0, n * dt, n + 1)
    pos = motion.at(ts)
    speeds = np.hypot(*np.diff(pos, axis=0).T) / dt
    k = int(np.argmax(speeds)) if len(speeds) else 0
    vmax = float(speeds[k]) if len(speeds) else 0.0
    if vmax > limit + SPEED_TOL:
        raise SpeedViolation(agent, float(ts[k]), vmax)
    return vmax
