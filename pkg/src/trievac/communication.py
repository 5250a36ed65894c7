"""Range-r communication: range graphs, relayed reachability, r-interception."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import GEOM_TOL, dist
from .trajectory import Motion

RANGE_TOL = 1e-9


class NoInterception(RuntimeError):
    pass


@dataclass(frozen=True)
class RangeGraph:
    positions: np.ndarray
    r: float
    adjacency: np.ndarray

    @property
    def k(self) -> int:
        return len(self.positions)

    def edges(self) -> list[tuple[int, int]]:
        ii, jj = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(ii.tolist(), jj.tolist()))

    def components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps = []
        for s in range(self.k):
            if s not in seen:
                comp = informed_set(s, self)
                seen |= comp
                comps.append(comp)
        return comps

    @property
    def connected(self) -> bool:
        return len(informed_set(0, self)) == self.k


def adjacency(positions: np.ndarray, r: float) -> np.ndarray:
    P = np.asarray(positions, dtype=float)
    d = np.hypot(P[:, None, 0] - P[None, :, 0], P[:, None, 1] - P[None, :, 1])
    return d <= r + RANGE_TOL


def range_graph(positions, r: float) -> RangeGraph:
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"communication range must lie in [0, 1], got {r}")
    P = np.asarray(positions, dtype=float).reshape(-1, 2)
    return RangeGraph(P, float(r), adjacency(P, r))


def informed_set(finder: int, graph: RangeGraph) -> set[int]:
    """Agents reached by a broadcast from ``finder``: its connected component."""
    adj = graph.adjacency
    reached = {finder}
    frontier = [finder]
    while frontier:
        i = frontier.pop()
        for j in np.nonzero(adj[i])[0].tolist():
            if j not in reached:
                reached.add(j)
                frontier.append(j)
    return reached


@dataclass(frozen=True)
class InterceptionResult:
    time: float
    U: np.ndarray
    target_point: np.ndarray


def _first_root_on_piece(w, v, c, L):
    """Smallest tau in [0, L] with |w - v tau| <= tau + c, or None.

    The gap |w - v tau| - tau - c is convex in tau, so once it is positive
    at tau = 0 the admissible set is an interval starting at a root.
    """
    g0 = math.hypot(w[0], w[1]) - c
    if g0 <= 0:
        return 0.0
    a = float(v @ v) - 1.0
    b = -2.0 * (float(w @ v) + c)
    cc = float(w @ w) - c * c
    roots = []
    if abs(a) < 1e-14:
        if abs(b) > 1e-300:
            roots.append(-cc / b)
    else:
        disc = b * b - 4 * a * cc
        if disc >= 0:
            sq = math.sqrt(disc)
            # numerically stable pair
            qv = -0.5 * (b + math.copysign(sq, b))
            if qv != 0:
                roots.extend([qv / a, cc / qv])
            else:
                roots.append(0.0)
    for tau in sorted(roots):
        if -1e-12 <= tau <= L + 1e-12 and tau + c >= -1e-12:
            tau = min(max(tau, 0.0), L)
            if math.hypot(*(w - v * tau)) - tau - c <= 1e-9:
                return tau
    return None


def earliest_interception(finder_pos, t0: float, target: Motion, r: float,
                          horizon: float = 10.0) -> InterceptionResult:
    """First time ``t >= t0`` at which a unit-speed finder leaving ``finder_pos``
    at ``t0`` can be within ``r`` of ``target``.

    Straight target pieces are solved in closed form (a quadratic per piece);
    after its last knot the target is stationary.
    """
    P = np.asarray(finder_pos, dtype=float)
    knots = target.t
    # pieces starting at t0
    times = [t0] + [float(t) for t in knots if t > t0] + [max(t0, target.end_time) + horizon]
    for ta, tb in zip(times, times[1:]):
        pa = target.at(ta)
        pb = target.at(tb) if tb <= target.end_time else target.end
        L = tb - ta
        v = (pb - pa) / L if L > 0 else np.zeros(2)
        w = P - pa
        c = (ta - t0) + r
        tau = _first_root_on_piece(w, v, c, L)
        if tau is None:
            continue
        t = ta + tau
        tp = target.at(t)
        travel = t - t0
        d = dist(P, tp)
        U = P.copy() if d <= r + RANGE_TOL or travel <= 0 else P + (tp - P) * (travel / d)
        return InterceptionResult(float(t), U, tp)
    raise NoInterception("target never comes within reach of the finder")


def interception_oracle(finder_pos, t0: float, target: Motion, r: float,
                        dt: float = 1e-6, horizon: float = 5.0) -> float:
    """Brute-force time stepping: first grid time where the reach condition holds.

    The reach gap changes at rate at most 2, so a coarse grid can only skip a
    root inside a cell whose left end sits within 2 * coarse of zero; just
    those cells are re-stepped at ``dt``.
    """
    P = np.asarray(finder_pos, dtype=float)

    def gap(ts):
        pos = target.at(ts)
        return np.hypot(pos[:, 0] - P[0], pos[:, 1] - P[1]) - (ts - t0) - r

    coarse = max(dt, 1e-3)
    tc = t0 + coarse * np.arange(int(math.ceil(horizon / coarse)) + 1)
    for i in np.nonzero(gap(tc) <= 2 * coarse)[0]:
        ts = tc[i] + dt * np.arange(int(round(coarse / dt)) + 1)
        hit = np.nonzero(gap(ts) <= 0)[0]
        if len(hit):
            return float(ts[hit[0]])
    raise NoInterception("oracle found no interception within horizon")


class ConnectivityTimeline:
    """Times at which a team's range graph is connected, computed exactly.

    Every motion is piecewise linear, so each pairwise distance is the square
    root of a quadratic on each common piece; adjacency flips only at the
    roots.  The graph is checked on every elementary interval and at every
    flip time, giving the connected set as a sorted union of closed intervals.
    """

    def __init__(self, motions: list[Motion], r: float):
        self.r = float(r)
        self.motions = motions
        k = len(motions)
        knots = sorted({float(t) for m in motions for t in m.t})
        end = knots[-1]
        events = set(knots)
        rr = (self.r + RANGE_TOL / 2) ** 2
        for i in range(k):
            for j in range(i + 1, k):
                for ta, tb in zip(knots, knots[1:]):
                    if tb <= ta:
                        continue
                    d0 = motions[i].at(ta) - motions[j].at(ta)
                    d1 = motions[i].at(tb) - motions[j].at(tb)
                    dv = (d1 - d0) / (tb - ta)
                    a = float(dv @ dv)
                    b = 2 * float(d0 @ dv)
                    c = float(d0 @ d0) - rr
                    if a < 1e-18:
                        continue
                    disc = b * b - 4 * a * c
                    if disc < 0:
                        continue
                    sq = math.sqrt(disc)
                    for tau in ((-b - sq) / (2 * a), (-b + sq) / (2 * a)):
                        if 0 < tau < tb - ta:
                            events.add(ta + tau)
        ev = np.array(sorted(events))
        self.events = ev
        probes = np.concatenate([ev, (ev[:-1] + ev[1:]) / 2, [end + 1.0]])
        order = np.argsort(probes, kind="stable")
        probes = probes[order]
        ok = self._connected_at(probes)
        # assemble closed intervals [start, stop]
        intervals = []
        cur = None
        for t, c in zip(probes, ok):
            if c and cur is None:
                cur = [t, t]
            elif c:
                cur[1] = t
            elif cur is not None:
                intervals.append(tuple(cur))
                cur = None
        if cur is not None:
            intervals.append((cur[0], math.inf))
        self.intervals = intervals
        self._starts = np.array([a for a, _ in intervals]) if intervals else np.zeros(0)

    def _connected_at(self, ts: np.ndarray) -> np.ndarray:
        pos = np.stack([m.at(ts) for m in self.motions], axis=1)  # (n, k, 2)
        diff = pos[:, :, None, :] - pos[:, None, :, :]
        adj = np.hypot(diff[..., 0], diff[..., 1]) <= self.r + RANGE_TOL
        k = adj.shape[1]
        reach = np.zeros(adj.shape[:2], dtype=bool)
        reach[:, 0] = True
        for _ in range(k):
            new = reach | np.any(adj & reach[:, None, :], axis=2)
            if np.array_equal(new, reach):
                break
            reach = new
        return reach.all(axis=1)

    def next_connected(self, t: float) -> float:
        """Earliest time >= ``t`` at which the whole team is connected."""
        for a, b in self.intervals:
            if b >= t - 1e-12:
                return max(a, t)
        raise NoInterception("team never becomes connected")

    def connected_at(self, t: float) -> bool:
        return bool(self._connected_at(np.array([t]))[0])
