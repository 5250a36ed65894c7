"""Explore-three-then-connect teams of three and four agents.

Every agent explores its own stretch of the perimeter and then walks to an
interior meeting point.  The meeting points are pairwise close enough for
the team to be connected, and all agents reach them at the same instant.
One stretch of BC is left for after the meeting: one agent explores it
while the others gather at its midpoint P3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar, root

from ..geometry import T, dist, point, unit
from ..simulator import Scenario
from ..trajectory import Trajectory, WaitFor, MoveTo
from .two_agent import Infeasible

ORDERING_LIMIT_4 = 0.11619


@dataclass
class X3CParams:
    k: int
    r: float
    points: dict[str, np.ndarray] = field(default_factory=dict)
    t_meet: float = math.nan
    design_r: float = math.nan  # range the meeting layout was sized for
    degraded: bool = False

    def __getitem__(self, name):
        return self.points[name]

    def meet_times(self) -> list[float]:
        return _times(self.k, self.points)

    def residuals(self) -> dict[str, float]:
        p = self.points
        ts = self.meet_times()
        out = {f"t{i + 1}": t - ts[0] for i, t in enumerate(ts)}
        if self.k == 3:
            out["balance"] = dist(p["J2"], T.B) - dist(p["J3"], p["P1"]) - dist(p["P1"], p["P2"])
        else:
            out["balance"] = dist(p["J1"], p["P1"]) + dist(p["P1"], p["P2"]) - dist(p["J1"], T.C)
        return out

    def to_json(self) -> dict:
        return {"k": self.k, "r": self.r, "t_meet": self.t_meet, "design_r": self.design_r,
                "degraded": self.degraded,
                "points": {k: v.tolist() for k, v in self.points.items()}}


def meeting_points(k: int, r: float) -> list[np.ndarray]:
    O = T.O
    if k == 3:
        # equilateral triangle of side r centred at O, each vertex aimed at the
        # midpoint of the side its agent finished on
        d = r / math.sqrt(3.0)
        return [O + d * unit(T.M3 - O), O + d * unit(T.M2 - O), O + d * unit(T.M1 - O)]
    # star: R2 sits at O, the others at distance r toward B, A and C
    return [O + r * unit(T.B - O), O.copy(), O + r * unit(T.A - O), O + r * unit(T.C - O)]


def _points(k, r, b1, v) -> dict[str, np.ndarray]:
    J = meeting_points(k, r)
    pts = {f"J{i + 1}": j for i, j in enumerate(J)}
    if k == 3:
        q1, c2, b2 = v
        pts.update(P1=point(b1, 0), P2=point(b2, 0), Q1=q1 * T.A, Q2=T.C + c2 * (T.A - T.C))
    else:
        q1, q2, c3, b2 = v
        pts.update(P1=point(b1, 0), P2=point(b2, 0), Q1=q1 * T.A, Q2=q2 * T.A,
                   Q3=T.C + c3 * (T.A - T.C))
    pts["P3"] = (pts["P1"] + pts["P2"]) / 2
    return pts


def _times(k, p) -> list[float]:
    O, A, B, C = T.O, T.A, T.B, T.C
    if k == 3:
        return [dist(O, p["P1"]) + dist(p["P1"], B) + dist(B, p["Q1"]) + dist(p["Q1"], p["J1"]),
                dist(O, p["Q1"]) + dist(p["Q1"], A) + dist(A, p["Q2"]) + dist(p["Q2"], p["J2"]),
                dist(O, p["Q2"]) + dist(p["Q2"], C) + dist(C, p["P2"]) + dist(p["P2"], p["J3"])]
    return [dist(O, p["Q1"]) + dist(p["Q1"], B) + dist(B, p["P1"]) + dist(p["P1"], p["J1"]),
            dist(O, p["Q1"]) + dist(p["Q1"], p["Q2"]) + dist(p["Q2"], p["J2"]),
            dist(O, p["Q2"]) + dist(p["Q2"], A) + dist(A, p["Q3"]) + dist(p["Q3"], p["J3"]),
            dist(O, p["Q3"]) + dist(p["Q3"], C) + dist(C, p["P2"]) + dist(p["P2"], p["J4"])]


def _equations(k, r, b1):
    def f(v):
        p = _points(k, r, b1, v)
        ts = _times(k, p)
        eq = [ts[i] - ts[i + 1] for i in range(k - 1)]
        if k == 3:
            eq.append(dist(p["J2"], T.B) - dist(p["J3"], p["P1"]) - dist(p["P1"], p["P2"]))
        else:
            eq.append(dist(p["J1"], p["P1"]) + dist(p["P1"], p["P2"]) - dist(p["J1"], T.C))
        return eq
    return f


_GUESS = {3: (0.5, 0.5, 0.7), 4: (0.3, 0.6, 0.5, 0.8)}


def solve_x3c(k: int, r: float, b1: float, guess=None) -> X3CParams:
    """Impose equal meeting times and the balance equation for a given |BP1|."""
    if k not in (3, 4):
        raise ValueError("X3C is defined for three or four agents")
    sol = root(_equations(k, r, b1), guess if guess is not None else _GUESS[k],
               method="hybr", options={"xtol": 1e-13})
    if not sol.success or np.max(np.abs(sol.fun)) > 1e-10:
        raise Infeasible(f"X3C({k}) constraints unsolvable at r={r}, |BP1|={b1}")
    v = sol.x
    p = _points(k, r, b1, v)
    inside = [v[0], v[1], v[2]] + ([v[3]] if k == 4 else [])
    if min(inside) < 0 or max(inside) > 1 or not 0 <= b1 < p["P2"][0] <= 1:
        raise Infeasible("X3C split points fall off their sides")
    t = _times(k, p)[0]
    return X3CParams(k, r, p, t, r)


def x3c_objective(p: X3CParams) -> float:
    """Analytic worst case: meeting time plus the longest walk still needed."""
    J = [p[f"J{i + 1}"] for i in range(p.k)]
    tail = dist(p["P3"], p["P2"])
    if p.k == 3:
        late = max(dist(J[0], p["P3"]), dist(J[1], p["P3"])) + tail
        return p.t_meet + max(dist(p["J2"], T.B), late)
    reach = max(dist(j, v) for j in J for v in T.vertices)
    # agents who reach P3 after R1 has passed trail it to P2
    late = max(dist(j, p["P3"]) for j in J[1:]) + tail
    return p.t_meet + max(reach, dist(p["J1"], T.C), late)


def late_waiters(p: X3CParams) -> list[int]:
    """Agents that reach P3 only after the explorer of P1P2 has gone by."""
    explorer = 2 if p.k == 3 else 0
    J = [p[f"J{i + 1}"] for i in range(p.k)]
    if p.k == 3:
        t_pass = dist(J[2], p["P1"]) + dist(p["P1"], p["P3"])
    else:
        t_pass = dist(J[0], p["P1"]) + dist(p["P1"], p["P3"])
    return [i for i in range(p.k) if i != explorer and dist(J[i], p["P3"]) > t_pass + 1e-12]


def _best_b1(k, r):
    def f(b1):
        try:
            return x3c_objective(solve_x3c(k, r, b1))
        except Infeasible:
            return 9.0
    res = minimize_scalar(f, bounds=(0.01, 0.6), method="bounded", options={"xatol": 1e-9})
    if res.fun >= 9.0:
        raise Infeasible(f"X3C({k}) has no feasible layout at r={r}")
    return float(res.x), float(res.fun)


def optimize_x3c(k: int, r: float) -> tuple[X3CParams, float]:
    """Best layout by the analytic objective.

    For four agents the layout may be sized for a smaller range than the
    available one, since a team connected at range r' <= r is connected at r.
    """
    if k == 3:
        b1, val = _best_b1(3, r)
        p = solve_x3c(3, r, b1)
        p.degraded = bool(late_waiters(p))
        return p, val
    res = minimize_scalar(lambda rr: _best_b1(4, rr)[1], bounds=(0.0, r), method="bounded",
                          options={"xatol": 1e-6}) if r > 0 else None
    cands = [0.0 if r == 0 else r]
    if res is not None:
        cands.append(float(res.x))
    best = min(cands, key=lambda rr: _best_b1(4, rr)[1])
    b1, val = _best_b1(4, best)
    p = solve_x3c(4, best, b1)
    p.r = r
    p.design_r = best
    p.degraded = bool(late_waiters(p))
    return p, val


def x3c_scenario(p: X3CParams) -> Scenario:
    q = {k: tuple(v) for k, v in p.points.items()}
    mv = lambda *names: tuple(MoveTo(q[n] if isinstance(n, str) else tuple(n)) for n in names)
    A, B, C = tuple(T.A), tuple(T.B), tuple(T.C)
    if p.k == 3:
        legs = [
            mv("P1", B, "Q1", "J1", "P3") + (WaitFor(2, q["P3"]),) + mv("P2"),
            mv("Q1", A, "Q2", "J2", "P3") + (WaitFor(2, q["P3"]),) + mv("P2"),
            mv("Q2", C, "P2", "J3", "P1", "P3", "P2"),
        ]
        name = "X3C3"
    else:
        legs = [
            mv("Q1", B, "P1", "J1", "P1", "P3", "P2"),
            mv("Q1", "Q2", "J2", "P3") + (WaitFor(0, q["P3"]),) + mv("P2"),
            mv("Q2", A, "Q3", "J3", "P3") + (WaitFor(0, q["P3"]),) + mv("P2"),
            mv("Q3", C, "P2", "J4", "P3") + (WaitFor(0, q["P3"]),) + mv("P2"),
        ]
        name = "X3C4"
    trs = tuple(Trajectory(i, l) for i, l in enumerate(legs))
    return Scenario(p.k, p.r, name, trs, dict(p.points))
