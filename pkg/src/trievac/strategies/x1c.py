"""Explore-one-side-then-connect teams of three and four agents.

The whole team first sweeps BC.  When BC is done the agents are placed so
that their range graph is connected, and from then on two agents climb AB
and AC while the rest keep the link between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from ..geometry import SQRT3, T, Y, dist, lerp, point
from ..simulator import Scenario
from ..trajectory import Tethered, Trajectory

X1C3_BREAKS = (0.5, 2.0 / 3.0)
X1C4_BREAKS = (1.0 / 3.0, 0.6436493404)


@dataclass
class X1CParams:
    k: int
    r: float
    case: int
    points: dict[str, np.ndarray] = field(default_factory=dict)
    tether: dict[int, float] = field(default_factory=dict)  # relay -> chord fraction
    evac: float = math.nan

    def __getitem__(self, name):
        return self.points[name]

    def residuals(self) -> dict[str, float]:
        p, r = self.points, self.r
        if self.k == 3 and self.case == 1:
            a = dist(p["P1"], T.B) + dist(T.B, p["Q2"])
            b = dist(p["P1"], p["P2"]) + dist(p["P2"], p["Q1"])
            return {"meet": a - b, "Q1Q2": dist(p["Q1"], p["Q2"]) - r}
        if self.k == 3 and self.case == 2:
            return {"meet": dist(T.B, p["P1"]) - dist(p["P1"], p["P2"]) - dist(p["P2"], p["Q1"]),
                    "BQ1": dist(T.B, p["Q1"]) - r}
        if self.k == 3:
            return {"meet": dist(T.B, p["P1"]) - dist(p["P1"], p["P2"])}
        lhs = Y + dist(T.M1, p["P1"]) + dist(p["P1"], p["Q2"])
        rhs = dist(T.O, p["P1"]) + dist(p["P1"], T.B)
        if self.case == 1:
            rhs += dist(T.B, p["Q1"])
            return {"meet": lhs - rhs, "Q1Q2": dist(p["Q1"], p["Q2"]) - r}
        if self.case == 2:
            return {"meet": lhs - rhs, "M1Q2": dist(T.M1, p["Q2"]) - r / 2}
        return {"meet": lhs - rhs}

    def to_json(self) -> dict:
        return {"k": self.k, "r": self.r, "case": self.case, "evac": self.evac,
                "tether": {str(k): v for k, v in self.tether.items()},
                "points": {k: v.tolist() for k, v in self.points.items()}}


def x1c3_case(r: float) -> int:
    return 1 if r < X1C3_BREAKS[0] else 2 if r < X1C3_BREAKS[1] else 3


def x1c4_case(r: float) -> int:
    return 1 if r < X1C4_BREAKS[0] else 2 if r < X1C4_BREAKS[1] else 3


def _x1c3(r: float) -> X1CParams:
    case = x1c3_case(r)
    if case == 1:
        # Q2, Q3 at 2r from A; Q1 is the midpoint of Q2Q3, so |AQ1| = sqrt(3) r
        Q2 = lerp(T.A, T.B, 2 * r)
        Q3 = lerp(T.A, T.C, 2 * r)
        Q1 = point(0.5, T.h - SQRT3 * r)

        def gap(p):
            return (1 - p) / 2 + (1 - 2 * r) - p - math.hypot(Q1[1], p / 2)
        pp = brentq(gap, 0.0, 1.0, xtol=1e-15)
        P1, P2 = point(0.5 - pp / 2, 0), point(0.5 + pp / 2, 0)
        evac = dist(T.O, P1) + (1 - pp) / 2 + (1 - 2 * r) + dist(Q2, T.C)
        return X1CParams(3, r, 1, dict(P1=P1, P2=P2, Q1=Q1, Q2=Q2, Q3=Q3), {}, evac)
    if case == 2:
        P1, P2, Q1 = point(0.5 - r / 4, 0), point(0.5 + r / 4, 0), point(r, 0)
        evac = math.hypot(Y, r / 4) + (0.5 - r / 4) + 1
        return X1CParams(3, r, 2, dict(P1=P1, P2=P2, Q1=Q1), {}, evac)
    P1, P2 = point(1 / 3, 0), point(2 / 3, 0)
    evac = math.hypot(Y, 1 / 6) + 1 / 3 + 1
    return X1CParams(3, r, 3, dict(P1=P1, P2=P2, Q1=P2.copy()), {}, evac)


def _x1c4(r: float) -> X1CParams:
    case = x1c4_case(r)
    B, M1 = T.B, T.M1
    if case == 1:
        Q1 = lerp(T.A, T.B, 3 * r)
        Q2 = Q1 + point(r, 0)
        bq1 = 1 - 3 * r

        def gap(x):
            P1 = point(0.5 - x, 0)
            return Y + x + dist(P1, Q2) - (math.hypot(Y, x) + 0.5 - x + bq1)
        x = brentq(gap, 0.0, 0.5, xtol=1e-15)
        T_meet = math.hypot(Y, x) + 0.5 - x + bq1
        evac = T_meet + dist(Q1, T.C)
        fr = (1 / 3, 2 / 3)
    elif case == 2:
        Q2 = point(0.5 - r / 2, 0)
        x = brentq(lambda x: Y + x + (x - r / 2) - (math.hypot(Y, x) + 0.5 - x),
                   r / 2, 0.5, xtol=1e-15)
        evac = math.hypot(Y, x) + 0.5 - x + 1
        Q1 = B.copy()
        fr = (0.5 - r / 2, 0.5 + r / 2)
    else:
        x = brentq(lambda x: Y + x - (math.hypot(Y, x) + 0.5 - x), 0.0, 0.5, xtol=1e-15)
        Q2 = point(0.5 - x, 0)
        Q1 = B.copy()
        evac = Y + x + 1
        fr = (0.5 - x, 0.5 + x)
    P1 = point(0.5 - x, 0)
    pts = dict(P1=P1, P2=point(0.5 + x, 0), Q1=Q1, Q2=Q2,
               Q3=point(1 - Q2[0], Q2[1]), Q4=point(1 - Q1[0], Q1[1]))
    return X1CParams(4, r, case, pts, {1: fr[0], 2: fr[1]}, evac)


def build_x1c(k: int, r: float) -> tuple[X1CParams, float]:
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r}")
    if k == 3:
        p = _x1c3(r)
    elif k == 4:
        p = _x1c4(r)
    else:
        raise ValueError("X1C is defined for three or four agents")
    return p, p.evac


def x1c_scenario(p: X1CParams) -> Scenario:
    q = p.points
    A, B, C, M1 = T.A, T.B, T.C, T.M1
    if p.k == 3:
        R1 = Trajectory.through(0, q["P1"], B, A)
        R3 = R1.mirrored(2)
        R2 = Trajectory.through(1, q["P1"], q["P2"], q["Q1"], A)
        trs = (R1, R2, R3)
        name = "X1C3"
    else:
        R1 = Trajectory.through(0, q["P1"], B, A)
        R4 = R1.mirrored(3)
        R2 = Trajectory.through(1, M1, q["P1"], q["Q2"]).then(Tethered(0, 3, p.tether[1]))
        R3 = R2.mirrored(2, {0: 3, 3: 0})
        trs = (R1, R2, R3, R4)
        name = "X1C4"
    return Scenario(p.k, p.r, name, trs, dict(q))
