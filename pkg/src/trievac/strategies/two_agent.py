"""Two-agent trajectories: No-Detour and the one/two-detour refinements.

Both agents walk O -> M, then split.  R1 explores M -> B -> A, R2 the
mirror image M -> C -> A.  A detour leaves the perimeter at Q1 (on AB),
heads into the interior toward the partner's side, and comes back to Q1
if nothing was heard.  The detour points are chosen so that a finder on
the far side can always r-intercept the detouring agent in time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..geometry import T, Y, dist, lerp, reflect_ao, toward, unit
from ..simulator import Scenario
from ..trajectory import Trajectory

ONE_DETOUR_LIMIT = 0.7374048168
TWO_DETOUR_LIMIT = 0.472504


class Infeasible(ValueError):
    """The detour constraints have no admissible solution for these inputs."""


@dataclass
class TwoAgentParams:
    r: float
    detours: int
    bq1: float = 0.0
    bq3: float = 0.0  # |Q1Q3| for the second detour
    points: dict[str, np.ndarray] = field(default_factory=dict)
    times: dict[str, float] = field(default_factory=dict)

    def __getitem__(self, name):
        return self.points[name]

    def residuals(self) -> dict[str, float]:
        """Signed defects of every construction equation (all ~0 when valid)."""
        p, r = self.points, self.r
        if self.detours == 0:
            return {}
        out = {
            "J1": dist(T.B, p["Q1"]) + dist(p["Q1"], p["J1"]) - (dist(T.C, p["J1"]) - r),
            "P1": dist(p["Q1"], p["J1"]) + dist(p["J1"], p["P1"]) - (dist(p["Q2"], p["P1"]) - r),
            "Z": dist(p["Q1"], p["Z"]) + r - dist(p["Q2"], p["Z"]),
            "mirror": dist(reflect_ao(p["J1"]), p["J2"]) + dist(reflect_ao(p["P1"]), p["P2"]),
        }
        if self.detours == 2:
            out["J3"] = (dist(p["Q1"], p["Q3"]) + dist(p["Q3"], p["J3"])
                         - (dist(p["Q2"], p["J3"]) - r))
            out["P3"] = (dist(p["Q3"], p["J3"]) + dist(p["J3"], p["P3"])
                         - (dist(p["Q4"], p["P3"]) - r))
            out["V"] = dist(p["Q3"], p["V"]) - (dist(p["V"], p["Q4"]) - r)
        return out

    def to_json(self) -> dict:
        return {"r": self.r, "detours": self.detours, "bq1": self.bq1, "q1q3": self.bq3,
                "points": {k: v.tolist() for k, v in self.points.items()},
                "times": dict(self.times)}


def _equal_reach(Qa, Qb, r):
    """Point Z on the ray Qa -> A with |Qa Z| + r = |Qb Z|."""
    u = unit(T.A - Qa)
    D = Qb - Qa
    w = (float(D @ D) - r * r) / (2.0 * (float(D @ u) + r))
    if w < 0:
        raise Infeasible("equal-reach point falls behind its host segment")
    return Qa + w * u, w


def _detour(Qa, Qb, Qb_twin, lead: float, r: float):
    """Detour from ``Qa`` aimed at ``Qb`` with lead distance ``lead``.

    J lies on Qa -> Qb with lead + |Qa J| = |Qb J| - r; P lies on J -> Qb_twin
    with |Qa J| + |J P| = |Qb_twin P| - r.
    """
    x = (dist(Qa, Qb) - lead - r) / 2.0
    if x < -1e-9:
        raise Infeasible(f"|QJ| would be negative ({x:.3g})")
    x = max(x, 0.0)
    J = toward(Qa, Qb, x) if x > 0 else Qa.copy()
    z = (dist(J, Qb_twin) - x - r) / 2.0
    if z < -1e-9:
        raise Infeasible(f"|JP| would be negative ({z:.3g})")
    z = max(z, 0.0)
    P = toward(J, Qb_twin, z) if z > 0 else J.copy()
    return J, P, x, z


def solve_detour_points(r: float, bq1: float) -> TwoAgentParams:
    """J1, P1, Z (and mirrors) for a single detour leaving AB at |BQ1| = bq1."""
    if not 0.0 <= bq1 < 1.0:
        raise ValueError(f"|BQ1| must lie in [0, 1), got {bq1}")
    Q1 = lerp(T.B, T.A, bq1)
    Q2 = reflect_ao(Q1)
    J1, P1, x, z = _detour(Q1, T.C, Q2, bq1, r)
    Z, w = _equal_reach(Q1, Q2, r)
    base = Y + 0.5 + bq1
    t1 = base + dist(Q1, T.C)
    back = base + x + z + dist(P1, Q1)
    t2 = back + w + dist(Z, Q2)
    pts = {"Q1": Q1, "Q2": Q2, "J1": J1, "J2": reflect_ao(J1), "P1": P1,
           "P2": reflect_ao(P1), "Z": Z, "Z2": reflect_ao(Z)}
    return TwoAgentParams(r, 1, bq1, 0.0, pts, {"t1": t1, "t2": t2, "back": back})


def _bisect(f, lo, hi, tol):
    flo = f(lo)
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _feasible_q_range(r, build):
    """Largest bq1 interval [0, qmax) on which ``build`` succeeds."""
    try:
        build(0.0)
    except Infeasible:
        raise Infeasible(f"no feasible detour at r={r}") from None

    def ok(q):
        try:
            build(q)
            return -1.0
        except Infeasible:
            return 1.0
    if ok(0.999) < 0:
        return 0.999
    return _bisect(ok, 0.0, 0.999, 1e-12) - 1e-12


def optimize_one_detour(r: float, tol: float = 1e-10) -> tuple[TwoAgentParams, float]:
    """Choose |BQ1| so that the two critical times t1 and t2 agree."""
    if r > ONE_DETOUR_LIMIT + 1e-9:
        raise Infeasible(f"a detour does not help for r > {ONE_DETOUR_LIMIT}")
    qmax = _feasible_q_range(r, lambda q: solve_detour_points(r, q))
    gap = lambda q: (lambda p: p.times["t1"] - p.times["t2"])(solve_detour_points(r, q))
    if gap(qmax) < 0:
        q = qmax
    else:
        q = _bisect(gap, 0.0, qmax, tol)
    p = solve_detour_points(r, q)
    return p, max(p.times["t1"], p.times["t2"])


def solve_two_detour(r: float, bq1: float, q1q3: float) -> TwoAgentParams:
    """Both detours for given |BQ1| and |Q1Q3|."""
    p = solve_detour_points(r, bq1)
    Q1, Q2 = p["Q1"], p["Q2"]
    if not 0.0 <= q1q3 <= dist(Q1, T.A):
        raise Infeasible("Q3 must lie on Q1A")
    Q3 = toward(Q1, T.A, q1q3) if q1q3 > 0 else Q1.copy()
    Q4 = reflect_ao(Q3)
    J3, P3, x3, z3 = _detour(Q3, Q2, Q4, q1q3, r)
    V, v = _equal_reach(Q3, Q4, r)
    T1 = p.times["back"]
    t2 = T1 + q1q3 + dist(Q3, Q2)
    t3 = T1 + q1q3 + x3 + z3 + dist(P3, Q3) + v + dist(V, Q4)
    p.detours, p.bq3 = 2, q1q3
    p.points.update({"Q3": Q3, "Q4": Q4, "J3": J3, "J4": reflect_ao(J3), "P3": P3,
                     "P4": reflect_ao(P3), "V": V, "V2": reflect_ao(V)})
    p.times.update({"t2": t2, "t3": t3, "t2_one": p.times["t2"]})
    return p


def _inner(r, q, tol):
    """|Q1Q3| equating the second and third critical times for fixed |BQ1|."""
    Q1 = lerp(T.B, T.A, q)
    amax = dist(Q1, T.A)

    def gap(a):
        try:
            p = solve_two_detour(r, q, a)
        except Infeasible:
            return 1.0
        return p.times["t2"] - p.times["t3"]
    if gap(0.0) > 0:
        return 0.0
    hi = amax
    if gap(hi) < 0:
        return hi
    return _bisect(gap, 0.0, hi, tol)


def optimize_two_detour(r: float, tol: float = 1e-10,
                        guard: bool = True) -> tuple[TwoAgentParams, float]:
    """Nested bisection: inner on |Q1Q3| (t2 = t3), outer on |BQ1| (t1 = max(t2, t3)).

    With ``guard`` off the construction is attempted past the range where a
    second detour pays off, which is how that range is measured.
    """
    if guard and r > TWO_DETOUR_LIMIT + 1e-9:
        raise Infeasible(f"a second detour does not help for r > {TWO_DETOUR_LIMIT}")
    if r <= 0:
        raise Infeasible("a second detour needs a positive range")
    qmax = _feasible_q_range(r, lambda q: solve_detour_points(r, q))

    def build(q):
        return solve_two_detour(r, q, _inner(r, q, tol))

    def gap(q):
        try:
            p = build(q)
        except Infeasible:
            return 1.0
        return p.times["t1"] - max(p.times["t2"], p.times["t3"])
    q = _bisect(gap, 0.0, qmax, tol)
    p = build(q)
    return p, max(p.times["t1"], p.times["t2"], p.times["t3"])


def two_detour_gain(r: float) -> float:
    """How much a second detour saves over the best single detour (negative: it hurts)."""
    return optimize_one_detour(r)[1] - optimize_two_detour(r, guard=False)[1]


def _scenario(r, strategy, r1_points, params) -> Scenario:
    R1 = Trajectory.through(0, *r1_points)
    R2 = R1.mirrored(1)
    return Scenario(2, float(r), strategy, (R1, R2), params)


def build_no_detour(r: float) -> Scenario:
    return _scenario(r, "NoDetour", [T.M1, T.B, T.A], {})


def one_detour_scenario(p: TwoAgentParams) -> Scenario:
    q = p.points
    path = [T.M1, T.B, q["Q1"], q["J1"], q["P1"], q["Q1"], T.A]
    return _scenario(p.r, "OneDetour", path, {k: v for k, v in q.items()})


def two_detour_scenario(p: TwoAgentParams) -> Scenario:
    q = p.points
    path = [T.M1, T.B, q["Q1"], q["J1"], q["P1"], q["Q1"],
            q["Q3"], q["J3"], q["P3"], q["Q3"], T.A]
    return _scenario(p.r, "TwoDetour", path, {k: v for k, v in q.items()})


def no_detour_closed_form(r: float) -> float:
    return Y + 0.5 + r + 2.0 * (1.0 - r * r) / (2.0 * r + 1.0)
