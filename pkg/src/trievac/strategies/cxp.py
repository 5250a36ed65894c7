"""Connect first, then explore: a team large enough to stay connected throughout.

Six explorers pair up at the vertices and each sweeps half of an incident
side toward its midpoint.  The remaining agents form evenly spaced relay
chains on AB and AC.  When an explorer walks past a relay, the relay peels
off parallel to the vertex's other side and ends on the medial triangle
exactly when exploration ends, at time 2y + 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..geometry import T, dist, lerp, unit
from ..simulator import Scenario
from ..trajectory import MoveTo, Plan, Trajectory, WaitFor


def relays_per_side(r: float) -> int:
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r}")
    # guard against 1/r landing a hair above an integer
    return max(0, math.ceil(1.0 / r - 1.0 - 1e-9))


def cxp_agents(r: float) -> int:
    return 6 + 2 * relays_per_side(r)


@dataclass
class CXPConfig:
    r: float
    k: int
    relays: int
    explorers: list[tuple[str, str]] = field(default_factory=list)  # (vertex, toward midpoint)
    relay_posts: list[np.ndarray] = field(default_factory=list)
    relay_stations: list[np.ndarray] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"r": self.r, "k": self.k, "relays_per_side": self.relays,
                "explorers": [list(e) for e in self.explorers],
                "relay_posts": [p.tolist() for p in self.relay_posts],
                "relay_stations": [p.tolist() for p in self.relay_stations]}


_NAMED = {"A": T.A, "B": T.B, "C": T.C}
# side, the vertex whose explorer sweeps each half, and the other side at that vertex
_SIDES = {"AB": ("A", "B"), "AC": ("A", "C")}
_OTHER = {("A", "AB"): "C", ("B", "AB"): "C", ("A", "AC"): "B", ("C", "AC"): "B"}


def build_cxp(r: float) -> tuple[CXPConfig, Scenario]:
    i = relays_per_side(r)
    k = 6 + 2 * i
    explorers = [("A", "B"), ("A", "C"), ("B", "A"), ("B", "C"), ("C", "A"), ("C", "B")]
    # relay j on side XY sits j/(i+1) of the way from X to Y
    relays = []
    for side, (X, Y_) in _SIDES.items():
        for j in range(1, i + 1):
            f = j / (i + 1)
            relays.append((side, X, Y_, f))

    # which explorer passes each relay, and how far from its vertex
    passes: dict[int, list[tuple[float, np.ndarray]]] = {e: [] for e in range(6)}
    posts, stations, relay_legs = [], [], []
    for side, X, Y_, f in relays:
        post = lerp(_NAMED[X], _NAMED[Y_], f)
        V, W, a = (X, Y_, f) if f < 0.5 else (Y_, X, 1.0 - f)
        posts.append(post)
        if a >= 0.5 - 1e-12:
            stations.append(post)
            relay_legs.append((MoveTo(tuple(post)),))
            continue
        e = explorers.index((V, W))
        passes[e].append((a, post))
        other = _NAMED[_OTHER[(V, side)]]
        station = post + (0.5 - a) * unit(other - _NAMED[V])
        stations.append(station)
        relay_legs.append((MoveTo(tuple(post)), WaitFor(e, tuple(post)), MoveTo(tuple(station))))

    trs = []
    for e, (V, W) in enumerate(explorers):
        mid = (_NAMED[V] + _NAMED[W]) / 2
        stops = [p for _, p in sorted(passes[e], key=lambda x: x[0])]
        trs.append(Trajectory.through(e, _NAMED[V], *stops, mid))
    for j, legs in enumerate(relay_legs):
        trs.append(Trajectory(6 + j, legs))
    cfg = CXPConfig(r, k, i, explorers, posts, stations)
    params = {f"relay{j}": p for j, p in enumerate(posts)}
    return cfg, Scenario(k, float(r), "CXP", tuple(trs), params)


def exploration_end(scenario: Scenario) -> float:
    """Time at which every explorer has finished its half side."""
    plan = Plan(scenario.trajectories)
    return max(plan.motions[e].end_time for e in range(6))


def station_reach(cfg: CXPConfig) -> float:
    """Longest walk from any relay station to any perimeter point (a vertex)."""
    return max(dist(s, v) for s in cfg.relay_stations for v in T.vertices)
