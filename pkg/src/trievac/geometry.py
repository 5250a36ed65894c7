"""Unit equilateral triangle, planar helpers and the perimeter parametrization.

Frame: B = (0, 0), C = (1, 0), A = (1/2, sqrt(3)/2).  Midpoints follow the
"opposite vertex" naming: M1 on BC, M2 on CA, M3 on AB.  Perimeter arc length
``s`` runs A -> B -> C -> A with one unit per side, so ``s`` lives in [0, 3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

GEOM_TOL = 1e-9
SIM_TOL = 1e-6

SQRT3 = math.sqrt(3.0)


class OffPerimeter(ValueError):
    """Raised when a point that should lie on the boundary of T does not."""


def point(x: float, y: float) -> np.ndarray:
    return np.array([float(x), float(y)])


def dist(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = math.hypot(v[0], v[1])
    if n == 0.0:
        raise ValueError("zero vector has no direction")
    return v / n


def lerp(p, q, f: float) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    return p + f * (np.asarray(q, dtype=float) - p)


def toward(p, q, d: float) -> np.ndarray:
    """Point at distance ``d`` from ``p`` on the ray p -> q."""
    return np.asarray(p, dtype=float) + d * unit(np.asarray(q, dtype=float) - p)


def third_side(a: float, b: float, angle: float) -> float:
    """Law of cosines: side opposite ``angle`` in a triangle with sides a, b."""
    if a < 0 or b < 0:
        raise ValueError(f"side lengths must be nonnegative, got {a}, {b}")
    return math.sqrt(max(a * a + b * b - 2.0 * a * b * math.cos(angle), 0.0))


def reflect_ao(p) -> np.ndarray:
    """Mirror image in the symmetry axis through A and O (the line x = 1/2)."""
    return point(1.0 - p[0], p[1])


def point_on_segment(p, a, b, tol: float = GEOM_TOL) -> float | None:
    """Fraction along a -> b at which ``p`` lies, or None if it is off the segment."""
    a = np.asarray(a, dtype=float)
    d = np.asarray(b, dtype=float) - a
    L2 = float(d @ d)
    w = np.asarray(p, dtype=float) - a
    if L2 == 0.0:
        return 0.0 if math.hypot(w[0], w[1]) <= tol else None
    f = float(w @ d) / L2
    L = math.sqrt(L2)
    if f < -tol / L or f > 1 + tol / L:
        return None
    f = min(max(f, 0.0), 1.0)
    off = w - f * d
    if math.hypot(off[0], off[1]) > tol:
        return None
    return f


@dataclass(frozen=True)
class TriangleModel:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    M1: np.ndarray
    M2: np.ndarray
    M3: np.ndarray
    O: np.ndarray
    h: float
    y: float

    @classmethod
    def unit(cls) -> "TriangleModel":
        h = SQRT3 / 2.0
        y = SQRT3 / 6.0
        A, B, C = point(0.5, h), point(0.0, 0.0), point(1.0, 0.0)
        return cls(
            A=A, B=B, C=C,
            M1=(B + C) / 2, M2=(C + A) / 2, M3=(A + B) / 2,
            O=point(0.5, y), h=h, y=y,
        )

    @property
    def vertices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.A, self.B, self.C

    def named_points(self) -> dict[str, np.ndarray]:
        return {"A": self.A, "B": self.B, "C": self.C, "M1": self.M1,
                "M2": self.M2, "M3": self.M3, "O": self.O}

    def barycentric(self, p) -> tuple[float, float, float]:
        # weights of A, B, C
        x, yy = float(p[0]), float(p[1])
        wa = yy / self.h
        wc = x - 0.5 * wa
        wb = 1.0 - wa - wc
        return wa, wb, wc

    def contains(self, p, tol: float = GEOM_TOL) -> bool:
        return all(-tol <= w <= 1 + tol for w in self.barycentric(p))


T = TriangleModel.unit()
H = T.h
Y = T.y

_CORNERS = (T.A, T.B, T.C, T.A)


def perimeter_point(s: float) -> np.ndarray:
    """Point at arc length ``s`` (taken mod 3) along A -> B -> C -> A."""
    s = float(s) % 3.0
    side = min(int(s), 2)
    return lerp(_CORNERS[side], _CORNERS[side + 1], s - side)


def perimeter_coord(p, tol: float = GEOM_TOL) -> float:
    for side in range(3):
        f = point_on_segment(p, _CORNERS[side], _CORNERS[side + 1], tol)
        if f is not None:
            return (side + f) % 3.0
    raise OffPerimeter(f"point {tuple(map(float, p))} is not on the perimeter")


def mirror_coord(s: float) -> float:
    """Perimeter coordinate of the mirror image (about AO) of the point at ``s``."""
    return (3.0 - float(s)) % 3.0


def on_perimeter(p, tol: float = GEOM_TOL) -> bool:
    try:
        perimeter_coord(p, tol)
    except OffPerimeter:
        return False
    return True
