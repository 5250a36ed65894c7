"""Static figures: one evacuation run, and a table as curves over r."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .geometry import T  # noqa: E402

# fixed ids and no timestamp, so the same input always gives the same bytes
matplotlib.rcParams["svg.hashsalt"] = "trievac"
matplotlib.rcParams["svg.fonttype"] = "none"
_META = {"svg": {"Date": None}, "png": {"Software": None}}


class EmptyTrace(ValueError):
    pass


def _save(fig, path) -> Path:
    path = Path(path)
    fmt = path.suffix.lstrip(".").lower() or "svg"
    if fmt not in _META:
        raise ValueError(f"unsupported figure format {fmt!r}; use .svg or .png")
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format=fmt, metadata=_META[fmt])
    plt.close(fig)
    return path


def _triangle(ax):
    tri = np.array([T.A, T.B, T.C, T.A])
    ax.plot(tri[:, 0], tri[:, 1], color="black", lw=1.2, gid="triangle")
    for name, p in T.named_points().items():
        ax.plot(*p, marker=".", color="black", ms=4)
        ax.annotate(name, p, textcoords="offset points", xytext=(4, 4), fontsize=8)


def plot_outcome(outcome, path, title: str | None = None, dt: float = 0.005) -> Path:
    """Agent paths up to evacuation, the exit, and where news was passed on."""
    if not outcome.motions or not outcome.evac_time > 0:
        raise EmptyTrace("nothing to draw: the outcome has no motion")
    tr = outcome.trace(dt)
    fig, ax = plt.subplots(figsize=(6, 5.4))
    _triangle(ax)
    colors = plt.get_cmap("tab10")
    for i in range(len(outcome.motions)):
        rows = tr[tr[:, 1] == i]
        ax.plot(rows[:, 2], rows[:, 3], color=colors(i % 10), lw=1.4, label=f"R{i + 1}",
                gid=f"agent-{i}")
    for j, n in enumerate(outcome.notifications):
        ax.scatter(n.positions[:, 0], n.positions[:, 1], marker="o", facecolors="none",
                   edgecolors="gray", s=30, gid=f"notify-{j}")
    ax.plot(*outcome.exit, marker="*", color="red", ms=14, ls="none", gid="exit")
    ax.set_aspect("equal")
    ax.set_xlim(-0.08, 1.08)
    ax.set_ylim(-0.08, T.h + 0.08)
    ax.legend(loc="upper right", fontsize=8)
    ax.set_title(title or f"exit s={outcome.exit_s:.4f}, time {outcome.evac_time:.5f}")
    return _save(fig, path)


def plot_table(cells, path, title: str | None = None) -> Path:
    """Each column of a long-format table as a curve over r."""
    series: dict[tuple[str, int], list[tuple[float, float]]] = {}
    for c in cells:
        if c.value is not None:
            series.setdefault((c.column, c.k), []).append((c.r, c.value))
    if not series:
        raise EmptyTrace("table has no values to draw")
    fig, ax = plt.subplots(figsize=(6.5, 4.2))
    for (col, k), pts in sorted(series.items()):
        pts.sort()
        xs, ys = zip(*pts)
        ax.plot(xs, ys, marker="o", ms=3, label=f"{col} (k={k})", gid=f"series-{col}-{k}")
    ax.set_xlabel("r")
    ax.set_ylabel("evacuation time")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    if title:
        ax.set_title(title)
    return _save(fig, path)
