"""Recompute the summary tables as long-format rows with provenance tags."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from scipy.optimize import brentq

from .bounds import lower_bound_two
from .strategies import Infeasible, applicable, build, evaluate
from .strategies.x1c import build_x1c
from .strategies.x3c import optimize_x3c

CLOSED, OPTIMIZED, SIMULATED, NA = "closed-form", "optimized+simulated", "simulated", "n/a"
PROVENANCE = {"NoDetour": SIMULATED, "X1C3": SIMULATED, "X1C4": SIMULATED, "CXP": SIMULATED,
              "OneDetour": OPTIMIZED, "TwoDetour": OPTIMIZED, "X3C3": OPTIMIZED,
              "X3C4": OPTIMIZED}

GRIDS = {
    "1": [round(0.1 * i, 10) for i in range(11)],
    "2": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7],
    "3a": [0.0, 0.1, 0.2, 0.22589, 0.25, 0.3, 0.4, 0.5, 0.6, 0.7],
    "3b": [0.0, 0.1, 0.11619, 0.1721, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 1.0],
}
TABLE_COLUMNS = {"2": ("NoDetour", "OneDetour", "TwoDetour"),
                 "3a": ("X3C3", "X1C3"), "3b": ("X3C4", "X1C4")}
NOTES = {
    "2": "strategy columns are labelled by construction; the printed source table "
         "lists the no-detour and two-detour columns in swapped order",
}


@dataclass
class Cell:
    table: str
    r: float
    k: int
    column: str
    value: float | None
    planned: float | None
    provenance: str


def _strategy_cell(table, r, k, strategy, resolution) -> Cell:
    try:
        ev = evaluate(strategy, r, resolution)
    except Infeasible:
        return Cell(table, r, k, strategy, None, None, NA)
    return Cell(table, r, k, strategy, ev.time, ev.built.planned, PROVENANCE[strategy])


def _best_cell(r, k, resolution) -> Cell:
    cells = [_strategy_cell("1", r, k, s, resolution) for s in applicable(k, r)]
    cells = [c for c in cells if c.value is not None]
    return min(cells, key=lambda c: c.value)


def _jobs_for(table: str, grid) -> list[tuple]:
    if table == "1":
        return [("best", r, k) for r in grid for k in (2, 3, 4)]
    k = {"2": 2, "3a": 3, "3b": 4}[table]
    return [("strategy", r, k, s) for r in grid for s in TABLE_COLUMNS[table]]


def _run_job(job, table, resolution) -> Cell:
    if job[0] == "best":
        return _best_cell(job[1], job[2], resolution)
    return _strategy_cell(table, job[1], job[2], job[3], resolution)


def crossover(k: int, lo: float, hi: float) -> float:
    """Range where the explore-three and explore-one teams tie."""
    f = lambda r: optimize_x3c(k, r)[1] - build_x1c(k, r)[1]
    return brentq(f, lo, hi, xtol=1e-7)


def compute_table(table: str, grid=None, resolution: float = 1e-3, jobs: int = 1) -> list[Cell]:
    if table not in GRIDS:
        raise ValueError(f"unknown table {table!r}; choose from {sorted(GRIDS)}")
    grid = list(GRIDS[table] if grid is None else grid)
    if any(b <= a for a, b in zip(grid, grid[1:])) or any(not 0 <= r <= 1 for r in grid):
        raise ValueError("r grid must be strictly increasing within [0, 1]")
    work = _jobs_for(table, grid)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(_run_job, work, [table] * len(work), [resolution] * len(work)))
    else:
        cells = [_run_job(j, table, resolution) for j in work]
    for c in cells:
        c.table = table
    if table == "2":
        cells += [Cell("2", r, 2, "LowerBound", lower_bound_two(r), None, CLOSED) for r in grid]
    if table == "3a":
        cells.append(Cell("3a", crossover(3, 0.2, 0.25), 3, "crossover", None, None, CLOSED))
    if table == "3b":
        cells.append(Cell("3b", crossover(4, 0.11, 0.2), 4, "crossover", None, None, CLOSED))
    cells.sort(key=lambda c: (c.r, c.k, c.column))
    return cells


def _fmt(v) -> str:
    return "" if v is None else f"{v:.6g}"


def to_csv(cells: list[Cell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["table", "r", "k", "column", "value", "planned", "provenance"])
    for c in cells:
        w.writerow([c.table, _fmt(c.r), c.k, c.column, _fmt(c.value), _fmt(c.planned),
                    c.provenance])
    return buf.getvalue()


def lookup(cells: list[Cell], r: float, column: str | None = None, k: int | None = None) -> Cell:
    for c in cells:
        if abs(c.r - r) < 1e-12 and (column is None or c.column == column) \
                and (k is None or c.k == k):
            return c
    raise KeyError((r, column, k))


def as_dicts(cells: list[Cell]) -> list[dict]:
    return [asdict(c) for c in cells]
