"""Command-line entry point.

Exit status: 0 on success, 1 when verification fails, 2 for a bad configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds, tables
from .adversary import worst_case
from .plotting import EmptyTrace, plot_outcome, plot_table
from .simulator import STRATEGIES, BadScenario, Scenario, Simulator, scenario_dumps
from .strategies import Infeasible, applicable, build, evaluate
from .verify import report_json, run_all

OK, VERIFY_FAILED, BAD_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


def _grid(text: str | None):
    if not text:
        return None
    try:
        g = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --grid value: {exc}") from exc
    if any(b <= a for a, b in zip(g, g[1:])) or any(not 0 <= r <= 1 for r in g):
        raise ConfigError("--grid must be strictly increasing values in [0, 1]")
    return g


def _scenario(args) -> Scenario:
    if args.scenario:
        d = json.loads(Path(args.scenario).read_text())
        if "trajectories" in d:
            sc = Scenario.from_json(d)
        else:
            sc = _built(d.get("strategy"), d.get("r")).scenario
        if d.get("exit_s") is not None:
            sc = sc.at_exit(d["exit_s"])
    else:
        sc = _built(args.strategy, args.r).scenario
    if args.k is not None and args.k != sc.k:
        raise ConfigError(f"{sc.strategy} uses k={sc.k}, not --k {args.k}")
    return sc


def _built(strategy, r):
    if strategy is None or r is None:
        raise ConfigError("give --strategy and --r, or --scenario")
    if not 0 <= float(r) <= 1:
        raise ConfigError(f"r must lie in [0, 1], got {r}")
    return build(strategy, float(r))


def _emit(text: str, out: str | None):
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _exit_s(args, sc):
    s = args.exit_s if args.exit_s is not None else sc.exit_s
    if s is None:
        raise ConfigError("give --exit-s (perimeter coordinate, A=0, B=1, C=2)")
    return s


def cmd_simulate(args) -> int:
    sc = _scenario(args)
    out = Simulator(sc).run(_exit_s(args, sc))
    _emit(json.dumps(out.to_json(), indent=2), args.out)
    if args.trace:
        Path(args.trace).write_text(out.trace_csv())
    return OK


def cmd_worst_case(args) -> int:
    sc = _scenario(args)
    wc = worst_case(sc, resolution=args.resolution)
    _emit(json.dumps({"strategy": sc.strategy, "k": sc.k, "r": sc.r, **wc.to_json()}, indent=2),
          None)
    if args.out:
        Path(args.out).write_text(wc.profile_csv())
    return OK


def cmd_optimize(args) -> int:
    b = _built(args.strategy, args.r)
    ev = evaluate(b.strategy, b.r, args.resolution)
    params = b.params.to_json() if hasattr(b.params, "to_json") else None
    _emit(json.dumps({"strategy": b.strategy, "r": b.r, "planned": b.planned,
                      "worst_case": ev.time, "worst_exit_s": ev.worst.exit_s,
                      "params": params}, indent=2), None)
    if args.out:
        Path(args.out).write_text(scenario_dumps(b.scenario))
    return OK


def cmd_table(args) -> int:
    cells = tables.compute_table(args.table, _grid(args.grid), args.resolution, args.jobs)
    text = tables.to_csv(cells)
    note = tables.NOTES.get(args.table)
    if args.out:
        out = Path(args.out)
        _emit(text, str(out))
        meta = {"table": args.table, "provenance": sorted({c.provenance for c in cells}),
                "note": note}
        out.with_suffix(".meta.json").write_text(json.dumps(meta, indent=2) + "\n")
        fig = out.with_suffix("." + args.figure_format)
        plot_table(cells, fig, title=f"table {args.table}")
        print(f"wrote {out}, {fig}", file=sys.stderr)
    else:
        _emit(text, None)
        if note:
            print(f"note: {note}", file=sys.stderr)
    return OK


def cmd_plot(args) -> int:
    if not args.out:
        raise ConfigError("plot needs --out (.svg or .png)")
    sc = _scenario(args)
    out = Simulator(sc).run(_exit_s(args, sc))
    plot_outcome(out, args.out, title=f"{sc.strategy} r={sc.r:g} exit s={out.exit_s:.4f}")
    return OK


def cmd_bounds(args) -> int:
    if args.r is None:
        raise ConfigError("bounds needs --r")
    r, k = float(args.r), args.k or 2
    if k < 2:
        raise ConfigError("k must be at least 2")
    uppers = {}
    if k in (2, 3, 4) and args.with_strategies:
        for s in applicable(k, r):
            try:
                uppers[s] = evaluate(s, r, args.resolution).time
            except Infeasible:
                pass
    rep = bounds.bound_report(k, r, uppers)
    d = {"k": k, "r": r, "lower": rep.lower, "uppers": rep.uppers,
         "no_detour_time": bounds.no_detour_time(r), "optimal_any_k": bounds.optimal_any_k()}
    if uppers:
        d["gap"], d["consistent"] = rep.gap, rep.consistent
    if 0 < r < 1:
        d["min_agents_lb"] = bounds.min_agents_lb(r)
        d["cxp_agents"] = bounds.cxp_agents(r)
    _emit(json.dumps(d, indent=2), args.out)
    return OK


def cmd_verify(args) -> int:
    results = run_all(_grid(args.grid), args.resolution, args.n_random)
    for res in results:
        print(res.line())
    if args.out:
        Path(args.out).write_text(report_json(results) + "\n")
    return OK if all(r.passed for r in results) else VERIFY_FAILED


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trievac", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, scenario=True):
        sp.add_argument("--r", type=float)
        sp.add_argument("--k", type=int)
        sp.add_argument("--strategy", choices=STRATEGIES)
        sp.add_argument("--resolution", type=float, default=1e-3)
        sp.add_argument("--out")
        if scenario:
            sp.add_argument("--scenario", help="scenario JSON file")
            sp.add_argument("--exit-s", type=float)

    sp = sub.add_parser("simulate", help="run one exit placement")
    common(sp)
    sp.add_argument("--trace", help="write sampled positions as CSV")
    sp.set_defaults(fn=cmd_simulate)

    sp = sub.add_parser("worst-case", help="worst exit over the perimeter")
    common(sp)
    sp.set_defaults(fn=cmd_worst_case)

    sp = sub.add_parser("optimize", help="solve a strategy's parameters")
    common(sp, scenario=False)
    sp.set_defaults(fn=cmd_optimize)

    sp = sub.add_parser("table", help="recompute a summary table as CSV")
    common(sp, scenario=False)
    sp.add_argument("--table", choices=sorted(tables.GRIDS), required=True)
    sp.add_argument("--grid", help="comma-separated r values")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--figure-format", choices=("svg", "png"), default="svg")
    sp.set_defaults(fn=cmd_table)

    sp = sub.add_parser("plot", help="draw one run")
    common(sp)
    sp.set_defaults(fn=cmd_plot)

    sp = sub.add_parser("bounds", help="closed-form bounds")
    common(sp, scenario=False)
    sp.add_argument("--with-strategies", action="store_true",
                    help="also evaluate the strategies applicable at (k, r)")
    sp.set_defaults(fn=cmd_bounds)

    sp = sub.add_parser("verify", help="run the acceptance checks")
    common(sp, scenario=False)
    sp.add_argument("--grid", help="comma-separated r values")
    sp.add_argument("--n-random", type=int, default=1000)
    sp.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if not 0 < args.resolution <= 1e-2:
        print("error: --resolution must lie in (0, 0.01]", file=sys.stderr)
        return BAD_CONFIG
    try:
        return args.fn(args)
    except (ConfigError, BadScenario, Infeasible, EmptyTrace, ValueError,
            json.JSONDecodeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_CONFIG


if __name__ == "__main__":
    sys.exit(main())
