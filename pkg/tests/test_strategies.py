import numpy as np
import pytest

from trievac.geometry import T, Y, dist
from trievac.simulator import Simulator, replay_connectivity
from trievac.strategies import (Infeasible, applicable, best_strategy, build, build_cxp,
                                build_x1c, evaluate, optimize_one_detour, optimize_two_detour,
                                optimize_x3c, solve_detour_points, solve_x3c)
from trievac.strategies.cxp import exploration_end, relays_per_side
from trievac.strategies.two_agent import (ONE_DETOUR_LIMIT, no_detour_closed_form,
                                          two_detour_gain)
from trievac.strategies.x1c import x1c3_case, x1c4_case
from trievac.strategies.x3c import late_waiters, x3c_objective
from trievac.trajectory import Plan, validate_speed


class TestTwoAgent:
    @pytest.mark.parametrize("r", [0.1, 0.4, 0.7])
    def test_one_detour_constraints_hold(self, r):
        p, t = optimize_one_detour(r)
        assert max(abs(v) for v in p.residuals().values()) < 1e-9
        assert p.times["t1"] == pytest.approx(p.times["t2"], abs=1e-8)

    @pytest.mark.parametrize("r", [0.1, 0.3])
    def test_two_detour_constraints_hold(self, r):
        p, t = optimize_two_detour(r)
        assert max(abs(v) for v in p.residuals().values()) < 1e-9
        assert t <= optimize_one_detour(r)[1] + 1e-9

    def test_detours_shrink_to_nothing_at_limit(self):
        p = solve_detour_points(0.7374048, 0.1843512)
        assert dist(p["Q1"], p["J1"]) < 1e-5

    def test_second_detour_edge(self):
        assert two_detour_gain(0.4715) > 0
        assert two_detour_gain(0.4735) < 0
        with pytest.raises(Infeasible):
            optimize_two_detour(0.48)

    def test_no_detour_at_long_range(self):
        assert "OneDetour" not in applicable(2, ONE_DETOUR_LIMIT + 0.01)
        assert no_detour_closed_form(0.0) == pytest.approx(Y + 2.5)

    def test_trajectories_are_mirror_images(self):
        sc = build("TwoDetour", 0.2).scenario
        a, b = sc.trajectories
        for p, q in zip(a.waypoints(), b.waypoints()):
            assert np.allclose([1 - p[0], p[1]], q)

    def test_simulated_worst_equals_construction(self):
        ev = evaluate("OneDetour", 0.5)
        assert ev.time == pytest.approx(ev.built.planned, abs=1e-6)


class TestX1C:
    def test_case_breaks(self):
        assert [x1c3_case(r) for r in (0.3, 0.5, 0.7)] == [1, 2, 3]
        assert [x1c4_case(r) for r in (0.2, 1 / 3, 0.7)] == [1, 2, 3]

    @pytest.mark.parametrize("k,r", [(3, 0.25), (3, 0.6), (3, 0.9), (4, 0.2), (4, 0.5), (4, 0.8)])
    def test_equations_and_simulation(self, k, r):
        p, t = build_x1c(k, r)
        assert max(abs(v) for v in p.residuals().values()) < 1e-9
        assert evaluate(f"X1C{k}", r).time == pytest.approx(t, abs=1e-6)

    def test_large_range_limits(self):
        assert build_x1c(3, 0.9)[1] == pytest.approx(5 / 3, abs=1e-9)
        assert build_x1c(4, 0.9)[1] == pytest.approx(1.6105, abs=1e-4)

    def test_relays_stay_within_speed(self):
        plan = Plan(build("X1C4", 0.2).scenario.trajectories)
        assert max(validate_speed(m) for m in plan.motions) <= 1 + 1e-6

    def test_wrong_k(self):
        with pytest.raises(ValueError):
            build_x1c(5, 0.3)


class TestX3C:
    @pytest.mark.parametrize("k,r", [(3, 0.0), (3, 0.2), (4, 0.0), (4, 0.1)])
    def test_equal_meeting_times(self, k, r):
        p, t = optimize_x3c(k, r)
        assert max(abs(v) for v in p.residuals().values()) < 1e-9
        assert x3c_objective(p) == pytest.approx(t)

    def test_meeting_points_within_range(self):
        p, _ = optimize_x3c(3, 0.2)
        J = [p[f"J{i}"] for i in (1, 2, 3)]
        assert max(dist(a, b) for a in J for b in J) == pytest.approx(0.2)

    def test_simulation_matches_objective(self):
        ev = evaluate("X3C3", 0.2)
        assert ev.time == pytest.approx(ev.built.planned, abs=1e-6)

    def test_late_waiters_flag(self):
        p, _ = optimize_x3c(3, 0.1)
        assert late_waiters(p) == [] and not p.degraded

    def test_beyond_built_range(self):
        with pytest.raises(Infeasible):
            build("X3C4", 0.3)

    def test_unsolvable_split(self):
        with pytest.raises(Infeasible):
            solve_x3c(3, 0.2, 0.999)


class TestCXP:
    @pytest.mark.parametrize("r,k", [(0.5, 8), (1 / 3, 10), (0.25, 12)])
    def test_team_size(self, r, k):
        cfg, sc = build_cxp(r)
        assert cfg.k == sc.k == k

    def test_exploration_finishes_on_time(self):
        _, sc = build_cxp(0.3)
        assert exploration_end(sc) == pytest.approx(2 * Y + 0.5)

    def test_always_connected(self):
        _, sc = build_cxp(0.25)
        sim = Simulator(sc)
        assert sim.timeline.intervals[0][0] == 0.0
        assert sim.timeline.intervals[0][1] == float("inf")
        for s in np.linspace(0, 3, 31)[:-1]:
            out = sim.run(s)
            assert out.evac_time <= 1 + 2 * Y + 1e-9
            assert replay_connectivity(out, sc).ok

    def test_bad_range(self):
        with pytest.raises(ValueError):
            relays_per_side(0.0)


def test_best_strategy_switches_families():
    assert best_strategy(3, 0.2)[0] == "X3C3"
    assert best_strategy(3, 0.3)[0] == "X1C3"
    with pytest.raises(ValueError):
        best_strategy(5, 0.3)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        build("Spiral", 0.3)
