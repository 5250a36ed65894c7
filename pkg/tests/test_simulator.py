import json

import numpy as np
import pytest

from trievac.bounds import no_detour_time
from trievac.geometry import T, Y
from trievac.simulator import (BadScenario, Scenario, Simulator, StrategyIncomplete,
                               replay_connectivity, scenario_dumps)
from trievac.strategies import build
from trievac.trajectory import Trajectory


@pytest.fixture(scope="module")
def no_detour():
    return build("NoDetour", 0.2).scenario


def test_exit_at_c(no_detour):
    out = Simulator(no_detour).run(2.0)
    # the far corner is the worst spot for the never-detouring pair
    assert out.evac_time == pytest.approx(no_detour_time(0.2), abs=1e-9)
    assert out.finder == 1
    assert out.discovery_time == pytest.approx(Y + 0.5)
    assert len(out.notifications) == 1


def test_exit_on_both_paths_same_time(no_detour):
    out = Simulator(no_detour).run(1.5)  # M1, both agents pass it together
    assert out.evac_time == pytest.approx(Y)


def test_intercept_replay_is_within_range(no_detour):
    out = Simulator(no_detour).run(2.3)
    assert replay_connectivity(out, no_detour).ok


def test_arrivals_do_not_beat_straight_line(no_detour):
    for s in np.linspace(0, 3, 37)[:-1]:
        out = Simulator(no_detour).run(s)
        for a in out.arrivals:
            assert a >= np.linalg.norm(out.exit - T.O) - 1e-12


def test_connect_mode_waits_for_connectivity():
    sc = build("X1C3", 0.3).scenario
    out = Simulator(sc).run(2.0)
    t = out.notifications[0].time
    assert t >= out.discovery_time
    assert replay_connectivity(out, sc).ok


def test_unreached_exit_is_reported():
    sc = Scenario(2, 0.1, "NoDetour", (Trajectory.through(0, T.M1), Trajectory.through(1, T.M1)))
    with pytest.raises(StrategyIncomplete):
        Simulator(sc).run(0.0)


def test_missing_exit():
    with pytest.raises(BadScenario):
        Simulator(build("NoDetour", 0.3).scenario).run()


@pytest.mark.parametrize("kw", [dict(strategy="Nope"), dict(r=1.5), dict(k=3)])
def test_bad_scenarios(kw):
    base = dict(k=2, r=0.2, strategy="NoDetour",
                trajectories=(Trajectory.through(0, T.B), Trajectory.through(1, T.C)))
    base.update(kw)
    with pytest.raises(BadScenario):
        Scenario(**base)


def test_json_round_trip(no_detour):
    sc = no_detour.at_exit(2.0)
    back = Scenario.from_json(json.loads(scenario_dumps(sc)))
    assert back == sc
    assert Simulator(back).run().evac_time == Simulator(sc).run().evac_time


def test_malformed_json():
    with pytest.raises(BadScenario):
        Scenario.from_json({"k": 2})


def test_trace_shape(no_detour):
    out = Simulator(no_detour).run(2.0)
    tr = out.trace(0.1)
    assert set(tr[:, 1]) == {0.0, 1.0}
    assert np.allclose(tr[tr[:, 0] == out.evac_time][:, 2:], out.exit)
    assert out.trace_csv().startswith("t,agent,x,y\n")
