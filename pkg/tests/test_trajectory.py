import numpy as np
import pytest

from trievac.geometry import T, Y, dist
from trievac.trajectory import (MissingContext, MoveTo, Motion, Plan, SpeedViolation, Tethered,
                                Trajectory, UnresolvablePlan, WaitFor, position_at,
                                validate_speed)


def test_polyline_length_and_position():
    tr = Trajectory.through(0, T.M1, T.B, T.A)
    assert tr.length() == pytest.approx(Y + 0.5 + 1.0)
    assert np.allclose(position_at(tr, Y), T.M1)
    assert np.allclose(position_at(tr, Y + 0.5), T.B)
    assert np.allclose(position_at(tr, 10.0), T.A)  # parks at the end


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        position_at(Trajectory.through(0, T.A), -1.0)


def test_wait_needs_team_context():
    tr = Trajectory(1, (MoveTo(tuple(T.M1)), WaitFor(0, tuple(T.M1))))
    with pytest.raises(MissingContext):
        position_at(tr, 0.1)


def test_wait_holds_until_partner_arrives():
    r0 = Trajectory.through(0, T.A, T.M1)
    r1 = Trajectory(1, (MoveTo(tuple(T.M1)), WaitFor(0, tuple(T.M1)), MoveTo(tuple(T.C))))
    plan = Plan([r0, r1])
    t_arrive = 2 * Y + dist(T.A, T.M1)
    assert np.allclose(plan.position(1, t_arrive - 0.01), T.M1)
    assert np.allclose(plan.position(1, t_arrive + 0.1), T.M1 + 0.1 * (T.C - T.M1) / 0.5)


def test_wait_away_from_point_is_rejected():
    r0 = Trajectory.through(0, T.A)
    r1 = Trajectory(1, (WaitFor(0, tuple(T.A)),))
    with pytest.raises(UnresolvablePlan):
        Plan([r0, r1])


def test_tether_follows_chord_within_speed():
    r0 = Trajectory.through(0, T.B, T.A)
    r2 = Trajectory.through(2, T.C, T.A)
    r1 = Trajectory(1, (Tethered(0, 2, 0.5),))
    plan = Plan([r0, r1, r2])
    for t in np.linspace(0, plan.end_time, 50):
        mid = (plan.position(0, t) + plan.position(2, t)) / 2
        assert np.allclose(plan.position(1, t), mid, atol=1e-9)
    assert validate_speed(plan.motions[1]) <= 1.0 + 1e-6


def test_mirrored_swaps_tether_anchors_once():
    tr = Trajectory.through(1, T.M1).then(Tethered(0, 3, 0.25))
    m = tr.mirrored(2, {0: 3, 3: 0})
    assert m.legs[-1] == Tethered(3, 0, 0.25)
    assert m.agent == 2


def test_json_round_trip():
    tr = Trajectory(1, (MoveTo((0.2, 0.1)), WaitFor(0, (0.2, 0.1)), Tethered(0, 2, 0.3)))
    assert Trajectory.from_json(tr.to_json()) == tr


def test_speed_violation():
    fast = Motion([0.0, 0.1], [T.B, T.C])
    with pytest.raises(SpeedViolation):
        validate_speed(fast)


def test_motion_rejects_decreasing_knots():
    with pytest.raises(ValueError):
        Motion([0.0, 1.0, 0.5], [T.A, T.B, T.C])
