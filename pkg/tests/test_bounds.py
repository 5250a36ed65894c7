import numpy as np
import pytest

from trievac.bounds import (bound_report, cxp_agents, lower_bound_kink, lower_bound_two,
                            min_agents_lb, no_detour_time, optimal_any_k)
from trievac.geometry import Y


def test_no_detour_endpoints():
    assert no_detour_time(0.0) == pytest.approx(Y + 2.5)
    assert no_detour_time(1.0) == pytest.approx(Y + 1.5)
    assert no_detour_time(0.7) == pytest.approx(1.91367, abs=1e-5)


def test_no_detour_decreasing():
    v = [no_detour_time(r) for r in np.linspace(0, 1, 101)]
    assert all(b < a for a, b in zip(v, v[1:]))


def test_two_agent_lower_bound():
    assert lower_bound_two(0.1) == pytest.approx(2.054701, abs=1e-6)
    assert lower_bound_two(0.3) == pytest.approx(1 + 4 * Y - 0.3)
    assert lower_bound_two(0.5) == pytest.approx(1.5 + Y)
    assert lower_bound_kink() == pytest.approx(0.366025, abs=1e-6)


def test_agent_counts():
    assert optimal_any_k() == pytest.approx(1.577350, abs=1e-6)
    assert min_agents_lb(0.5) == 3
    assert cxp_agents(0.25) == 12
    for r in np.arange(0.001, 1.0, 0.001):
        assert cxp_agents(r) >= min_agents_lb(r)


@pytest.mark.parametrize("f,r", [(no_detour_time, -0.1), (lower_bound_two, 1.2),
                                 (min_agents_lb, 0.0)])
def test_range_checked(f, r):
    with pytest.raises(ValueError):
        f(r)


def test_report():
    rep = bound_report(2, 0.2, {"NoDetour": no_detour_time(0.2)})
    assert rep.consistent and rep.gap > 0
    assert not bound_report(3, 0.2, {"x": 1.0}).consistent
