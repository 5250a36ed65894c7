import math

import pytest

from trievac.adversary import critical_candidates, direction_test, worst_case
from trievac.bounds import no_detour_time
from trievac.strategies import build


@pytest.mark.parametrize("r", [0.2, 0.5, 0.7])
def test_no_detour_worst_case_matches_closed_form(r):
    wc = worst_case(build("NoDetour", r).scenario)
    assert wc.evac_time == pytest.approx(no_detour_time(r), abs=1e-4)
    # the worst exit sits at a vertex reached last by the finder
    assert min(abs(wc.exit_s - 1.0), abs(wc.exit_s - 2.0)) < 1e-3


def test_candidates_include_vertices_and_one_sided_points():
    c = critical_candidates(build("NoDetour", 0.3).scenario)
    for s in (0.0, 1.0, 2.0, 1.5):
        assert any(abs(x - s) < 1e-12 for x in c)
    assert any(abs(x - (1.0 - 1e-7)) < 1e-12 for x in c)


def test_profile_covers_perimeter():
    wc = worst_case(build("NoDetour", 0.3).scenario, resolution=1e-2)
    assert len(wc.profile) == 300
    assert wc.profile[:, 1].max() <= wc.evac_time + 1e-12
    assert wc.profile_csv().splitlines()[0] == "s,evac_time"


def test_resolution_bounds():
    with pytest.raises(ValueError):
        worst_case(build("NoDetour", 0.3).scenario, resolution=0.1)


def test_direction_test():
    assert direction_test(math.pi / 2, math.pi / 2) == "shift-forward"
    assert direction_test(0.5, 0.2) == "shift-backward"
    assert direction_test(math.pi / 3, math.pi / 2) == "stationary"
    assert direction_test(1.2, 2.0) == "shift-forward"
    with pytest.raises(ValueError):
        direction_test(0.0, 1.0)
