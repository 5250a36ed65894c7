import pytest

from trievac.tables import GRIDS, compute_table, crossover, lookup, to_csv


def test_small_grid_rows_and_provenance():
    cells = compute_table("2", grid=[0.2, 0.6], resolution=1e-2)
    assert lookup(cells, 0.2, "NoDetour").value == pytest.approx(2.36010, abs=1e-3)
    assert lookup(cells, 0.6, "TwoDetour").provenance == "n/a"
    assert lookup(cells, 0.2, "LowerBound").provenance == "closed-form"
    assert {c.provenance for c in cells} <= {"closed-form", "optimized+simulated", "simulated",
                                             "n/a"}


def test_csv_is_stable():
    a = to_csv(compute_table("3b", grid=[0.4, 0.7], resolution=1e-2))
    b = to_csv(compute_table("3b", grid=[0.4, 0.7], resolution=1e-2))
    assert a == b
    assert a.splitlines()[0] == "table,r,k,column,value,planned,provenance"


def test_summary_row():
    cells = compute_table("1", grid=[0.6], resolution=1e-2)
    c = lookup(cells, 0.6, k=3)
    assert c.column == "X1C3" and c.value == pytest.approx(1.67532, abs=1e-3)


def test_crossover_three_agents():
    assert 0.2 <= crossover(3, 0.2, 0.25) <= 0.25


@pytest.mark.parametrize("grid", [[0.3, 0.2], [0.5, 1.5]])
def test_bad_grid(grid):
    with pytest.raises(ValueError):
        compute_table("2", grid=grid)


def test_unknown_table():
    with pytest.raises(ValueError):
        compute_table("9")
    assert set(GRIDS) == {"1", "2", "3a", "3b"}
