import json
import re

import pytest

from trievac.cli import main
from trievac.plotting import EmptyTrace, plot_outcome
from trievac.simulator import EvacuationOutcome


def test_simulate(capsys):
    assert main(["simulate", "--strategy", "NoDetour", "--r", "0.2", "--exit-s", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["evac_time"] == pytest.approx(2.36010, abs=1e-5)


def test_simulate_from_scenario_file(tmp_path, capsys):
    f = tmp_path / "sc.json"
    f.write_text(json.dumps({"k": 2, "r": 0.7, "strategy": "NoDetour", "exit_s": 2.0}))
    assert main(["simulate", "--scenario", str(f)]) == 0
    assert json.loads(capsys.readouterr().out)["evac_time"] == pytest.approx(1.91367, abs=1e-5)


def test_optimize_writes_replayable_scenario(tmp_path, capsys):
    out = tmp_path / "sc.json"
    assert main(["optimize", "--strategy", "OneDetour", "--r", "0.5", "--out", str(out)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["planned"] == pytest.approx(2.0105, abs=1e-4)
    assert main(["worst-case", "--scenario", str(out)]) == 0
    assert json.loads(capsys.readouterr().out)["evac_time"] == pytest.approx(rep["worst_case"])


def test_worst_case_profile(tmp_path, capsys):
    prof = tmp_path / "p.csv"
    assert main(["worst-case", "--strategy", "NoDetour", "--r", "0.3", "--resolution", "0.01",
                 "--out", str(prof)]) == 0
    assert prof.read_text().startswith("s,evac_time\n")


def test_table_files(tmp_path):
    out = tmp_path / "t2.csv"
    assert main(["table", "--table", "2", "--grid", "0.2,0.6", "--resolution", "0.01",
                 "--out", str(out)]) == 0
    text = out.read_text()
    assert "NoDetour" in text and "provenance" in text.splitlines()[0]
    assert "swapped" in json.loads((tmp_path / "t2.meta.json").read_text())["note"]
    assert (tmp_path / "t2.svg").read_text().count('id="series-') == 4
    first = text
    assert main(["table", "--table", "2", "--grid", "0.2,0.6", "--resolution", "0.01",
                 "--out", str(out)]) == 0
    assert out.read_text() == first


def test_plot_no_detour(tmp_path):
    svg = tmp_path / "nd.svg"
    assert main(["plot", "--strategy", "NoDetour", "--r", "0.2", "--exit-s", "2",
                 "--out", str(svg)]) == 0
    text = svg.read_text()
    assert len(re.findall(r'id="agent-\d+"', text)) == 2
    assert text.count('id="exit"') == 1


def test_plot_cxp_is_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for f in (a, b):
        assert main(["plot", "--strategy", "CXP", "--r", "0.5", "--exit-s", "1.2",
                     "--out", str(f)]) == 0
    assert len(re.findall(r'id="agent-\d+"', a.read_text())) == 8
    assert a.read_bytes() == b.read_bytes()


def test_plot_png(tmp_path):
    f = tmp_path / "x.png"
    assert main(["plot", "--strategy", "X1C3", "--r", "0.3", "--exit-s", "2",
                 "--out", str(f)]) == 0
    assert f.read_bytes()[:4] == b"\x89PNG"


def test_empty_trace(tmp_path):
    import numpy as np
    empty = EvacuationOutcome(0.0, np.zeros(2), 0.0, 0, [], [], [], [], 0.0)
    with pytest.raises(EmptyTrace):
        plot_outcome(empty, tmp_path / "e.svg")


def test_bounds(capsys):
    assert main(["bounds", "--r", "0.25", "--k", "2"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["cxp_agents"] == 12 and d["lower"] == pytest.approx(1 + 4 * 3 ** 0.5 / 6 - 0.25)


@pytest.mark.parametrize("argv", [
    ["simulate", "--strategy", "NoDetour", "--r", "1.4", "--exit-s", "1"],
    ["simulate", "--strategy", "NoDetour", "--r", "0.4"],
    ["simulate", "--strategy", "NoDetour", "--r", "0.4", "--k", "3", "--exit-s", "1"],
    ["worst-case", "--strategy", "X3C4", "--r", "0.5"],
    ["table", "--table", "2", "--grid", "0.5,0.2"],
    ["plot", "--strategy", "NoDetour", "--r", "0.2", "--exit-s", "1"],
    ["worst-case", "--strategy", "NoDetour", "--r", "0.2", "--resolution", "0.5"],
])
def test_bad_config_exit_code(argv):
    assert main(argv) == 2


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as e:
        main(["simulate", "--strategy", "Nope"])
    assert e.value.code == 2


def test_verify_detects_perturbed_formula(monkeypatch, capsys):
    from trievac import bounds, verify
    monkeypatch.setattr(bounds, "no_detour_time", lambda r: 1e-3 + (
        3 ** 0.5 / 6 + 0.5 + r + 2 * (1 - r * r) / (2 * r + 1)))
    res = verify.criterion_1(grid=[0.3, 0.6])
    assert not res.passed
    assert {c.name for c in res.failures()} == {"r=0.3", "r=0.6"}


def test_verify_grid_override():
    from trievac import verify
    res = verify.criterion_1(grid=[0.25, 0.55])
    assert [c.name for c in res.checks][:2] == ["r=0.25", "r=0.55"]
    assert res.passed
