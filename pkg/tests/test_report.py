import csv
import io

import pytest

from orbitcarbon.config import load_flow_config
from orbitcarbon.report import (
    SweepSeries,
    aggregation_series,
    emit_series,
    fmt,
    hops_series,
    render_comparison,
    render_frontier,
    render_report,
    render_table,
    sweep_mission_time,
)
from orbitcarbon.workload import estimate


def test_fmt():
    assert fmt(34.0324) == "34.0324"
    assert fmt(1412.123456) == "1412.12"
    assert fmt(-0.0) == "0"
    assert fmt(1e-7) == "1e-07"


def test_two_point_series():
    s = SweepSeries("mission_time", "yrs", (1.0, 2.0), (("Earth", (10.0, 5.0)),), "gCO2e/kWh")
    text = emit_series(s)
    assert text.splitlines() == ["mission_time (yrs),Earth (gCO2e/kWh)", "1,10", "2,5"]
    assert emit_series(s) == text


@pytest.mark.parametrize("points", [(1.0,), (2.0, 1.0), (1.0, 1.0)])
def test_series_rejects_bad_points(points):
    with pytest.raises(ValueError):
        SweepSeries("x", "1", points, (("a", tuple(0.0 for _ in points)),), "1")


def test_series_rejects_short_column():
    with pytest.raises(ValueError):
        SweepSeries("x", "1", (1.0, 2.0), (("a", (1.0,)),), "1")


def test_table_values_match_library(systems):
    estimates = [estimate(systems[t]) for t in ("Earth", "F9", "StSh")]
    rows = list(csv.DictReader(io.StringIO(render_table(estimates))))
    assert list(rows[0]) == ["component", "unit", "M", "O", "O+M", "technology"]
    assert len(rows) == 12
    for row in rows:
        est = next(e for e in estimates if e.system.technology.label == row["technology"])
        split = est.row(row["component"]).split
        assert float(row["M"]) == pytest.approx(split.embodied.magnitude, rel=1e-5)
        assert float(row["O+M"]) == pytest.approx(split.total.magnitude, rel=1e-5)


def test_report_contains_library_numbers(systems):
    est = estimate(systems["F9"])
    text = render_report(est)
    for heading in ("## System", "## Launch and re-entry", "## Energy intensity",
                    "## Component intensities", "## Parameter provenance"):
        assert heading in text
    assert fmt(est.launch_and_reentry.m_as("kgCO2e/kg")) in text
    assert fmt(est.energy.total.m_as("gCO2e/kWh")) in text
    for row in est.rows:
        assert fmt(row.split.total.magnitude) in text
    assert "default-calibrated" in text


def test_comparison(systems):
    text = render_comparison([estimate(systems[t]) for t in ("Earth", "F9")])
    assert "sysE (Earth)" in text and "sysF (F9)" in text


def test_sweep(systems):
    years = [1.0, 2.5, 5.0, 10.0, 20.0]
    series = sweep_mission_time([systems[t] for t in ("Earth", "F9", "StSh")], years)
    assert set(series) == {"energy", "cpu", "dram"}
    for s in series.values():
        for label in ("Earth", "F9", "StSh"):
            col = s.column(label)
            assert all(b < a for a, b in zip(col, col[1:]))
        assert all(f > st for f, st in zip(s.column("F9"), s.column("StSh")))
    assert series["energy"].column("Earth")[2] == pytest.approx(34.03, abs=0.01)


def test_sweep_duplicate_labels(systems):
    s = sweep_mission_time([systems["F9"], systems["F9"].with_technology(systems["F9"].technology)], [1, 2])
    assert [n for n, _ in s["energy"].columns] == ["sysF:F9#1", "sysF:F9#2"]
    earth_named_f = systems["Earth"].with_technology(systems["F9"].technology)
    s = sweep_mission_time([systems["F9"], earth_named_f], [1, 2])
    assert [n for n, _ in s["energy"].columns] == ["sysF:F9", "sysE:F9"]


@pytest.mark.parametrize("years", [[1.0], [0.0, 1.0], [1.0, 60.0]])
def test_sweep_rejects(systems, years):
    with pytest.raises(ValueError):
        sweep_mission_time([systems["F9"]], years)


def test_flow_series(config_dir):
    flow = load_flow_config(config_dir / "flow-f9.toml")
    hops = hops_series(flow)
    assert [n for n, _ in hops.columns] == ["Ground-F9", "Orbit-F9", "Ground-StSh", "Orbit-StSh"]
    assert hops.points == tuple(float(n) for n in range(11))
    agg = aggregation_series(flow)
    assert agg.points == (0.001, 0.01, 0.02, 0.1, 0.5, 1.0)
    ground = agg.column("Ground-F9")
    assert len(set(ground)) == 1


def test_frontier_grid_text():
    from orbitcarbon.flows import Placement
    O, G = Placement.ORBIT, Placement.GROUND
    text = render_frontier([1.0, 0.5], [0, 3], [[G, G], [G, O]])
    assert text == "f_aggr\\n_hops,0,3\n1,G,G\n0.5,G,O\n"
