"""Markdown reports and delimited series files.

Reports are views over library results: every number printed here comes
from :func:`orbitcarbon.workload.estimate` or the flow model, formatted
with :func:`fmt`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .config import DEFAULT_CALIBRATED, FlowConfig, ReferenceLevel, System
from .flows import FlowTemplate, Placement, build_template, flow_intensity, placement_frontier
from .quantity import Q, Quantity
from .workload import COMPONENTS, SystemEstimate, estimate
from .launch import fuel_intensity

__all__ = [
    "SweepSeries",
    "emit_series",
    "fmt",
    "render_comparison",
    "render_frontier",
    "render_report",
    "render_table",
    "sweep_mission_time",
]

SIGNIFICANT = 6


def fmt(value: float) -> str:
    """Locale-independent, six significant digits."""
    text = format(float(value), f".{SIGNIFICANT}g")
    return "0" if text == "-0" else text


@dataclass(frozen=True)
class SweepSeries:
    parameter: str
    parameter_unit: str
    points: tuple[float, ...]
    columns: tuple[tuple[str, tuple[float, ...]], ...]
    unit: str

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("a series needs at least two sample points")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise ValueError("sample points must be strictly increasing")
        for name, values in self.columns:
            if len(values) != len(self.points):
                raise ValueError(f"column {name!r} has {len(values)} values for {len(self.points)} points")

    def column(self, name: str) -> tuple[float, ...]:
        return dict(self.columns)[name]


def emit_series(series: SweepSeries) -> str:
    header = [f"{series.parameter} ({series.parameter_unit})"]
    header += [f"{name} ({series.unit})" for name, _ in series.columns]
    lines = [",".join(header)]
    for i, p in enumerate(series.points):
        lines.append(",".join([fmt(p)] + [fmt(values[i]) for _, values in series.columns]))
    return "\n".join(lines) + "\n"


def _column_names(systems: Sequence[System]) -> list[str]:
    labels = [s.technology.label for s in systems]
    if len(set(labels)) == len(labels):
        return labels
    names = [f"{s.name}:{s.technology.label}" for s in systems]
    if len(set(names)) == len(names):
        return names
    return [f"{n}#{i + 1}" for i, n in enumerate(names)]


SWEEP_PANELS = {
    "energy": "gCO2e/kWh",
    "cpu": "µgCO2e/s",
    "dram": "µgCO2e/GB/s",
}


def sweep_mission_time(systems: Sequence[System], years: Sequence[float]) -> dict[str, SweepSeries]:
    """Energy, CPU and DRAM total intensities against mission time."""
    if len(years) < 2:
        raise ValueError("a mission-time sweep needs at least two sample points")
    if any(not 0 < y <= 50 for y in years):
        raise ValueError("mission times must lie in (0, 50] years")
    if not systems:
        raise ValueError("a sweep needs at least one system")
    names = _column_names(systems)
    values = {panel: {n: [] for n in names} for panel in SWEEP_PANELS}
    for name, system in zip(names, systems):
        for y in years:
            est = estimate(system.with_mission_time(Q(y, "yrs")))
            values["energy"][name].append(est.energy.total.m_as(SWEEP_PANELS["energy"]))
            values["cpu"][name].append(est.row("CPU").split.total.m_as(SWEEP_PANELS["cpu"]))
            values["dram"][name].append(est.row("DRAM").split.total.m_as(SWEEP_PANELS["dram"]))
    points = tuple(float(y) for y in years)
    return {
        panel: SweepSeries("mission_time", "yrs", points,
                           tuple((n, tuple(values[panel][n])) for n in names), unit)
        for panel, unit in SWEEP_PANELS.items()
    }


def render_references(levels: Sequence[ReferenceLevel]) -> str:
    lines = ["reference,intensity (gCO2e/kWh)"]
    lines += [f"{lvl.name},{fmt(lvl.intensity.m_as('gCO2e/kWh'))}" for lvl in levels]
    return "\n".join(lines) + "\n"


TABLE_HEADER = ("component", "unit", "M", "O", "O+M", "technology")


def render_table(estimates: Sequence[SystemEstimate]) -> str:
    """Delimited component table, one row per component and system."""
    lines = [",".join(TABLE_HEADER)]
    for est in estimates:
        for row in est.rows:
            s = row.split
            lines.append(",".join([row.component, row.unit, fmt(s.embodied.magnitude),
                                   fmt(s.operational.magnitude), fmt(s.total.magnitude),
                                   row.technology]))
    return "\n".join(lines) + "\n"


def _md_table(header: Sequence[str], rows: Sequence[Sequence[str]], align: str = "") -> list[str]:
    align = align or "l" + "r" * (len(header) - 1)
    rule = ["---:" if a == "r" else "---" for a in align]
    out = ["| " + " | ".join(header) + " |", "| " + " | ".join(rule) + " |"]
    out += ["| " + " | ".join(r) + " |" for r in rows]
    return out


def _q(q: Quantity, unit: str) -> str:
    return fmt(q.m_as(unit))


def render_report(est: SystemEstimate) -> str:
    s = est.system
    tech = s.technology
    lines = [f"# System report: {s.name}", ""]
    lines += ["## System", ""]
    lines += _md_table(["Parameter", "Value", "Unit"], [
        ["mission time", _q(s.mission_time, "yrs"), "yrs"],
        ["launch technology", f"{s.launch} ({tech.label})", ""],
        ["solar array", f"{s.solar.n_panels} x {_q(s.solar.panel_area, 'm^2')}", "m^2"],
        ["battery capacity", _q(s.battery.capacity, "kWh"), "kWh"],
        ["battery cycles", str(s.battery.cycles), "1"],
        ["cpu", f"{_q(s.cpu.mass, 'g')} g, {_q(s.cpu.die_area, 'mm^2')} mm^2, {_q(s.cpu.max_power, 'W')} W", ""],
        ["dram", f"{_q(s.dram.capacity, 'GB')} GB, {_q(s.dram.power_per_capacity, 'W/GB')} W/GB", ""],
        ["ssd", f"{_q(s.ssd.capacity, 'TB')} TB, {_q(s.ssd.average_power, 'W')} W", ""],
        ["transceiver", f"{_q(s.transceiver.mass, 'g')} g, {_q(s.transceiver.power, 'W')} W, "
                        f"{_q(s.transceiver.data_rate, 'Kbps')} Kbps", ""],
    ], align="lll")
    lines += ["", "## Launch and re-entry", ""]
    lines += _md_table(["Intensity", "Value (kgCO2e/kg)"], [
        ["fuel (per payload mass)", _q(fuel_intensity(tech), "kgCO2e/kg")],
        ["launch", _q(est.launch, "kgCO2e/kg")],
        ["re-entry", _q(est.reentry, "kgCO2e/kg")],
        ["launch and re-entry", _q(est.launch_and_reentry, "kgCO2e/kg")],
    ])
    lines += ["", "## Energy intensity", ""]
    lines += _md_table(["Source", "Value (gCO2e/kWh)"], [
        ["battery", _q(est.energy.battery, "gCO2e/kWh")],
        ["solar array", _q(est.energy.solar, "gCO2e/kWh")],
        ["total", _q(est.energy.total, "gCO2e/kWh")],
    ])
    lines += ["", "## Component intensities", "",
              "Idle (M) assumes the hardware is in place but switched off; "
              "full load (O+M) runs every component at maximum power.", ""]
    lines += _md_table(["Component", "Unit", "M", "O", "O+M"], [
        [r.component, r.unit, fmt(r.split.embodied.magnitude), fmt(r.split.operational.magnitude),
         fmt(r.split.total.magnitude)] for r in est.rows
    ], align="llrrr")
    lines += ["", "## Parameter provenance", ""]
    lines += _md_table(["Parameter", "Source"], [[k, v] for k, v in s.provenance], align="ll")
    if any(v == DEFAULT_CALIBRATED for _, v in s.provenance):
        lines += ["", f"Values marked {DEFAULT_CALIBRATED} are fitted defaults; "
                      "set them in the config to use measured data."]
    return "\n".join(lines) + "\n"


def render_comparison(estimates: Sequence[SystemEstimate]) -> str:
    names = [f"{e.system.name} ({e.system.technology.label})" for e in estimates]
    lines = ["# System comparison", ""]
    rows = [
        ["launch and re-entry (kgCO2e/kg)"] + [_q(e.launch_and_reentry, "kgCO2e/kg") for e in estimates],
        ["energy, battery (gCO2e/kWh)"] + [_q(e.energy.battery, "gCO2e/kWh") for e in estimates],
        ["energy, solar (gCO2e/kWh)"] + [_q(e.energy.solar, "gCO2e/kWh") for e in estimates],
        ["energy, total (gCO2e/kWh)"] + [_q(e.energy.total, "gCO2e/kWh") for e in estimates],
    ]
    for component in COMPONENTS:
        unit = estimates[0].row(component).unit
        rows.append([f"{component} M ({unit})"] +
                    [fmt(e.row(component).split.embodied.magnitude) for e in estimates])
        rows.append([f"{component} O+M ({unit})"] +
                    [fmt(e.row(component).split.total.magnitude) for e in estimates])
    lines += _md_table(["Quantity"] + names, rows)
    return "\n".join(lines) + "\n"


def render_frontier(f_grid: Sequence[float], n_grid: Sequence[int],
                    cells: Sequence[Sequence[Placement]]) -> str:
    """Rows are aggregation rates, columns hop counts, cells O/G/T."""
    lines = ["f_aggr\\n_hops," + ",".join(str(n) for n in n_grid)]
    for f, row in zip(f_grid, cells):
        lines.append(fmt(f) + "," + ",".join(c.value for c in row))
    return "\n".join(lines) + "\n"


FLOW_UNIT = "gCO2e/GB"


def flow_templates(flow: FlowConfig) -> dict[str, FlowTemplate]:
    return {
        t.label: build_template(flow.system, t, flow.ground, flow.isl, flow.gsl, flow.processing_time)
        for t in flow.compare
    }


def _flow_columns(templates: dict[str, FlowTemplate], cells) -> tuple:
    columns = []
    for label, template in templates.items():
        for placement in (Placement.GROUND, Placement.ORBIT):
            name = f"{'Ground' if placement is Placement.GROUND else 'Orbit'}-{label}"
            columns.append((name, tuple(
                flow_intensity(placement, template.scenario(f, n)).m_as(FLOW_UNIT) for f, n in cells)))
    return tuple(columns)


def hops_series(flow: FlowConfig, templates: dict[str, FlowTemplate] | None = None) -> SweepSeries:
    templates = templates or flow_templates(flow)
    hops = tuple(range(flow.hops_series_max + 1))
    cells = [(flow.hops_series_aggregation, n) for n in hops]
    return SweepSeries("n_hops", "1", tuple(float(n) for n in hops),
                       _flow_columns(templates, cells), FLOW_UNIT)


def aggregation_series(flow: FlowConfig, templates: dict[str, FlowTemplate] | None = None) -> SweepSeries:
    templates = templates or flow_templates(flow)
    rates = tuple(sorted(set(flow.aggregation_grid)))
    cells = [(f, flow.aggregation_series_hops) for f in rates]
    return SweepSeries("f_aggr", "1", rates, _flow_columns(templates, cells), FLOW_UNIT)


def frontier(flow: FlowConfig) -> list[list[Placement]]:
    template = build_template(flow.system, flow.technology, flow.ground, flow.isl, flow.gsl,
                              flow.processing_time)
    return placement_frontier(flow.aggregation_grid, flow.hop_grid, template)
