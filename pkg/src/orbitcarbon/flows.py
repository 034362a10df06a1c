"""Orbit-vs-ground placement of data aggregation.

A flow of raw data is either aggregated in orbit (the network then only
carries the remaining ``f_aggr`` share) or shipped raw and processed on the
ground.  Both routes cross ``n_hops`` inter-satellite links and one
ground-station link.  All intensities are per GB of raw data.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .launch import LaunchTechnology
from .power import system_energy_intensity
from .quantity import CARBON, DATA, Q, Quantity
from .workload import TransceiverSpec, cpu_intensity, packet_intensity

__all__ = [
    "FlowScenario",
    "FlowTemplate",
    "Placement",
    "TIE_REL_TOL",
    "build_template",
    "flow_intensity",
    "inflection_aggregation",
    "inflection_hops",
    "network_intensity",
    "placement_frontier",
]

FLOW_UNIT = "gCO2e/GB"
TIE_REL_TOL = 1e-9


class Placement(enum.Enum):
    ORBIT = "O"
    GROUND = "G"
    TIE = "T"


def _check_rate(f_aggr: float) -> None:
    if not 0 < f_aggr <= 1:
        raise ValueError(f"aggregation rate must lie in (0, 1], got {f_aggr!r}")


def _check_hops(n_hops: int) -> None:
    if isinstance(n_hops, bool) or n_hops != int(n_hops) or n_hops < 0:
        raise ValueError(f"hop count must be a non-negative integer, got {n_hops!r}")


@dataclass(frozen=True)
class FlowTemplate:
    """Link and processing intensities of one technology, before choosing
    an aggregation rate and hop count."""

    isl: Quantity
    gsl: Quantity
    proc_orbit: Quantity
    proc_ground: Quantity
    label: str = ""

    def __post_init__(self):
        for name in ("isl", "gsl", "proc_orbit", "proc_ground"):
            q = getattr(self, name)
            if q.dimension != CARBON / DATA:
                raise ValueError(f"{name} must be carbon per data volume, got {q.unit.label}")
            if q.magnitude < 0:
                raise ValueError(f"{name} must be >= 0, got {q}")

    def scenario(self, f_aggr: float, n_hops: int) -> "FlowScenario":
        return FlowScenario(f_aggr, n_hops, self.isl, self.gsl, self.proc_orbit, self.proc_ground)


@dataclass(frozen=True)
class FlowScenario:
    f_aggr: float
    n_hops: int
    isl: Quantity
    gsl: Quantity
    proc_orbit: Quantity
    proc_ground: Quantity

    def __post_init__(self):
        _check_rate(self.f_aggr)
        _check_hops(self.n_hops)
        FlowTemplate(self.isl, self.gsl, self.proc_orbit, self.proc_ground)


def network_intensity(f_aggr: float, n_hops: int, isl: Quantity, gsl: Quantity) -> Quantity:
    _check_rate(f_aggr)
    _check_hops(n_hops)
    return ((gsl + isl * n_hops) * f_aggr).to(FLOW_UNIT)


def flow_intensity(placement: Placement, scenario: FlowScenario) -> Quantity:
    s = scenario
    if placement is Placement.ORBIT:
        return (s.proc_orbit + network_intensity(s.f_aggr, s.n_hops, s.isl, s.gsl)).to(FLOW_UNIT)
    if placement is Placement.GROUND:
        # raw data crosses the network; nothing is aggregated before landing
        return (s.proc_ground + network_intensity(1.0, s.n_hops, s.isl, s.gsl)).to(FLOW_UNIT)
    raise ValueError(f"no flow intensity for placement {placement!r}")


def preferred_placement(scenario: FlowScenario) -> Placement:
    orbit = flow_intensity(Placement.ORBIT, scenario).si
    ground = flow_intensity(Placement.GROUND, scenario).si
    if math.isclose(orbit, ground, rel_tol=TIE_REL_TOL):
        return Placement.TIE
    return Placement.ORBIT if orbit < ground else Placement.GROUND


def placement_frontier(f_grid: Sequence[float], n_grid: Sequence[int],
                       template: FlowTemplate) -> list[list[Placement]]:
    """Cheaper placement per cell; rows follow ``f_grid``, columns ``n_grid``."""
    if not f_grid or not n_grid:
        raise ValueError("frontier grids must be non-empty")
    return [[preferred_placement(template.scenario(f, n)) for n in n_grid] for f in f_grid]


def inflection_hops(f_aggr: float, template: FlowTemplate) -> float | None:
    """Real-valued hop count where orbit and ground flows cost the same.

    Returns ``None`` when no non-negative crossing exists, including
    ``f_aggr == 1`` where aggregation saves nothing.  Beyond the crossing,
    orbit placement is cheaper.
    """
    _check_rate(f_aggr)
    if f_aggr == 1 or template.isl.si == 0:
        return None
    penalty = (template.proc_orbit - template.proc_ground).si
    n = (penalty / (1 - f_aggr) - template.gsl.si) / template.isl.si
    return n if n >= 0 else None


def inflection_aggregation(n_hops: int, template: FlowTemplate) -> float | None:
    """Aggregation rate below which orbit placement is cheaper, for a fixed
    hop count; ``None`` when no rate in (0, 1) balances the two."""
    _check_hops(n_hops)
    network = (template.gsl + template.isl * n_hops).si
    if network == 0:
        return None
    f = 1 - (template.proc_orbit - template.proc_ground).si / network
    return f if 0 < f < 1 else None


def link_intensity(tx: TransceiverSpec, energy_intensity: Quantity, tech: LaunchTechnology,
                   mission_time: Quantity) -> Quantity:
    per_packet = packet_intensity(tx, energy_intensity, tech, mission_time).total
    return (per_packet / tx.mtu).to(FLOW_UNIT)


def build_template(system, tech: LaunchTechnology, ground: LaunchTechnology,
                   isl: TransceiverSpec, gsl: TransceiverSpec,
                   processing_time: Quantity) -> FlowTemplate:
    """Derive flow intensities from the component models.

    Orbital processing runs on ``system``'s CPU launched with ``tech``;
    ground processing on the same CPU kept on Earth.  Both links are
    satellite-side transceivers flown with ``tech``.  ``processing_time`` is
    CPU time per unit of raw data.
    """
    if processing_time.dimension != Q(1, "s/GB").dimension or processing_time.magnitude < 0:
        raise ValueError(f"processing time must be a non-negative time per data volume, got {processing_time}")
    t = system.mission_time
    orbit = system_energy_intensity(system.battery, system.solar, tech, t).total
    earth = system_energy_intensity(system.battery, system.solar, ground, t).total
    cpu_orbit = cpu_intensity(system.cpu, orbit, tech, t).total
    cpu_ground = cpu_intensity(system.cpu, earth, ground, t).total
    return FlowTemplate(
        isl=link_intensity(isl, orbit, tech, t),
        gsl=link_intensity(gsl, orbit, tech, t),
        proc_orbit=(cpu_orbit * processing_time).to(FLOW_UNIT),
        proc_ground=(cpu_ground * processing_time).to(FLOW_UNIT),
        label=tech.label,
    )
