"""Per-component embodied (M) and operational (O) intensities.

CPU intensities are per second of whole-device time, DRAM and SSD per GB
held per second, and the transceiver per MTU-sized packet.  Embodied parts
amortise production plus launch/re-entry over the mission time; operational
parts price the drawn energy at the supply's energy intensity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .launch import LaunchTechnology, combined_intensity, launch_emissions, launch_intensity, reentry_intensity
from .power import EnergyBreakdown, system_energy_intensity
from .quantity import CARBON, DATA, ENERGY, LENGTH, MASS, TIME, Q, Quantity

if TYPE_CHECKING:
    from .config import System

__all__ = [
    "COMPONENTS",
    "CpuSpec",
    "DramSpec",
    "SciSplit",
    "SsdSpec",
    "SystemEstimate",
    "TableRow",
    "TransceiverSpec",
    "cpu_intensity",
    "dram_intensity",
    "estimate",
    "intensity_table",
    "packet_intensity",
    "ssd_intensity",
]

CPU_UNIT = "µgCO2e/s"
MEMORY_UNIT = "µgCO2e/GB/s"
PACKET_UNIT = "µgCO2e/pkt"

COMPONENTS = ("CPU", "DRAM", "SSD", "Transceiver")
UNITS = {"CPU": CPU_UNIT, "DRAM": MEMORY_UNIT, "SSD": MEMORY_UNIT, "Transceiver": PACKET_UNIT}


def _check(q: Quantity, dim, what: str, strict: bool = True) -> None:
    if q.dimension != dim:
        raise ValueError(f"{what}: expected {dim}, got {q.unit.label}")
    if q.magnitude < 0 or (strict and q.magnitude == 0):
        raise ValueError(f"{what} must be {'> 0' if strict else '>= 0'}, got {q}")


@dataclass(frozen=True)
class SciSplit:
    embodied: Quantity
    operational: Quantity

    def __post_init__(self):
        if self.embodied.dimension != self.operational.dimension:
            raise ValueError("embodied and operational parts must share a dimension")

    @property
    def total(self) -> Quantity:
        return self.embodied + self.operational

    def to(self, unit: str) -> "SciSplit":
        return SciSplit(self.embodied.to(unit), self.operational.to(unit))


@dataclass(frozen=True)
class CpuSpec:
    mass: Quantity
    die_area: Quantity
    max_power: Quantity
    production_per_area: Quantity = Q(250.0, "gCO2e/cm^2")

    def __post_init__(self):
        _check(self.mass, MASS, "cpu mass")
        _check(self.die_area, LENGTH ** 2, "cpu die area")
        _check(self.max_power, ENERGY / TIME, "cpu max power", strict=False)

    @property
    def production(self) -> Quantity:
        return (self.production_per_area * self.die_area).to("gCO2e")


@dataclass(frozen=True)
class DramSpec:
    capacity: Quantity
    power_per_capacity: Quantity
    mass: Quantity = Q(15.0, "g")
    production_per_capacity: Quantity = Q(473.0, "gCO2e/GB")

    def __post_init__(self):
        _check(self.capacity, DATA, "dram capacity")
        _check(self.power_per_capacity, ENERGY / TIME / DATA, "dram power per memory", strict=False)
        _check(self.mass, MASS, "dram mass")
        _check(self.production_per_capacity, CARBON / DATA, "dram production", strict=False)

    @property
    def production(self) -> Quantity:
        return (self.production_per_capacity * self.capacity).to("gCO2e")


@dataclass(frozen=True)
class SsdSpec:
    capacity: Quantity
    average_power: Quantity
    mass: Quantity = Q(60.0, "g")
    production_per_capacity: Quantity = Q(6.3, "gCO2e/GB")

    def __post_init__(self):
        _check(self.capacity, DATA, "ssd capacity")
        _check(self.average_power, ENERGY / TIME, "ssd average power", strict=False)
        _check(self.mass, MASS, "ssd mass")
        _check(self.production_per_capacity, CARBON / DATA, "ssd production", strict=False)

    @property
    def production(self) -> Quantity:
        return (self.production_per_capacity * self.capacity).to("gCO2e")


@dataclass(frozen=True)
class TransceiverSpec:
    mass: Quantity
    power: Quantity
    data_rate: Quantity
    production: Quantity = Q(2120.0, "gCO2e")
    mtu: Quantity = Q(1500.0, "B/pkt")

    def __post_init__(self):
        _check(self.mass, MASS, "transceiver mass")
        _check(self.power, ENERGY / TIME, "transceiver power", strict=False)
        _check(self.data_rate, DATA / TIME, "transceiver data rate")
        _check(self.production, CARBON, "transceiver production", strict=False)

    @property
    def transmission_time(self) -> Quantity:
        """Seconds on air per packet."""
        return (self.mtu / self.data_rate).to("s/pkt")


def _embodied(production: Quantity, mass: Quantity, tech: LaunchTechnology) -> Quantity:
    return production + launch_emissions(tech, mass)


def _positive_time(mission_time: Quantity) -> None:
    _check(mission_time, TIME, "mission time")


def cpu_intensity(cpu: CpuSpec, energy_intensity: Quantity, tech: LaunchTechnology,
                  mission_time: Quantity) -> SciSplit:
    _positive_time(mission_time)
    m = _embodied(cpu.production, cpu.mass, tech) / mission_time
    o = cpu.max_power * energy_intensity
    return SciSplit(m, o).to(CPU_UNIT)


def dram_intensity(dram: DramSpec, energy_intensity: Quantity, tech: LaunchTechnology,
                   mission_time: Quantity) -> SciSplit:
    _positive_time(mission_time)
    m = _embodied(dram.production, dram.mass, tech) / (mission_time * dram.capacity)
    o = dram.power_per_capacity * energy_intensity
    return SciSplit(m, o).to(MEMORY_UNIT)


def ssd_intensity(ssd: SsdSpec, energy_intensity: Quantity, tech: LaunchTechnology,
                  mission_time: Quantity) -> SciSplit:
    _positive_time(mission_time)
    m = _embodied(ssd.production, ssd.mass, tech) / (mission_time * ssd.capacity)
    o = ssd.average_power / ssd.capacity * energy_intensity
    return SciSplit(m, o).to(MEMORY_UNIT)


def packet_intensity(tx: TransceiverSpec, energy_intensity: Quantity, tech: LaunchTechnology,
                     mission_time: Quantity) -> SciSplit:
    """Per-packet intensity; the packet's time share of the mission carries
    that share of the transceiver's embodied emissions."""
    _positive_time(mission_time)
    airtime = tx.transmission_time
    m = airtime / mission_time * _embodied(tx.production, tx.mass, tech)
    o = airtime * tx.power * energy_intensity
    return SciSplit(m, o).to(PACKET_UNIT)


@dataclass(frozen=True)
class TableRow:
    component: str
    unit: str
    split: SciSplit
    technology: str


@dataclass(frozen=True)
class SystemEstimate:
    system: "System"
    launch: Quantity
    reentry: Quantity
    launch_and_reentry: Quantity
    energy: EnergyBreakdown
    rows: tuple[TableRow, ...]

    def row(self, component: str) -> TableRow:
        for r in self.rows:
            if r.component == component:
                return r
        raise KeyError(component)


def component_splits(system: "System", energy_intensity: Quantity | None = None) -> dict[str, SciSplit]:
    tech, t = system.technology, system.mission_time
    if energy_intensity is None:
        energy_intensity = system_energy_intensity(system.battery, system.solar, tech, t).total
    return {
        "CPU": cpu_intensity(system.cpu, energy_intensity, tech, t),
        "DRAM": dram_intensity(system.dram, energy_intensity, tech, t),
        "SSD": ssd_intensity(system.ssd, energy_intensity, tech, t),
        "Transceiver": packet_intensity(system.transceiver, energy_intensity, tech, t),
    }


def intensity_table(system: "System") -> list[TableRow]:
    """Idle (M) and full-load (O+M) rows, one per component."""
    splits = component_splits(system)
    label = system.technology.label
    return [TableRow(name, UNITS[name], splits[name], label) for name in COMPONENTS]


def estimate(system: "System") -> SystemEstimate:
    tech = system.technology
    energy = system_energy_intensity(system.battery, system.solar, tech, system.mission_time)
    splits = component_splits(system, energy.total)
    rows = tuple(TableRow(n, UNITS[n], splits[n], tech.label) for n in COMPONENTS)
    return SystemEstimate(
        system=system,
        launch=launch_intensity(tech),
        reentry=reentry_intensity(tech),
        launch_and_reentry=combined_intensity(tech),
        energy=energy,
        rows=rows,
    )
