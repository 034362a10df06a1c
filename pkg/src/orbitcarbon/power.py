"""Carbon intensity of the energy supplied by a battery plus solar array."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .launch import LaunchTechnology, launch_emissions
from .quantity import ENERGY, LENGTH, TIME, Q, Quantity

__all__ = [
    "Battery",
    "EnergyBreakdown",
    "Location",
    "SolarArray",
    "battery_energy_intensity",
    "battery_mass",
    "irradiance",
    "location_of",
    "solar_energy_intensity",
    "solar_mass",
    "system_energy_intensity",
]

ENERGY_INTENSITY_UNIT = "gCO2e/kWh"


class Location(enum.Enum):
    EARTH = "Earth"
    ORBIT = "Orbit"


_IRRADIANCE = {
    Location.EARTH: Q(400.0, "W/m^2"),
    Location.ORBIT: Q(1367.0, "W/m^2"),
}


def irradiance(location: Location) -> Quantity:
    return _IRRADIANCE[location]


def location_of(tech: LaunchTechnology) -> Location:
    return Location.EARTH if tech.grounded else Location.ORBIT


@dataclass(frozen=True)
class Battery:
    capacity: Quantity
    cycles: int
    mass_density: Quantity = Q(3.75, "kg/kWh")
    production_intensity: Quantity = Q(100.0, "kgCO2e/kWh")

    def __post_init__(self):
        if self.capacity.dimension != ENERGY or self.capacity.magnitude <= 0:
            raise ValueError(f"battery capacity must be a positive energy, got {self.capacity}")
        if isinstance(self.cycles, bool) or not isinstance(self.cycles, int) or self.cycles < 1:
            raise ValueError(f"battery cycles must be an integer >= 1, got {self.cycles!r}")

    @property
    def lifetime_energy(self) -> Quantity:
        return (self.capacity * self.cycles).to("kWh")


@dataclass(frozen=True)
class SolarArray:
    panel_area: Quantity
    n_panels: int
    areal_mass: Quantity = Q(3.41, "kg/m^2")
    per_panel_mass: Quantity = Q(0.65, "kg")
    fixed_mass: Quantity = Q(0.4, "kg")
    production_intensity: Quantity = Q(615.0, "kgCO2e/kW")

    def __post_init__(self):
        if self.panel_area.dimension != LENGTH ** 2 or self.panel_area.magnitude <= 0:
            raise ValueError(f"panel area must be a positive area, got {self.panel_area}")
        if isinstance(self.n_panels, bool) or not isinstance(self.n_panels, int) or self.n_panels < 1:
            raise ValueError(f"number of panels must be an integer >= 1, got {self.n_panels!r}")

    @property
    def total_area(self) -> Quantity:
        return self.panel_area * self.n_panels

    @property
    def rated_power(self) -> Quantity:
        # production is rated at terrestrial irradiance wherever the array flies
        return (irradiance(Location.EARTH) * self.total_area).to("kW")

    def power(self, location: Location) -> Quantity:
        return (irradiance(location) * self.total_area).to("W")


@dataclass(frozen=True)
class EnergyBreakdown:
    battery: Quantity
    solar: Quantity

    @property
    def total(self) -> Quantity:
        return self.battery + self.solar


def battery_mass(b: Battery) -> Quantity:
    return (b.capacity * b.mass_density).to("kg")


def battery_embodied(b: Battery, tech: LaunchTechnology) -> Quantity:
    production = b.capacity * b.production_intensity
    return (production + launch_emissions(tech, battery_mass(b))).to("kgCO2e")


def battery_energy_intensity(b: Battery, tech: LaunchTechnology) -> Quantity:
    """Embodied battery emissions spread over every kWh it cycles."""
    return (battery_embodied(b, tech) / b.lifetime_energy).to(ENERGY_INTENSITY_UNIT)


def solar_mass(s: SolarArray) -> Quantity:
    per_panel = s.areal_mass * s.panel_area + s.per_panel_mass
    return (per_panel * s.n_panels + s.fixed_mass).to("kg")


def solar_embodied(s: SolarArray, tech: LaunchTechnology) -> Quantity:
    production = s.rated_power * s.production_intensity
    return (production + launch_emissions(tech, solar_mass(s))).to("kgCO2e")


def solar_energy_intensity(s: SolarArray, tech: LaunchTechnology,
                           mission_time: Quantity) -> Quantity:
    if mission_time.dimension != TIME or mission_time.magnitude <= 0:
        raise ValueError(f"mission time must be a positive duration, got {mission_time}")
    lifetime_energy = s.power(location_of(tech)) * mission_time
    return (solar_embodied(s, tech) / lifetime_energy).to(ENERGY_INTENSITY_UNIT)


def system_energy_intensity(b: Battery, s: SolarArray, tech: LaunchTechnology,
                            mission_time: Quantity) -> EnergyBreakdown:
    return EnergyBreakdown(
        battery=battery_energy_intensity(b, tech),
        solar=solar_energy_intensity(s, tech, mission_time),
    )
