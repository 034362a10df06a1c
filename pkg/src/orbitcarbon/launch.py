"""Launch and re-entry carbon intensities per kilogram of payload."""

from __future__ import annotations

from dataclasses import dataclass, field

from .quantity import CARBON, MASS, Q, Quantity

__all__ = [
    "LaunchTechnology",
    "Propellant",
    "ReentryModel",
    "Registry",
    "UnknownTechnologyError",
    "EARTH",
    "combined_intensity",
    "fuel_emissions",
    "fuel_intensity",
    "launch_emissions",
    "launch_intensity",
    "reentry_intensity",
]

INTENSITY_UNIT = "kgCO2e/kg"


class UnknownTechnologyError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0])


def _require(q: Quantity, dim, what: str, positive: bool = False) -> None:
    if q.dimension != dim:
        raise ValueError(f"{what}: expected {dim}, got {q.unit.label}")
    if q.magnitude < 0 or (positive and q.magnitude == 0):
        raise ValueError(f"{what} must be {'> 0' if positive else '>= 0'}, got {q}")


@dataclass(frozen=True)
class Propellant:
    name: str
    intensity: Quantity  # carbon per propellant mass

    def __post_init__(self):
        _require(self.intensity, CARBON / MASS, f"propellant {self.name} intensity")


@dataclass(frozen=True)
class ReentryModel:
    """NOx produced by burning mass, expressed as CO2e per burned mass."""

    nox_yield: float = 0.4
    nox_co2e_factor: Quantity = Q(298.0, "gCO2e/g")

    def __post_init__(self):
        if self.nox_yield < 0:
            raise ValueError("nox_yield must be >= 0")
        _require(self.nox_co2e_factor, CARBON / MASS, "nox_co2e_factor")

    @property
    def intensity(self) -> Quantity:
        return (self.nox_co2e_factor * self.nox_yield).to(INTENSITY_UNIT)


@dataclass(frozen=True)
class LaunchTechnology:
    """A two-stage launcher, or the grounded (no launch) placeholder.

    ``fuel_override`` holds an aggregate fuel footprint where no propellant
    manifest is known.
    """

    name: str
    label: str = ""
    production_first_stage: Quantity = Q(0.0, "tCO2e")
    production_second_stage: Quantity = Q(0.0, "tCO2e")
    fuel_manifest: tuple[tuple[Propellant, Quantity], ...] = ()
    fuel_override: Quantity | None = None
    payload: Quantity = Q(1.0, "t")
    reuse_first_stage: int = 1
    reuse_second_stage: int = 1
    reentry_extra_mass: Quantity = Q(0.0, "t")
    reentry: ReentryModel = field(default_factory=ReentryModel)
    grounded: bool = False

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", self.name)
        if self.grounded:
            return
        for n, what in ((self.reuse_first_stage, "reuse_first_stage"),
                        (self.reuse_second_stage, "reuse_second_stage")):
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise ValueError(f"{self.name}: {what} must be an integer >= 1, got {n!r}")
        _require(self.production_first_stage, CARBON, f"{self.name}: production_first_stage")
        _require(self.production_second_stage, CARBON, f"{self.name}: production_second_stage")
        _require(self.payload, MASS, f"{self.name}: payload", positive=True)
        _require(self.reentry_extra_mass, MASS, f"{self.name}: reentry_extra_mass")
        for prop, mass in self.fuel_manifest:
            _require(mass, MASS, f"{self.name}: fuel mass of {prop.name}")
        if self.fuel_override is not None:
            _require(self.fuel_override, CARBON, f"{self.name}: fuel_emissions")
        elif not self.fuel_manifest:
            raise ValueError(f"{self.name}: needs a fuel manifest or aggregate fuel emissions")

    @classmethod
    def ground(cls, name: str = "None", label: str = "Earth") -> "LaunchTechnology":
        return cls(name=name, label=label, grounded=True)


EARTH = LaunchTechnology.ground()


def fuel_emissions(tech: LaunchTechnology) -> Quantity:
    if tech.grounded:
        return Q(0.0, "tCO2e")
    if tech.fuel_override is not None:
        return tech.fuel_override
    total = Q(0.0, "tCO2e")
    for prop, mass in tech.fuel_manifest:
        total = total + mass * prop.intensity
    return total


def fuel_intensity(tech: LaunchTechnology) -> Quantity:
    """Fuel emissions normalised by payload capacity."""
    if tech.grounded:
        return Q(0.0, INTENSITY_UNIT)
    return (fuel_emissions(tech) / tech.payload).to(INTENSITY_UNIT)


def launch_intensity(tech: LaunchTechnology) -> Quantity:
    if tech.grounded:
        return Q(0.0, INTENSITY_UNIT)
    per_launch = (tech.production_first_stage / tech.reuse_first_stage
                  + tech.production_second_stage / tech.reuse_second_stage
                  + fuel_emissions(tech))
    return (per_launch / tech.payload).to(INTENSITY_UNIT)


def reentry_intensity(tech: LaunchTechnology) -> Quantity:
    if tech.grounded:
        return Q(0.0, INTENSITY_UNIT)
    burned = (tech.payload + tech.reentry_extra_mass) / tech.payload
    return tech.reentry.intensity * float(burned)


def combined_intensity(tech: LaunchTechnology) -> Quantity:
    return launch_intensity(tech) + reentry_intensity(tech)


def launch_emissions(tech: LaunchTechnology, mass: Quantity) -> Quantity:
    """Launch and re-entry emissions attributable to a component of ``mass``."""
    _require(mass, MASS, "component mass")
    return (mass * combined_intensity(tech)).to("kgCO2e")


@dataclass
class Registry:
    technologies: dict[str, LaunchTechnology] = field(default_factory=dict)
    propellants: dict[str, Propellant] = field(default_factory=dict)
    reentry: ReentryModel = field(default_factory=ReentryModel)

    def get(self, name: str) -> LaunchTechnology:
        try:
            return self.technologies[name]
        except KeyError:
            known = ", ".join(sorted(self.technologies))
            raise UnknownTechnologyError(
                f"unknown launch technology {name!r} (known: {known})") from None

    def __contains__(self, name: str) -> bool:
        return name in self.technologies

    def names(self) -> list[str]:
        return list(self.technologies)

