"""Strict loading of system configs, the launch registry and flow files.

All three use TOML.  Units are fixed per key (see ``SYSTEM_SCHEMA``); there
is no unit-suffix syntax.  Unknown keys and sections are rejected in strict
mode and logged and dropped otherwise.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Mapping, NamedTuple

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .launch import LaunchTechnology, Propellant, ReentryModel, Registry
from .power import Battery, SolarArray
from .quantity import Q, Quantity
from .workload import CpuSpec, DramSpec, SsdSpec, TransceiverSpec

log = logging.getLogger(__name__)

__all__ = [
    "ConfigError",
    "FlowConfig",
    "System",
    "SystemConfig",
    "emit_system_config",
    "load_flow_config",
    "load_registry",
    "load_system_config",
    "parse_flow_config",
    "parse_registry",
    "parse_system_config",
    "resolve",
]

DEFAULT_CALIBRATED = "default-calibrated"
USER_SUPPLIED = "user-supplied"


class ConfigError(ValueError):
    """A validation failure, located by file, section and key."""

    def __init__(self, source: str, section: str | None, key: str | None, problem: str):
        self.source, self.section, self.key, self.problem = source, section, key, problem
        where = source
        if section:
            where += f": [{section}]"
        if key:
            where += f" {key}"
        super().__init__(f"{where}: {problem}")


class Field(NamedTuple):
    unit: str | None  # None for counts, strings and booleans
    kind: str  # "float", "int", "str", "bool"
    required: bool = True
    positive: bool = True  # strictly > 0; otherwise >= 0


# section None is the document's top level
SYSTEM_SCHEMA: dict[str | None, dict[str, Field]] = {
    None: {
        "mission_time": Field("yrs", "float"),
        "launch": Field(None, "str"),
    },
    "solar_array": {
        "area": Field("m^2", "float"),
        "panels": Field(None, "int"),
    },
    "battery": {
        "capacity": Field("kWh", "float"),
        "cycles": Field(None, "int"),
    },
    "transceiver": {
        "mass": Field("g", "float"),
        "power": Field("W", "float", positive=False),
        "data_rate": Field("Kbps", "float"),
        "production": Field("gCO2e", "float", required=False, positive=False),
    },
    "cpu": {
        "mass": Field("g", "float"),
        "area": Field("mm^2", "float"),
        "max_power": Field("W", "float", positive=False),
    },
    "dram": {
        "capacity": Field("GB", "float"),
        "power_per_memory": Field("W/GB", "float", positive=False),
        "mass": Field("g", "float", required=False),
        "production": Field("gCO2e/GB", "float", required=False, positive=False),
    },
    "ssd": {
        "capacity": Field("TB", "float"),
        "average_power": Field("W", "float", positive=False),
        "mass": Field("g", "float", required=False),
        "production": Field("gCO2e/GB", "float", required=False, positive=False),
    },
}

# optional keys whose absence falls back to a calibrated default
CALIBRATED_DEFAULTS: dict[tuple[str, str], Quantity] = {
    ("transceiver", "production"): Q(2120.0, "gCO2e"),
    ("dram", "mass"): Q(15.0, "g"),
    ("dram", "production"): Q(473.0, "gCO2e/GB"),
    ("ssd", "mass"): Q(60.0, "g"),
    ("ssd", "production"): Q(6.3, "gCO2e/GB"),
}

TRANSCEIVER_SCHEMA = SYSTEM_SCHEMA["transceiver"]


def _load_toml(text: str, source: str) -> dict[str, Any]:
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(source, None, None, f"not a valid TOML document ({exc})") from None


def _typed(value: Any, spec: Field, source: str, section: str | None, key: str):
    def fail(problem: str):
        raise ConfigError(source, section, key, problem)

    if spec.kind == "str":
        if not isinstance(value, str):
            fail(f"expected a string, got {type(value).__name__}")
        return value
    if spec.kind == "bool":
        if not isinstance(value, bool):
            fail(f"expected true/false, got {type(value).__name__}")
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        fail(f"expected a number, got {type(value).__name__}")
    if spec.kind == "int" and not isinstance(value, int):
        fail(f"expected an integer, got {value!r}")
    if not math.isfinite(value):
        fail(f"expected a finite number, got {value!r}")
    if spec.positive and value <= 0:
        fail(f"must be > 0, got {value!r}")
    if value < 0:
        fail(f"must be >= 0, got {value!r}")
    if spec.unit is None:
        return value
    return Q(float(value), spec.unit)


def _validate_section(table: Mapping[str, Any], schema: Mapping[str, Field], source: str,
                      section: str | None, strict: bool, skip: Iterable[str] = ()) -> dict[str, Any]:
    out: dict[str, Any] = {}
    skip = set(skip)
    for key, value in table.items():
        if key in skip:
            continue
        if key not in schema:
            msg = f"unknown key {key!r} (allowed: {', '.join(schema)})"
            if strict:
                raise ConfigError(source, section, key, msg)
            log.warning("%s", ConfigError(source, section, key, msg + "; ignored"))
            continue
        out[key] = _typed(value, schema[key], source, section, key)
    for key, spec in schema.items():
        if spec.required and key not in out:
            raise ConfigError(source, section, key, "missing required key")
    return out


@dataclass(frozen=True)
class SystemConfig:
    """A validated, not yet resolved, system configuration."""

    name: str
    source: str
    mission_time: Quantity
    launch: str
    sections: Mapping[str, Mapping[str, Any]] = field(default_factory=dict)

    def get(self, section: str, key: str, default=None):
        return self.sections.get(section, {}).get(key, default)


def parse_system_config(text: str, source: str = "<config>", name: str | None = None,
                        strict: bool = True) -> SystemConfig:
    doc = _load_toml(text, source)
    sections = [s for s in SYSTEM_SCHEMA if s is not None]
    top = _validate_section(doc, SYSTEM_SCHEMA[None], source, None, strict,
                            skip=[s for s in sections if s in doc])
    parsed: dict[str, dict[str, Any]] = {}
    for section in sections:
        if section not in doc:
            raise ConfigError(source, section, None, "missing section")
        table = doc[section]
        if not isinstance(table, dict):
            raise ConfigError(source, section, None, "expected a table")
        parsed[section] = _validate_section(table, SYSTEM_SCHEMA[section], source, section, strict)
    if name is None:
        name = Path(source).stem if source and not source.startswith("<") else "system"
    return SystemConfig(name=name, source=source, mission_time=top["mission_time"],
                        launch=top["launch"], sections=parsed)


def load_system_config(path: str | Path, strict: bool = True) -> SystemConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(str(path), None, None, f"cannot read file ({exc.strerror})") from None
    return parse_system_config(text, source=str(path), name=path.stem, strict=strict)


@dataclass(frozen=True)
class System:
    """A fully resolved system: hardware, mission time and bound technology."""

    name: str
    mission_time: Quantity
    launch: str
    technology: LaunchTechnology
    battery: Battery
    solar: SolarArray
    cpu: CpuSpec
    dram: DramSpec
    ssd: SsdSpec
    transceiver: TransceiverSpec
    provenance: tuple[tuple[str, str], ...] = ()

    def with_technology(self, tech: LaunchTechnology, launch: str | None = None) -> "System":
        return replace(self, technology=tech, launch=launch or tech.name)

    def with_mission_time(self, mission_time: Quantity) -> "System":
        return replace(self, mission_time=mission_time)


def transceiver_from(values: Mapping[str, Any]) -> TransceiverSpec:
    return TransceiverSpec(
        mass=values["mass"], power=values["power"], data_rate=values["data_rate"],
        production=values.get("production", CALIBRATED_DEFAULTS[("transceiver", "production")]),
    )


def resolve(config: SystemConfig, registry: Registry) -> System:
    """Bind the launch technology and fill calibrated defaults."""
    if config.launch not in registry:
        known = ", ".join(registry.names())
        raise ConfigError(config.source, None, "launch",
                          f"unknown launch technology {config.launch!r} (known: {known})")

    def value(section: str, key: str) -> Any:
        v = config.get(section, key)
        if v is None:
            return CALIBRATED_DEFAULTS[(section, key)]
        return v

    provenance = tuple(
        (f"{section}.{key}",
         USER_SUPPLIED if config.get(section, key) is not None else DEFAULT_CALIBRATED)
        for section, key in CALIBRATED_DEFAULTS
    )
    s = config.sections
    try:
        return System(
            name=config.name,
            mission_time=config.mission_time,
            launch=config.launch,
            technology=registry.get(config.launch),
            battery=Battery(capacity=s["battery"]["capacity"], cycles=s["battery"]["cycles"]),
            solar=SolarArray(panel_area=s["solar_array"]["area"], n_panels=s["solar_array"]["panels"]),
            cpu=CpuSpec(mass=s["cpu"]["mass"], die_area=s["cpu"]["area"], max_power=s["cpu"]["max_power"]),
            dram=DramSpec(capacity=s["dram"]["capacity"],
                          power_per_capacity=s["dram"]["power_per_memory"],
                          mass=value("dram", "mass"),
                          production_per_capacity=value("dram", "production")),
            ssd=SsdSpec(capacity=s["ssd"]["capacity"], average_power=s["ssd"]["average_power"],
                        mass=value("ssd", "mass"), production_per_capacity=value("ssd", "production")),
            transceiver=transceiver_from(s["transceiver"]),
            provenance=provenance,
        )
    except ValueError as exc:
        raise ConfigError(config.source, None, None, str(exc)) from None


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return repr(value)


def _config_values(system: System) -> dict[str | None, dict[str, Any]]:
    """Per-key values of a resolved system, in the config's own units."""
    return {
        None: {"mission_time": system.mission_time, "launch": system.launch},
        "solar_array": {"area": system.solar.panel_area, "panels": system.solar.n_panels},
        "battery": {"capacity": system.battery.capacity, "cycles": system.battery.cycles},
        "transceiver": {"mass": system.transceiver.mass, "power": system.transceiver.power,
                        "data_rate": system.transceiver.data_rate,
                        "production": system.transceiver.production},
        "cpu": {"mass": system.cpu.mass, "area": system.cpu.die_area,
                "max_power": system.cpu.max_power},
        "dram": {"capacity": system.dram.capacity,
                 "power_per_memory": system.dram.power_per_capacity,
                 "mass": system.dram.mass, "production": system.dram.production_per_capacity},
        "ssd": {"capacity": system.ssd.capacity, "average_power": system.ssd.average_power,
                "mass": system.ssd.mass, "production": system.ssd.production_per_capacity},
    }


def emit_system_config(system: System) -> str:
    """Serialise a resolved system back to config text.

    Calibrated defaults are written as comments so that re-parsing yields the
    same system, provenance included.
    """
    sources = dict(system.provenance)
    values = _config_values(system)
    lines = [f"# {system.name}: resolved configuration", ""]
    for section, schema in SYSTEM_SCHEMA.items():
        if section is not None:
            lines.append(f"[{section}]")
        for key, spec in schema.items():
            v = values[section][key]
            if isinstance(v, Quantity):
                v = v.m_as(spec.unit)
            text = f"{key} = {_fmt(v)} # {spec.unit or '1'}" if spec.kind != "str" else f"{key} = {_fmt(v)}"
            if sources.get(f"{section}.{key}") == DEFAULT_CALIBRATED:
                text = f"# {text} ({DEFAULT_CALIBRATED})"
            lines.append(text)
        lines.append("")
    return "\n".join(lines)


REENTRY_SCHEMA = {
    "nox_yield": Field(None, "float", positive=False),
    "nox_co2e_factor": Field("gCO2e/g", "float", positive=False),
}
PROPELLANT_SCHEMA = {"intensity": Field("kgCO2e/kg", "float", positive=False)}
TECHNOLOGY_SCHEMA = {
    "label": Field(None, "str", required=False),
    "grounded": Field(None, "bool", required=False),
    "production_first_stage": Field("tCO2e", "float", required=False, positive=False),
    "production_second_stage": Field("tCO2e", "float", required=False, positive=False),
    "fuel_emissions": Field("tCO2e", "float", required=False, positive=False),
    "payload": Field("t", "float", required=False),
    "reuse_first_stage": Field(None, "int", required=False),
    "reuse_second_stage": Field(None, "int", required=False),
    "reentry_extra_mass": Field("t", "float", required=False, positive=False),
}
_FUEL_MASS = Field("t", "float", positive=False)


def parse_registry(text: str, source: str = "<registry>", base: Registry | None = None,
                   strict: bool = True) -> Registry:
    """Parse a registry document, layering it over ``base`` if given."""
    doc = _load_toml(text, source)
    allowed = {"reentry", "propellant", "technology"}
    for key in doc:
        if key not in allowed:
            raise ConfigError(source, None, key, f"unknown section {key!r} (allowed: {', '.join(sorted(allowed))})")

    reentry = base.reentry if base else ReentryModel()
    if "reentry" in doc:
        values = _validate_section(doc["reentry"], REENTRY_SCHEMA, source, "reentry", strict)
        reentry = ReentryModel(nox_yield=values["nox_yield"], nox_co2e_factor=values["nox_co2e_factor"])

    propellants = dict(base.propellants) if base else {}
    for name, table in doc.get("propellant", {}).items():
        values = _validate_section(table, PROPELLANT_SCHEMA, source, f"propellant.{name}", strict)
        propellants[name] = Propellant(name, values["intensity"])

    technologies = dict(base.technologies) if base else {}
    for name, table in doc.get("technology", {}).items():
        section = f"technology.{name}"
        if not isinstance(table, dict):
            raise ConfigError(source, section, None, "expected a table")
        values = _validate_section(table, TECHNOLOGY_SCHEMA, source, section, strict, skip=["fuel"])
        label = values.get("label", name)
        if values.get("grounded", False):
            technologies[name] = LaunchTechnology.ground(name, label)
            continue
        manifest = []
        fuel = table.get("fuel", {})
        if not isinstance(fuel, dict):
            raise ConfigError(source, section, "fuel", "expected an inline table of propellant masses")
        for prop_name, mass in fuel.items():
            if prop_name not in propellants:
                raise ConfigError(source, section, "fuel", f"unknown propellant {prop_name!r}")
            manifest.append((propellants[prop_name], _typed(mass, _FUEL_MASS, source, section, f"fuel.{prop_name}")))
        for key in ("production_first_stage", "production_second_stage", "payload"):
            if key not in values:
                raise ConfigError(source, section, key, "missing required key")
        try:
            technologies[name] = LaunchTechnology(
                name=name, label=label,
                production_first_stage=values["production_first_stage"],
                production_second_stage=values["production_second_stage"],
                fuel_manifest=tuple(manifest),
                fuel_override=values.get("fuel_emissions"),
                payload=values["payload"],
                reuse_first_stage=values.get("reuse_first_stage", 1),
                reuse_second_stage=values.get("reuse_second_stage", 1),
                reentry_extra_mass=values.get("reentry_extra_mass", Q(0.0, "t")),
                reentry=reentry,
            )
        except ValueError as exc:
            raise ConfigError(source, section, None, str(exc)) from None
    return Registry(technologies=technologies, propellants=propellants, reentry=reentry)


def builtin_registry_text() -> str:
    return resources.files("orbitcarbon").joinpath("data/registry.toml").read_text(encoding="utf-8")


def load_registry(*paths: str | Path, strict: bool = True) -> Registry:
    """The bundled registry, extended by any user registry files."""
    registry = parse_registry(builtin_registry_text(), source="<builtin registry>")
    for path in paths:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(str(path), None, None, f"cannot read file ({exc.strerror})") from None
        registry = parse_registry(text, source=str(path), base=registry, strict=strict)
    return registry


DEFAULT_AGGREGATION_GRID = (1.0, 0.5, 0.1, 0.02, 0.01, 0.001)
DEFAULT_HOP_GRID = (0, 1, 3, 5, 7, 10)

FLOW_SCHEMA = {
    "system": Field(None, "str"),
    "launch": Field(None, "str"),
    "processing_time": Field("s/GB", "float"),
    "hops_series_aggregation": Field(None, "float", required=False),
    "hops_series_max": Field(None, "int", required=False),
    "aggregation_series_hops": Field(None, "int", required=False, positive=False),
}
FLOW_LISTS = {
    "compare": Field(None, "str"),
    "aggregation_grid": Field(None, "float"),
    "hop_grid": Field(None, "int", positive=False),
}


@dataclass(frozen=True)
class FlowConfig:
    name: str
    source: str
    system: System
    technology: LaunchTechnology
    compare: tuple[LaunchTechnology, ...]
    ground: LaunchTechnology
    processing_time: Quantity
    isl: TransceiverSpec
    gsl: TransceiverSpec
    aggregation_grid: tuple[float, ...] = DEFAULT_AGGREGATION_GRID
    hop_grid: tuple[int, ...] = DEFAULT_HOP_GRID
    hops_series_aggregation: float = 0.5
    hops_series_max: int = 10
    aggregation_series_hops: int = 1


def _typed_list(value: Any, item: Field, source: str, key: str) -> list:
    if not isinstance(value, list) or not value:
        raise ConfigError(source, None, key, "expected a non-empty array")
    return [_typed(v, item, source, None, key) for v in value]


def parse_flow_config(text: str, source: str = "<flow>", registry: Registry | None = None,
                      base_dir: Path | None = None, name: str | None = None,
                      strict: bool = True) -> FlowConfig:
    doc = _load_toml(text, source)
    registry = registry or load_registry()
    skip = [k for k in (*FLOW_LISTS, "isl", "gsl") if k in doc]
    schema = {**FLOW_SCHEMA, **{k: f._replace(required=False) for k, f in FLOW_LISTS.items()},
              "isl": Field(None, "table", required=False),
              "gsl": Field(None, "table", required=False)}
    top = _validate_section(doc, schema, source, None, strict, skip=skip)
    lists = {k: _typed_list(doc[k], f, source, k) for k, f in FLOW_LISTS.items() if k in doc}
    transceivers = {}
    for link in ("isl", "gsl"):
        if not isinstance(doc.get(link), dict):
            raise ConfigError(source, link, None, "missing section")
        transceivers[link] = transceiver_from(
            _validate_section(doc[link], TRANSCEIVER_SCHEMA, source, link, strict))

    base_dir = base_dir if base_dir is not None else (
        Path(source).parent if not source.startswith("<") else Path("."))
    system_config = load_system_config(base_dir / top["system"], strict=strict)
    system = resolve(system_config, registry)

    def tech(name_: str, key: str) -> LaunchTechnology:
        if name_ not in registry:
            raise ConfigError(source, None, key, f"unknown launch technology {name_!r}")
        t = registry.get(name_)
        if t.grounded:
            raise ConfigError(source, None, key, f"{name_!r} does not launch; flows need an orbital technology")
        return t

    technology = tech(top["launch"], "launch")
    compare = tuple(tech(n, "compare") for n in lists.get("compare", [top["launch"]]))
    grounds = [t for t in registry.technologies.values() if t.grounded]
    ground = grounds[0] if grounds else LaunchTechnology.ground()

    f_grid = tuple(lists.get("aggregation_grid", DEFAULT_AGGREGATION_GRID))
    for f in f_grid:
        if not 0 < f <= 1:
            raise ConfigError(source, None, "aggregation_grid", f"rates must lie in (0, 1], got {f!r}")
    f_series = top.get("hops_series_aggregation", 0.5)
    if not 0 < f_series <= 1:
        raise ConfigError(source, None, "hops_series_aggregation", f"must lie in (0, 1], got {f_series!r}")
    return FlowConfig(
        name=name or (Path(source).stem if not source.startswith("<") else "flow"),
        source=source,
        system=system,
        technology=technology,
        compare=compare,
        ground=ground,
        processing_time=top["processing_time"],
        isl=transceivers["isl"],
        gsl=transceivers["gsl"],
        aggregation_grid=f_grid,
        hop_grid=tuple(lists.get("hop_grid", DEFAULT_HOP_GRID)),
        hops_series_aggregation=f_series,
        hops_series_max=top.get("hops_series_max", 10),
        aggregation_series_hops=top.get("aggregation_series_hops", 1),
    )


def load_flow_config(path: str | Path, registry: Registry | None = None,
                     strict: bool = True) -> FlowConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(str(path), None, None, f"cannot read file ({exc.strerror})") from None
    return parse_flow_config(text, source=str(path), registry=registry, base_dir=path.parent,
                             name=path.stem, strict=strict)


@dataclass(frozen=True)
class ReferenceLevel:
    name: str
    intensity: Quantity


def parse_reference_levels(text: str, source: str = "<references>") -> tuple[ReferenceLevel, ...]:
    doc = _load_toml(text, source)
    levels = []
    for name, value in doc.get("levels", {}).items():
        q = _typed(value, Field("gCO2e/kWh", "float", positive=False), source, "levels", name)
        levels.append(ReferenceLevel(name, q))
    extra = set(doc) - {"levels"}
    if extra:
        key = sorted(extra)[0]
        raise ConfigError(source, None, key, f"unknown section {key!r} (allowed: levels)")
    return tuple(levels)


def load_reference_levels(path: str | Path | None = None) -> tuple[ReferenceLevel, ...]:
    if path is None:
        text = resources.files("orbitcarbon").joinpath("data/reference_levels.toml").read_text(encoding="utf-8")
        return parse_reference_levels(text, "<builtin reference levels>")
    path = Path(path)
    return parse_reference_levels(path.read_text(encoding="utf-8"), str(path))
