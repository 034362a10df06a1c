"""Dimension-checked quantities for the emission model.

Every model value carries a :class:`Dimension` (integer exponents over a
small set of base dimensions) and a :class:`Unit` that maps its magnitude to
the canonical base units::

    mass g, length m, time s, energy J, carbon gCO2e, data B, packet pkt

Carbon mass and physical mass are separate base dimensions, so ``g`` and
``gCO2e`` never mix without an explicit intensity factor.  Energy is kept as
its own base dimension so that both ``g`` and ``J`` can be canonical.

>>> (Q(28, "W") * Q(34.0, "gCO2e/kWh")).to("gCO2e/s").magnitude
0.00026444444444444444
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

__all__ = [
    "BASE_DIMENSIONS",
    "Dimension",
    "DimensionError",
    "Quantity",
    "Q",
    "Unit",
    "UnitError",
    "combine",
    "convert",
    "parse_unit",
    "SECONDS_PER_YEAR",
]

BASE_DIMENSIONS = ("mass", "length", "time", "energy", "carbon", "data", "packet")
_BASE_SYMBOLS = ("g", "m", "s", "J", "gCO2e", "B", "pkt")
# label order: carbon first reads naturally for intensities (gCO2e/kWh)
_LABEL_ORDER = (4, 0, 3, 5, 6, 1, 2)

SECONDS_PER_YEAR = 365.25 * 86400.0


class DimensionError(TypeError):
    """Raised when quantities of incompatible dimensions are combined."""


class UnitError(ValueError):
    """Raised for unknown or malformed unit labels."""


@dataclass(frozen=True)
class Dimension:
    mass: int = 0
    length: int = 0
    time: int = 0
    energy: int = 0
    carbon: int = 0
    data: int = 0
    packet: int = 0

    @classmethod
    def from_exponents(cls, exponents) -> "Dimension":
        return cls(*(int(e) for e in exponents))

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(getattr(self, name) for name in BASE_DIMENSIONS)

    def __mul__(self, other: "Dimension") -> "Dimension":
        return Dimension(*(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return Dimension(*(a - b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, power: int) -> "Dimension":
        if power != int(power):
            raise DimensionError("dimensions only support integer powers")
        return Dimension(*(a * int(power) for a in self.exponents))

    @property
    def dimensionless(self) -> bool:
        return not any(self.exponents)

    def canonical_label(self) -> str:
        num, den = [], []
        for idx in _LABEL_ORDER:
            exp = self.exponents[idx]
            sym = _BASE_SYMBOLS[idx]
            if exp > 0:
                num.append(sym if exp == 1 else f"{sym}^{exp}")
            elif exp < 0:
                den.append(sym if exp == -1 else f"{sym}^{-exp}")
        label = "*".join(num) or "1"
        for d in den:
            label += "/" + d
        return label

    def __str__(self) -> str:
        parts = [
            f"{name}^{exp}" if exp != 1 else name
            for name, exp in zip(BASE_DIMENSIONS, self.exponents)
            if exp
        ]
        return "[" + " ".join(parts) + "]" if parts else "[dimensionless]"


DIMENSIONLESS = Dimension()
MASS = Dimension(mass=1)
LENGTH = Dimension(length=1)
TIME = Dimension(time=1)
ENERGY = Dimension(energy=1)
CARBON = Dimension(carbon=1)
DATA = Dimension(data=1)
PACKET = Dimension(packet=1)


@dataclass(frozen=True)
class Unit:
    """A unit label with its scale to canonical base units."""

    label: str
    factor: float
    dimension: Dimension

    def __mul__(self, other: "Unit") -> "Unit":
        return Unit(f"{self.label}*{other.label}", self.factor * other.factor,
                    self.dimension * other.dimension)

    def __truediv__(self, other: "Unit") -> "Unit":
        return Unit(f"{self.label}/{other.label}", self.factor / other.factor,
                    self.dimension / other.dimension)

    def __pow__(self, power: int) -> "Unit":
        return Unit(f"{self.label}^{power}", self.factor ** power, self.dimension ** power)

    def __str__(self) -> str:
        return self.label


_POWER = ENERGY / TIME
_RATE = DATA / TIME

_ATOMS: dict[str, tuple[float, Dimension]] = {
    "1": (1.0, DIMENSIONLESS),
    "%": (0.01, DIMENSIONLESS),
    # mass
    "µg": (1e-6, MASS), "ug": (1e-6, MASS), "mg": (1e-3, MASS), "g": (1.0, MASS),
    "kg": (1e3, MASS), "t": (1e6, MASS),
    # length
    "mm": (1e-3, LENGTH), "cm": (1e-2, LENGTH), "m": (1.0, LENGTH), "km": (1e3, LENGTH),
    # time
    "s": (1.0, TIME), "min": (60.0, TIME), "h": (3600.0, TIME), "d": (86400.0, TIME),
    "yr": (SECONDS_PER_YEAR, TIME), "yrs": (SECONDS_PER_YEAR, TIME),
    # energy and power
    "J": (1.0, ENERGY), "kJ": (1e3, ENERGY), "MJ": (1e6, ENERGY),
    "Wh": (3600.0, ENERGY), "kWh": (3.6e6, ENERGY), "MWh": (3.6e9, ENERGY),
    "mW": (1e-3, _POWER), "W": (1.0, _POWER), "kW": (1e3, _POWER), "MW": (1e6, _POWER),
    # carbon mass
    "µgCO2e": (1e-6, CARBON), "ugCO2e": (1e-6, CARBON), "mgCO2e": (1e-3, CARBON),
    "gCO2e": (1.0, CARBON), "kgCO2e": (1e3, CARBON), "tCO2e": (1e6, CARBON),
    # data volume and rate (decimal prefixes)
    "bit": (0.125, DATA), "B": (1.0, DATA), "kB": (1e3, DATA), "KB": (1e3, DATA),
    "MB": (1e6, DATA), "GB": (1e9, DATA), "TB": (1e12, DATA),
    "bps": (0.125, _RATE), "kbps": (125.0, _RATE), "Kbps": (125.0, _RATE),
    "Mbps": (1.25e5, _RATE), "Gbps": (1.25e8, _RATE),
    # packets
    "pkt": (1.0, PACKET),
}

_FACTOR_RE = re.compile(r"^([^\^²³]+?)(?:\^(-?\d+)|(²)|(³))?$")


@lru_cache(maxsize=None)
def parse_unit(label: str) -> Unit:
    """Parse labels such as ``kgCO2e/kg``, ``µgCO2e/GB/s`` or ``mm^2``.

    Every ``/`` starts a denominator factor; ``*`` and ``·`` join factors.
    """
    text = label.strip()
    if not text:
        raise UnitError("empty unit label")
    factor, dim = 1.0, DIMENSIONLESS
    for i, group in enumerate(text.split("/")):
        for atom in re.split(r"[*·]", group):
            atom = atom.strip()
            match = _FACTOR_RE.match(atom)
            if not match or match.group(1) not in _ATOMS:
                raise UnitError(f"unknown unit {atom!r} in {label!r}")
            power = int(match.group(2) or (2 if match.group(3) else 3 if match.group(4) else 1))
            if i > 0:
                power = -power
            f, d = _ATOMS[match.group(1)]
            factor *= f ** power
            dim = dim * d ** power
    return Unit(text, factor, dim)


def _as_unit(unit: Union[str, Unit]) -> Unit:
    return unit if isinstance(unit, Unit) else parse_unit(unit)


def _canonical_unit(dim: Dimension) -> Unit:
    return Unit(dim.canonical_label(), 1.0, dim)


@dataclass(frozen=True)
class Quantity:
    """A magnitude expressed in ``unit``; compares and combines by dimension."""

    magnitude: float
    unit: Unit

    @property
    def dimension(self) -> Dimension:
        return self.unit.dimension

    @property
    def si(self) -> float:
        """Magnitude in canonical base units."""
        return self.magnitude * self.unit.factor

    def to(self, unit: Union[str, Unit]) -> "Quantity":
        target = _as_unit(unit)
        if target.dimension != self.dimension:
            raise DimensionError(
                f"cannot convert {self.unit.label} {self.dimension} "
                f"to {target.label} {target.dimension}"
            )
        if target.factor == self.unit.factor:
            return Quantity(self.magnitude, target)
        return Quantity(self.si / target.factor, target)

    def m_as(self, unit: Union[str, Unit]) -> float:
        return self.to(unit).magnitude

    def canonical(self) -> "Quantity":
        return Quantity(self.si, _canonical_unit(self.dimension))

    def _check(self, other: "Quantity", op: str) -> None:
        if not isinstance(other, Quantity):
            if self.dimension.dimensionless and isinstance(other, (int, float)):
                return
            raise DimensionError(f"cannot {op} {self.unit.label} and plain number {other!r}")
        if other.dimension != self.dimension:
            raise DimensionError(
                f"cannot {op} {self.unit.label} {self.dimension} "
                f"and {other.unit.label} {other.dimension}"
            )

    def _other_si(self, other) -> float:
        return other.si if isinstance(other, Quantity) else float(other)

    def __add__(self, other: "Quantity") -> "Quantity":
        self._check(other, "add")
        return Quantity((self.si + self._other_si(other)) / self.unit.factor, self.unit)

    __radd__ = __add__

    def __sub__(self, other: "Quantity") -> "Quantity":
        self._check(other, "subtract")
        return Quantity((self.si - self._other_si(other)) / self.unit.factor, self.unit)

    def __rsub__(self, other) -> "Quantity":
        self._check(other, "subtract")
        return Quantity((self._other_si(other) - self.si) / self.unit.factor, self.unit)

    def __neg__(self) -> "Quantity":
        return Quantity(-self.magnitude, self.unit)

    def __abs__(self) -> "Quantity":
        return Quantity(abs(self.magnitude), self.unit)

    def __mul__(self, other) -> "Quantity":
        if isinstance(other, Quantity):
            return combine(self, other, "mul")
        return Quantity(self.magnitude * other, self.unit)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Quantity":
        if isinstance(other, Quantity):
            return combine(self, other, "div")
        return Quantity(self.magnitude / other, self.unit)

    def __rtruediv__(self, other) -> "Quantity":
        dim = DIMENSIONLESS / self.dimension
        return Quantity(float(other) / self.si, _canonical_unit(dim))

    def __float__(self) -> float:
        if not self.dimension.dimensionless:
            raise DimensionError(f"{self.unit.label} is not dimensionless")
        return self.si

    def _cmp(self, other) -> tuple[float, float]:
        self._check(other, "compare")
        return self.si, self._other_si(other)

    def __lt__(self, other) -> bool:
        a, b = self._cmp(other)
        return a < b

    def __le__(self, other) -> bool:
        a, b = self._cmp(other)
        return a <= b

    def __gt__(self, other) -> bool:
        a, b = self._cmp(other)
        return a > b

    def __ge__(self, other) -> bool:
        a, b = self._cmp(other)
        return a >= b

    def isclose(self, other: "Quantity", rel: float = 1e-12, abs_tol: float = 0.0) -> bool:
        a, b = self._cmp(other)
        return math.isclose(a, b, rel_tol=rel, abs_tol=abs_tol)

    def __format__(self, spec: str) -> str:
        return f"{format(self.magnitude, spec)} {self.unit.label}"

    def __str__(self) -> str:
        return f"{self.magnitude:g} {self.unit.label}"

    def __repr__(self) -> str:
        return f"Q({self.magnitude!r}, {self.unit.label!r})"


def Q(magnitude: float, unit: Union[str, Unit] = "1") -> Quantity:
    return Quantity(float(magnitude), _as_unit(unit))


def convert(q: Quantity, target: Union[str, Unit]) -> Quantity:
    return q.to(target)


def combine(a: Quantity, b: Quantity, operator: str) -> Quantity:
    """Multiply or divide two quantities; result is in canonical units."""
    if operator == "mul":
        return Quantity(a.si * b.si, _canonical_unit(a.dimension * b.dimension))
    if operator == "div":
        return Quantity(a.si / b.si, _canonical_unit(a.dimension / b.dimension))
    raise ValueError(f"unknown operator {operator!r}")
