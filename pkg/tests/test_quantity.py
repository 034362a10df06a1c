import math

import pytest
from hypothesis import given, strategies as st

from orbitcarbon.quantity import (
    BASE_DIMENSIONS,
    Dimension,
    DimensionError,
    Q,
    UnitError,
    combine,
    convert,
    parse_unit,
)


def test_kwh_to_joule():
    assert convert(Q(1, "kWh"), "J").magnitude == pytest.approx(3.6e6, rel=1e-15)


def test_five_years_in_seconds():
    # 5 * 365.25 * 86400, multiplied out by hand
    assert convert(Q(5, "yr"), "s").magnitude == pytest.approx(157_788_000.0, rel=1e-12)
    assert Q(5, "yrs").si == Q(5, "yr").si


def test_like_prefixed_ratio():
    assert convert(Q(178.8, "kgCO2e/kg"), "gCO2e/g").magnitude == pytest.approx(178.8, rel=1e-12)


def test_power_times_energy_intensity():
    # 28 * 34.0 / 3.6e6
    rate = combine(Q(28, "W"), Q(34.0, "gCO2e/kWh"), "mul")
    assert rate.to("gCO2e/s").magnitude == pytest.approx(2.6444444444e-4, rel=1e-9)


def test_mass_times_launch_intensity():
    assert combine(Q(0.1, "kg"), Q(178.8, "kgCO2e/kg"), "mul").m_as("kgCO2e") == pytest.approx(17.88)


def test_self_division_is_dimensionless_one():
    x = Q(3.7, "kWh")
    ratio = combine(x, x, "div")
    assert ratio.dimension.dimensionless
    assert float(ratio) == 1.0


def test_convert_dimension_mismatch_names_both():
    with pytest.raises(DimensionError) as err:
        convert(Q(1, "kg"), "kgCO2e")
    msg = str(err.value)
    assert "mass" in msg and "carbon" in msg


def test_carbon_and_mass_never_add():
    with pytest.raises(DimensionError):
        Q(1, "g") + Q(1, "gCO2e")
    with pytest.raises(DimensionError):
        Q(1, "g") < Q(2, "gCO2e")


def test_carbon_from_mass_needs_intensity():
    carbon = Q(15, "kg") * Q(178.8, "kgCO2e/kg")
    assert carbon.dimension == Dimension(carbon=1)
    assert carbon.m_as("kgCO2e") == pytest.approx(2682.0)


def test_data_rate_units():
    assert Q(38.4, "Kbps").m_as("B/s") == pytest.approx(4800.0)
    assert (Q(1500, "B") / Q(38.4, "Kbps")).m_as("s") == pytest.approx(0.3125)


def test_compound_labels():
    assert parse_unit("µgCO2e/GB/s").factor == pytest.approx(1e-6 / 1e9)
    assert parse_unit("mm^2").dimension == Dimension(length=2)
    assert parse_unit("m²").factor == 1.0
    assert parse_unit("gCO2e/cm^2").factor == pytest.approx(1e4)


@pytest.mark.parametrize("label", ["", "furlong", "kg/", "W^x"])
def test_bad_labels(label):
    with pytest.raises(UnitError):
        parse_unit(label)


def test_plain_number_ops():
    assert (Q(2, "kg") * 3).m_as("kg") == 6
    assert (Q(6, "kg") / 3).m_as("kg") == 2
    assert (1 / Q(4, "s")).m_as("1/s") == 0.25
    with pytest.raises(DimensionError):
        Q(1, "kg") + 1
    assert (Q(0.5, "1") + 1).magnitude == 1.5


UNITS_BY_DIMENSION = [
    ["g", "kg", "t", "mg", "µg"],
    ["s", "min", "h", "d", "yr"],
    ["J", "kJ", "Wh", "kWh", "MWh"],
    ["gCO2e", "kgCO2e", "tCO2e", "µgCO2e"],
    ["B", "kB", "GB", "TB", "bit"],
    ["gCO2e/kWh", "kgCO2e/MWh", "µgCO2e/J"],
    ["W", "kW", "mW", "J/s"],
    ["bps", "Kbps", "Mbps", "B/s"],
]


@st.composite
def same_dimension_pair(draw):
    group = draw(st.sampled_from(UNITS_BY_DIMENSION))
    return draw(st.sampled_from(group)), draw(st.sampled_from(group))


@given(same_dimension_pair(),
       st.floats(min_value=1e-9, max_value=1e12, allow_nan=False, allow_infinity=False))
def test_convert_round_trip(pair, value):
    a, b = pair
    q = Q(value, a)
    back = convert(convert(q, b), a)
    assert math.isclose(back.magnitude, value, rel_tol=1e-12)


exponents = st.builds(Dimension, *[st.integers(-4, 4) for _ in BASE_DIMENSIONS])


@given(exponents, exponents, exponents)
def test_dimension_algebra_associative(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a / b) / c == a / (b * c)


@given(exponents, exponents)
def test_dimension_algebra_commutative(a, b):
    assert a * b == b * a
    assert (a * b) / b == a


@given(st.floats(0.001, 1e6), st.floats(0.001, 1e6))
def test_mass_carbon_mixing_always_rejected(m, c):
    with pytest.raises(DimensionError):
        Q(m, "kg") - Q(c, "kgCO2e")
    with pytest.raises(DimensionError):
        Q(m, "kg").to("gCO2e")
    # an intensity factor makes the same pair compatible
    assert (Q(m, "kg") * Q(1, "gCO2e/g") + Q(c, "kgCO2e")).dimension == Dimension(carbon=1)
