import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from orbitcarbon.power import (
    Battery,
    SolarArray,
    battery_energy_intensity,
    battery_mass,
    solar_energy_intensity,
    solar_mass,
    system_energy_intensity,
)
from orbitcarbon.quantity import Q

U = "gCO2e/kWh"
FIVE_YEARS = Q(5, "yrs")
REF_BATTERY = Battery(Q(4, "kWh"), 5000)
REF_SOLAR = SolarArray(Q(2, "m^2"), 1)


def test_battery_mass():
    assert battery_mass(REF_BATTERY).m_as("kg") == pytest.approx(15.0)
    assert battery_mass(Battery(Q(1, "kWh"), 10)).m_as("kg") == pytest.approx(3.75)
    with pytest.raises(ValueError):
        Battery(Q(0, "kWh"), 10)
    with pytest.raises(ValueError):
        Battery(Q(1, "kWh"), 0)


def test_battery_intensity(techs):
    # 400 kg / 20,000 kWh
    assert battery_energy_intensity(REF_BATTERY, techs["Earth"]).m_as(U) == pytest.approx(20.0)
    # (400 + 15 * 178.8) kg / 20,000 kWh, with the unrounded 178.788
    f9 = battery_energy_intensity(REF_BATTERY, techs["F9"]).m_as(U)
    assert f9 == pytest.approx((400 + 15 * oracle.lr("F9")) / 20)
    assert f9 == pytest.approx(154.1, abs=0.05)


def test_battery_intensity_vanishes_with_cycles(techs):
    huge = Battery(Q(4, "kWh"), 10**12)
    assert battery_energy_intensity(huge, techs["F9"]).m_as(U) < 1e-6


def test_solar_mass():
    assert solar_mass(REF_SOLAR).m_as("kg") == pytest.approx(7.87)
    assert solar_mass(SolarArray(Q(1, "m^2"), 2)).m_as("kg") == pytest.approx(8.52)
    with pytest.raises(ValueError):
        SolarArray(Q(1, "m^2"), 0)


@pytest.mark.parametrize("tech, expected, tol", [("Earth", 14.0, 0.05), ("F9", 15.9, 0.1)])
def test_solar_intensity_reference(techs, tech, expected, tol):
    assert solar_energy_intensity(REF_SOLAR, techs[tech], FIVE_YEARS).m_as(U) == pytest.approx(expected, abs=tol)


@pytest.mark.parametrize("tech", ["Earth", "F9", "StSh"])
def test_energy_matches_oracle(techs, tech):
    bat, sol = oracle.energy(tech)
    got = system_energy_intensity(REF_BATTERY, REF_SOLAR, techs[tech], FIVE_YEARS)
    assert got.battery.m_as(U) == pytest.approx(bat, rel=1e-12)
    assert got.solar.m_as(U) == pytest.approx(sol, rel=1e-12)


def test_solar_vanishes_with_mission_time(techs):
    assert solar_energy_intensity(REF_SOLAR, techs["F9"], Q(1e9, "yrs")).m_as(U) < 1e-6
    with pytest.raises(ValueError):
        solar_energy_intensity(REF_SOLAR, techs["F9"], Q(0, "yrs"))


def test_system_totals(techs):
    earth = system_energy_intensity(REF_BATTERY, REF_SOLAR, techs["Earth"], FIVE_YEARS)
    assert earth.total.m_as(U) == pytest.approx(34.0, abs=0.05)
    f9 = system_energy_intensity(REF_BATTERY, REF_SOLAR, techs["F9"], FIVE_YEARS)
    assert f9.total.m_as(U) == pytest.approx(165.1, rel=0.05)
    stsh = system_energy_intensity(REF_BATTERY, REF_SOLAR, techs["StSh"], FIVE_YEARS)
    assert stsh.total.m_as(U) == pytest.approx(134.3, rel=0.05)
    for b in (earth, f9, stsh):
        assert b.total.si == b.battery.si + b.solar.si


def test_orbit_versus_earth_solar(techs):
    earth = solar_energy_intensity(REF_SOLAR, techs["Earth"], FIVE_YEARS).si
    assert solar_energy_intensity(REF_SOLAR, techs["StSh"], FIVE_YEARS).si < earth
    f9 = solar_energy_intensity(REF_SOLAR, techs["F9"], FIVE_YEARS).si
    assert earth < f9 < 1.15 * earth


years = st.floats(0.1, 50)


@settings(max_examples=50)
@given(years, years)
def test_solar_strictly_decreasing_in_mission_time(a, b):
    from orbitcarbon.config import load_registry
    tech = load_registry().get("Falcon9")
    if a == b:
        return
    lo, hi = sorted((a, b))
    assert (solar_energy_intensity(REF_SOLAR, tech, Q(hi, "yrs")).si
            < solar_energy_intensity(REF_SOLAR, tech, Q(lo, "yrs")).si)


@settings(max_examples=50)
@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_battery_strictly_decreasing_in_cycles(a, b):
    from orbitcarbon.config import load_registry
    tech = load_registry().get("Starship")
    if a == b:
        return
    lo, hi = sorted((a, b))
    assert (battery_energy_intensity(Battery(Q(4, "kWh"), hi), tech).si
            < battery_energy_intensity(Battery(Q(4, "kWh"), lo), tech).si)


@settings(max_examples=50)
@given(st.floats(0.5, 40), st.floats(1.01, 5))
def test_increasing_in_launch_intensity(payload_t, factor):
    from orbitcarbon.config import load_registry
    base = load_registry().get("Falcon9")
    light = dataclasses.replace(base, payload=Q(payload_t * factor, "t"))
    heavy = dataclasses.replace(base, payload=Q(payload_t, "t"))
    assert (battery_energy_intensity(REF_BATTERY, heavy).si
            > battery_energy_intensity(REF_BATTERY, light).si)
    assert (solar_energy_intensity(REF_SOLAR, heavy, FIVE_YEARS).si
            > solar_energy_intensity(REF_SOLAR, light, FIVE_YEARS).si)
