"""Hypothesis strategies for randomized systems."""

import dataclasses

from hypothesis import strategies as st

from orbitcarbon.config import System, load_registry
from orbitcarbon.power import Battery, SolarArray
from orbitcarbon.quantity import Q
from orbitcarbon.workload import CpuSpec, DramSpec, SsdSpec, TransceiverSpec

REGISTRY = load_registry()
TECH_NAMES = ("None", "Falcon9", "Starship", "StarshipN")


def pos(lo, hi):
    return st.floats(lo, hi, allow_nan=False, allow_infinity=False)


def power(hi):
    # exactly off, or a draw large enough to survive (M + O) - M in floats
    return st.one_of(st.just(0.0), pos(1e-3, hi))


@st.composite
def technologies(draw):
    base = REGISTRY.get(draw(st.sampled_from(TECH_NAMES)))
    if base.grounded or not draw(st.booleans()):
        return base
    return dataclasses.replace(
        base,
        payload=Q(draw(pos(1, 300)), "t"),
        reuse_first_stage=draw(st.integers(1, 100)),
        reuse_second_stage=draw(st.integers(1, 100)),
        reentry_extra_mass=Q(draw(pos(0, 20)), "t"),
    )


@st.composite
def systems(draw):
    tech = draw(technologies())
    return System(
        name="random",
        mission_time=Q(draw(pos(0.1, 50)), "yrs"),
        launch=tech.name,
        technology=tech,
        battery=Battery(Q(draw(pos(0.1, 100)), "kWh"), draw(st.integers(1, 100_000))),
        solar=SolarArray(Q(draw(pos(0.1, 50)), "m^2"), draw(st.integers(1, 20))),
        cpu=CpuSpec(Q(draw(pos(1, 2000)), "g"), Q(draw(pos(1, 800)), "mm^2"), Q(draw(power(500)), "W")),
        dram=DramSpec(Q(draw(pos(0.5, 1024)), "GB"), Q(draw(power(1)), "W/GB"),
                      mass=Q(draw(pos(1, 500)), "g")),
        ssd=SsdSpec(Q(draw(pos(0.1, 64)), "TB"), Q(draw(power(30)), "W"), mass=Q(draw(pos(1, 500)), "g")),
        transceiver=TransceiverSpec(Q(draw(pos(1, 5000)), "g"), Q(draw(power(50)), "W"),
                                    Q(draw(pos(1, 1e6)), "Kbps")),
    )
