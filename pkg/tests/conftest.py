import sys
from pathlib import Path

import pytest

from orbitcarbon.config import load_registry, load_system_config, resolve

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"
sys.path.insert(0, str(Path(__file__).resolve().parent))

SYSTEM_FILES = {"Earth": "sysE.toml", "F9": "sysF.toml", "StSh": "sysS.toml"}


@pytest.fixture(scope="session")
def config_dir():
    return CONFIG_DIR


@pytest.fixture(scope="session")
def registry():
    return load_registry()


@pytest.fixture(scope="session")
def systems(registry):
    return {label: resolve(load_system_config(CONFIG_DIR / name), registry)
            for label, name in SYSTEM_FILES.items()}


@pytest.fixture(scope="session")
def techs(registry):
    return {"Earth": registry.get("None"), "F9": registry.get("Falcon9"),
            "StSh": registry.get("Starship"), "StShN": registry.get("StarshipN")}


# filled by test_acceptance; one (criterion, passed, detail) per criterion
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
