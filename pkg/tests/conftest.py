import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from hypgroup.endo import validate_endomorphism  # noqa: E402
from hypgroup.presets import ENDO_DOCS, PRESETS  # noqa: E402

HYPERBOLIC = ["F2", "F3", "Zx2", "Dinf"]
SHIPPED = [(d["group"], d["name"]) for d in ENDO_DOCS]


def endo(group: str, name: str):
    d = next(d for d in ENDO_DOCS if d["group"] == group and d["name"] == name)
    return validate_endomorphism(PRESETS[group].model, d["images"], name)


def model(group: str):
    return PRESETS[group].model


@pytest.fixture(scope="session")
def oracle_groups():
    import oracles
    return oracles.all_groups()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
