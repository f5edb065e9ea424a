import pathlib
import sys

import pytest
from hypothesis import HealthCheck, settings

from ebn.formats import read_jpt
from ebn.graph import validate_edag

sys.path.insert(0, str(pathlib.Path(__file__).parent))

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line[1])


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[ACCEPTANCE]


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def fig1():
    return validate_edag("B E A R".split(), [("B", "A"), ("E", "A"), ("E", "R")])


@pytest.fixture
def xor_table():
    return read_jpt(DATA / "xor.jpt")


@pytest.fixture
def parity_table():
    return read_jpt(DATA / "parity.jpt")


@pytest.fixture
def collider_table():
    return read_jpt(DATA / "collider.jpt")


@pytest.fixture
def chain_table():
    return read_jpt(DATA / "chain.jpt")
