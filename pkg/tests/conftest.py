from pathlib import Path

import pytest

from healthychoice.analytics import EventLog
from healthychoice.catalog import load_catalog
from healthychoice.scenario import load_scenarios
from healthychoice.session import SessionManager

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def catalog_bytes() -> bytes:
    return (FIXTURES / "catalog.json").read_bytes()


@pytest.fixture(scope="session")
def scenario_bytes() -> bytes:
    return (FIXTURES / "scenarios.json").read_bytes()


@pytest.fixture(scope="session")
def catalog(catalog_bytes):
    return load_catalog(catalog_bytes)


@pytest.fixture(scope="session")
def scenarios(scenario_bytes, catalog):
    return load_scenarios(scenario_bytes, catalog)


@pytest.fixture
def manager(scenarios, catalog):
    """Fresh session manager over an in-memory event log."""
    return SessionManager(scenarios, catalog, EventLog())
