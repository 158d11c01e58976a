import pytest

from negentropy_ur.explorer import cat_reference_curve, scatter
from negentropy_ur.quadrature import IntegrationConfig

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def config():
    return IntegrationConfig()


@pytest.fixture(scope="session")
def cat_curve(config):
    return cat_reference_curve(config=config)


@pytest.fixture(scope="session")
def random_rows(config, cat_curve):
    """2000 random dim-11 states, seed 42, flagged against the cat curve."""
    return scatter(42, 2000, 11, config, cat_curve=cat_curve)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
