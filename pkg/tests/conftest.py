import pytest

from coapdialect.cli import run_suite


@pytest.fixture(scope="session")
def suite_rows():
    """Every recorded experiment, with the time invariants checked on each expanded state."""
    return run_suite("all", debug_invariants=True)


@pytest.fixture(scope="session")
def rows_by_key(suite_rows):
    return {r.key: r for r in suite_rows}
