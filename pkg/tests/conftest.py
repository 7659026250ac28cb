"""Defines shared fixtures and hooks for pytest."""

import logging
import shutil
from pathlib import Path

import pytest

from causalplan.fstrips.task import FstripsTask
from causalplan.pddl import TypedTask, load_task
from causalplan.reachability.functional import translate

# Fix: I/O operation on closed (https://github.com/pallets/click/issues/824)
logging.getLogger("matplotlib").setLevel(logging.ERROR)

TEST_CODES_DIR = Path("/tmp/tests/testcodes")


def pytest_sessionstart(session: pytest.Session) -> None:
    """Initialize the test session by copying test codes to a temporary directory."""
    shutil.copytree(Path(__file__).parent / "testcodes", TEST_CODES_DIR, dirs_exist_ok=True)


def pytest_addoption(parser: pytest.Parser) -> None:
    """Add the option enabling desk-scale acceptance runs."""
    parser.addoption("--runslow", action="store_true", default=False, help="run tests marked as slow")


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    """Skip tests marked as slow unless `--runslow` is given."""
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def typed(directory: str, problem: str) -> TypedTask:
    """Load a test task by directory and problem file name."""
    return load_task(TEST_CODES_DIR / directory / "domain.pddl", TEST_CODES_DIR / directory / problem)


@pytest.fixture(scope="session")
def visitall3_typed() -> TypedTask:
    """The 3x3 visit-all task starting in the center."""
    return typed("visitall", "p3x3.pddl")


@pytest.fixture(scope="session")
def visitall3_fn(visitall3_typed: TypedTask) -> FstripsTask:
    """The 3x3 visit-all task with the fn transform."""
    return translate(visitall3_typed, "fn")


@pytest.fixture(scope="session")
def visitall3_simple(visitall3_typed: TypedTask) -> FstripsTask:
    """The 3x3 visit-all task with the simple transform."""
    return translate(visitall3_typed, "simple")


@pytest.fixture(scope="session")
def visitall2_typed() -> TypedTask:
    """The 2x2 visit-all task starting in a corner."""
    return typed("visitall", "p2x2.pddl")


@pytest.fixture(scope="session")
def visitall2_fn(visitall2_typed: TypedTask) -> FstripsTask:
    """The 2x2 visit-all task with the fn transform."""
    return translate(visitall2_typed, "fn")


@pytest.fixture(scope="session")
def corridor_typed() -> TypedTask:
    """Four places in a row."""
    return typed("corridor", "p4.pddl")


@pytest.fixture(scope="session")
def corridor_fn(corridor_typed: TypedTask) -> FstripsTask:
    """The corridor with the fn transform."""
    return translate(corridor_typed, "fn")


@pytest.fixture(scope="session")
def blocks_typed() -> TypedTask:
    """Three blocks where the table is a place."""
    return typed("blocksworld-table", "p3.pddl")


@pytest.fixture(scope="session")
def disconnected_fn() -> FstripsTask:
    """A visit-all task whose goal cannot be reached."""
    return translate(typed("disconnected", "p2.pddl"), "fn")
