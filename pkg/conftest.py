"""
Shared pytest setup for detq: an isolated configuration per test and the
opt-in ``slow`` marker for the curve fixtures
"""

import pytest

from src.utils.config import DetqConfig, get_config, set_config


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="also run the tests that build degree-10 curves")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: builds full curve fixtures (minutes); run with --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def isolated_config(tmp_path):
    """Default configuration with the disk cache pointed at a temporary directory."""
    previous = get_config()
    set_config(DetqConfig(cache_dir=str(tmp_path / "cache"), use_cache=False))
    yield get_config()
    set_config(previous)
