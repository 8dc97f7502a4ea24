import os

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--run-long",
        action="store_true",
        default=False,
        help="run tests marked long_running (several minutes)",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long") or os.environ.get("DIAMOPT_RUN_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="needs --run-long or DIAMOPT_RUN_LONG=1")
    for item in items:
        if "long_running" in item.keywords:
            item.add_marker(skip)
