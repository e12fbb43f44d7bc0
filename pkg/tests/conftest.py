# tests/conftest.py
import os

import pytest

from src.gpfsums.engine import SeriesEngine


RUN_SLOW = os.getenv("GPFSUMS_RUN_SLOW") == "1"


def pytest_collection_modifyitems(config, items):
    if RUN_SLOW:
        return
    skip_slow = pytest.mark.skip(reason="set GPFSUMS_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def small_engine():
    """Engine with short blocks so small x spans many blocks"""
    return SeriesEngine(threads=1, segment_size=2 ** 16, block_span=2 ** 12, anchor_interval=256)


@pytest.fixture
def engine():
    return SeriesEngine()
