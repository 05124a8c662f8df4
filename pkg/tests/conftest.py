"""Shared fixtures and hypothesis strategies."""

import pytest
from hypothesis import strategies as st

from symplectic_reductions.models.partition import Partition
from symplectic_reductions.services.repthy import RepresentationCalculator
from symplectic_reductions.utils.cache import ResultCache
from symplectic_reductions.utils.config_manager import Config


@st.composite
def partitions(draw, max_size: int = 8):
    size = draw(st.integers(min_value=0, max_value=max_size))
    parts = []
    remaining, largest = size, size
    while remaining:
        part = draw(st.integers(min_value=1, max_value=min(remaining, largest)))
        parts.append(part)
        remaining -= part
        largest = part
    return Partition(tuple(parts))


@st.composite
def gl_weights(draw, rank: int, bound: int = 3):
    entries = draw(st.lists(st.integers(min_value=-bound, max_value=bound), min_size=rank, max_size=rank))
    return tuple(sorted(entries, reverse=True))


@pytest.fixture
def small_config() -> Config:
    return Config(sample_count=3, grid_max_n=2, grid_max_m=4)


@pytest.fixture
def calculator() -> RepresentationCalculator:
    return RepresentationCalculator()


@pytest.fixture
def cache_file(tmp_path):
    return tmp_path / "cache" / "results.json"


@pytest.fixture
def cache(cache_file) -> ResultCache:
    return ResultCache(str(cache_file))
