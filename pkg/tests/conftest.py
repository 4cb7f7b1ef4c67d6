"""Pytest configuration and fixtures."""

import os
from collections.abc import Iterator

import pytest

# Keep test runs quiet and independent of a developer's .env
os.environ.setdefault("SUPERMODULI_LOG_LEVEL", "WARNING")
os.environ.setdefault("SUPERMODULI_REPORT_TIMINGS", "false")

from supermoduli.config import reset_settings  # noqa: E402
from supermoduli.superalgebra.ring import RingContext  # noqa: E402


@pytest.fixture(autouse=True)
def fresh_settings() -> Iterator[None]:
    """Re-read settings for every test."""
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def chart_u() -> RingContext:
    """Affine chart k[z^(±)|zeta]."""
    return RingContext(even=("z",), odd=("zeta",), laurent=frozenset({"z"}))


@pytest.fixture
def chart_v() -> RingContext:
    """Affine chart k[w^(±)|chi]."""
    return RingContext(even=("w",), odd=("chi",), laurent=frozenset({"w"}))


@pytest.fixture
def grassmann4() -> RingContext:
    """Grassmann test ring k[e1, e2, e3, e4] with a Laurent variable z."""
    return RingContext(even=("z",), odd=("e1", "e2", "e3", "e4"), laurent=frozenset({"z"}))


@pytest.fixture
def homogeneous_ring() -> RingContext:
    """Homogeneous coordinate ring A = k[u, v|theta]."""
    return RingContext(even=("u", "v"), odd=("theta",))
