"""Pytest configuration and shared fixtures."""
import os
import random

import pytest

# Set test environment variables before importing app
os.environ["ENVIRONMENT"] = "test"
os.environ["DEBUG"] = "True"
os.environ["VERIFY_WORKERS"] = "1"
os.environ["CHECK_INVARIANTS"] = "True"

from app.services.groupring import FieldSpec  # noqa: E402


@pytest.fixture
def f3():
    """The field F_3."""
    return FieldSpec.prime(3)


@pytest.fixture
def f5():
    """The field F_5."""
    return FieldSpec.prime(5)


@pytest.fixture
def f7():
    """The field F_7."""
    return FieldSpec.prime(7)


@pytest.fixture
def f13():
    """The field F_13."""
    return FieldSpec.prime(13)


@pytest.fixture
def qq():
    """The rationals."""
    return FieldSpec.rationals()


@pytest.fixture
def rng():
    """Deterministic random generator for sampled instances."""
    return random.Random("tests:42")


@pytest.fixture
def report_dir(tmp_path, monkeypatch):
    """Point REPORT_DIR at a temporary directory."""
    from app.core.config import settings

    monkeypatch.setattr(settings, "REPORT_DIR", str(tmp_path))
    return tmp_path


@pytest.fixture
def test_client():
    """Create a test client for FastAPI."""
    from fastapi.testclient import TestClient
    from app.main import app

    return TestClient(app)


@pytest.fixture
async def async_test_client():
    """Create an async test client for FastAPI."""
    from httpx import ASGITransport, AsyncClient
    from app.main import app

    async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as client:
        yield client
