"""Pytest configuration and shared fixtures."""
import os
import shutil
from pathlib import Path
import pytest

from gsdescent.config import Config
from gsdescent.descent import canonical_chain, descent_table
from gsdescent.ff import field_pair, make_field


def _setup_isolated_env(tmp_path):
    """Set up an isolated test environment with the config files.

    Args:
        tmp_path: Temporary directory path

    Returns:
        Path to the temporary directory
    """
    # Copy dotenv files
    for config_file in [".env.example", ".env"]:
        config_file = Path(__file__).parent.parent / config_file
        if config_file.exists():
            shutil.copy(config_file, tmp_path)

    return tmp_path


@pytest.fixture
def isolated_env(tmp_path, monkeypatch):
    """Create an isolated environment for testing (function-scoped).

    GSDESCENT_* variables from the calling shell are removed so that only the copied
    .env files apply."""
    for key in list(os.environ):
        if key.startswith("GSDESCENT_"):
            monkeypatch.delenv(key)
    monkeypatch.setenv("GSDESCENT_PROGRESS", "false")
    monkeypatch.chdir(tmp_path)
    return _setup_isolated_env(tmp_path)


@pytest.fixture
def config(isolated_env):
    return Config()


@pytest.fixture
def F4():
    return make_field(2, 2)


@pytest.fixture
def F8():
    return make_field(2, 3)


@pytest.fixture
def F16():
    return make_field(2, 4)


@pytest.fixture
def F9():
    return make_field(3, 2)


@pytest.fixture
def pair4():
    return field_pair(2, 2)


@pytest.fixture
def pair9():
    return field_pair(3, 2)


@pytest.fixture(scope="session")
def table_for_q():
    """Descent tables of the canonical chain, built once per (p, n)."""
    cache = {}

    def build(p, n):
        if (p, n) not in cache:
            _, ambient = field_pair(p, n)
            cache[(p, n)] = descent_table(canonical_chain(ambient))
        return cache[(p, n)]

    return build
