"""Shared fixtures"""

import pytest

from turanflag.config import reset_config
from turanflag.core import catalog
from turanflag.core.family import Family, generate_admissible
from turanflag.core.hypergraph import parse_graph


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Point the config lookup at an empty directory and drop the cached manager"""
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "xdg"))
    monkeypatch.setenv("APPDATA", str(tmp_path / "xdg"))
    monkeypatch.delenv("TURANFLAG_SOLVER", raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def k4_family() -> Family:
    return catalog.family("k4")


@pytest.fixture
def edge_family() -> Family:
    """Forbids every edge, so the only admissible graphs are empty"""
    return Family.of([parse_graph("3:123")])


@pytest.fixture(scope="session")
def k4_admissible_5():
    return generate_admissible(5, catalog.family("k4"))
