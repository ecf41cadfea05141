# conftest.py - shared pytest fixtures for qshell

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from qshell import GLOBALS as g  # noqa: E402
from qshell.gf import field_new  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: heavier end-to-end scenarios (still run by default)")


@pytest.fixture
def f2():
    return field_new(2)


@pytest.fixture
def f3():
    return field_new(3)


@pytest.fixture
def f16():
    # X^4 + X + 1, lowest degree first
    return field_new(2, 4, (1, 1, 0, 0, 1))


@pytest.fixture
def examples_dir():
    return g.EXAMPLES_DIR


@pytest.fixture(scope="session")
def worked_example():
    from qshell.qshell_command_extensions.cmd_reproduce import worked_example as build
    return build()


@pytest.fixture
def qshell_env(tmp_path, monkeypatch):
    """A throwaway config.yaml and log file for CLI runs."""
    log_path = tmp_path / "logs" / "qshell.log"
    config_path = tmp_path / "config.yaml"
    config_path.write_text(
        "limits:\n"
        "  max_subspaces: 100000\n"
        "defaults:\n"
        "  field: \"gf(2)\"\n"
        "  format: \"json\"\n"
        "logging:\n"
        f"  path: \"{log_path.as_posix()}\"\n"
        "  level: \"DEBUG\"\n",
        encoding="utf-8",
    )
    monkeypatch.setenv("QSHELL_CONFIG", str(config_path))
    monkeypatch.setattr(g, "CONFIG_PATH", g.CONFIG_PATH)
    monkeypatch.setattr(g, "LOG_PATH", g.LOG_PATH)
    monkeypatch.setattr(g, "DEFAULT_FORMAT", g.DEFAULT_FORMAT)
    monkeypatch.setattr(g, "DEFAULT_FIELD", g.DEFAULT_FIELD)
    monkeypatch.setattr(g, "LOG_LEVEL", g.LOG_LEVEL)
    monkeypatch.setattr(g, "CONFIG", {})
    return tmp_path
