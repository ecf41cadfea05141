import logging

import pytest

from qshell import GLOBALS as g
from qshell.run_qshell import _load_config


@pytest.fixture
def fresh_globals(monkeypatch):
    for name in ("CONFIG_PATH", "CONFIG", "LOG_PATH", "LOG_LEVEL", "DEFAULT_FIELD", "DEFAULT_FORMAT",
                 "MAX_FIELD_SIZE", "MAX_AMBIENT_SIZE", "MAX_SUBSPACES", "MAX_SIMPLICES"):
        monkeypatch.setattr(g, name, getattr(g, name))
    monkeypatch.setattr(g, "CONFIG", {})
    monkeypatch.setattr(g, "LOGGER", logging.getLogger("test"))


def test_limits_and_defaults_are_read(fresh_globals, tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(
        "limits:\n  max_subspaces: 42\n  max_field_size: 256\n"
        "defaults:\n  field: \"gf(3)\"\n  format: \"tsv\"\n"
        "logging:\n  level: \"debug\"\n",
        encoding="utf-8",
    )
    g.CONFIG_PATH = str(path)
    assert _load_config()["limits"]["max_subspaces"] == 42
    g.init_limits()
    assert g.MAX_SUBSPACES == 42
    assert g.MAX_FIELD_SIZE == 256
    assert g.DEFAULT_FIELD == "gf(3)"
    assert g.DEFAULT_FORMAT == "tsv"
    assert g.LOG_LEVEL == "DEBUG"
    assert g.MAX_SIMPLICES == 2_000_000


def test_unknown_format_keeps_default(fresh_globals):
    g.DEFAULT_FORMAT = "pretty"
    g.init_limits({"defaults": {"format": "xml"}})
    assert g.DEFAULT_FORMAT == "pretty"


def test_missing_config_keeps_defaults(fresh_globals, tmp_path):
    g.CONFIG_PATH = str(tmp_path / "absent.yaml")
    assert _load_config() == {}
    assert g.CONFIG == {}


def test_malformed_config_keeps_defaults(fresh_globals, tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("limits: [unclosed\n", encoding="utf-8")
    g.CONFIG_PATH = str(path)
    assert _load_config() == {}
    path.write_text("- just\n- a list\n", encoding="utf-8")
    assert _load_config() == {}
    assert g.CONFIG == {}


def test_shipped_config_matches_the_built_in_limits():
    import os
    import yaml

    with open(os.path.join(g.REPO_ROOT, "data", "config", "config.yaml"), encoding="utf-8") as f:
        shipped = yaml.safe_load(f)
    assert shipped["limits"]["max_field_size"] == 2 ** 16
    assert shipped["limits"]["max_ambient_size"] == 2 ** 24
    assert shipped["defaults"]["format"] in g.OUTPUT_FORMATS
