# GLOBALS.py - Global variables for qshell
# This file contains the configuration globals used across qshell: the config path,
# the loaded CONFIG dict and the desk-scale limits every enumeration checks against.
#

import logging
import os
from typing import Dict, Any

QSHELL_VERSION: str = "Version 2026.10.19"
REPO_ROOT: str = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
EXAMPLES_DIR: str = os.path.join(REPO_ROOT, "data", "examples")
CONFIG_PATH: str = "data/config/config.yaml"
CONFIG: Dict[str, Any] = {}
LOG_PATH: str = "data/logs/qshell.log"
LOG_LEVEL: str = "INFO"
LOGGER: logging.Logger = None

# Desk-scale guards (overridable from config.yaml -> limits)
MAX_FIELD_SIZE: int = 2 ** 16       # q <= 2^16
MAX_AMBIENT_SIZE: int = 2 ** 24     # q^n <= 2^24 for full Grassmannian sweeps
MAX_SUBSPACES: int = 10 ** 5        # |Sigma(E)| for q-matroid enumeration
MAX_SIMPLICES: int = 2_000_000      # order complex / boundary matrix size

DEFAULT_FIELD: str = "gf(2)"
DEFAULT_FORMAT: str = "pretty"
OUTPUT_FORMATS = ("json", "tsv", "pretty")


def init_limits(config: Dict[str, Any] | None = None) -> None:
    """
    Reads the 'limits' and 'defaults' sections of the loaded config and copies
    them into the module globals above. Missing keys keep their defaults.
    """
    global MAX_FIELD_SIZE, MAX_AMBIENT_SIZE, MAX_SUBSPACES, MAX_SIMPLICES
    global DEFAULT_FIELD, DEFAULT_FORMAT, LOG_PATH, LOG_LEVEL

    cfg = CONFIG if config is None else config
    limits = cfg.get("limits") or {}
    MAX_FIELD_SIZE = int(limits.get("max_field_size", MAX_FIELD_SIZE))
    MAX_AMBIENT_SIZE = int(limits.get("max_ambient_size", MAX_AMBIENT_SIZE))
    MAX_SUBSPACES = int(limits.get("max_subspaces", MAX_SUBSPACES))
    MAX_SIMPLICES = int(limits.get("max_simplices", MAX_SIMPLICES))

    defaults = cfg.get("defaults") or {}
    DEFAULT_FIELD = str(defaults.get("field", DEFAULT_FIELD))
    fmt = str(defaults.get("format", DEFAULT_FORMAT))
    if fmt in OUTPUT_FORMATS:
        DEFAULT_FORMAT = fmt

    log_section = cfg.get("logging") or {}
    LOG_PATH = str(log_section.get("path", LOG_PATH))
    LOG_LEVEL = str(log_section.get("level", LOG_LEVEL)).upper()
