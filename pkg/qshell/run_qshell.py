#!/usr/bin/env python3
"""
run_qshell.py

Main entry point for qshell:
 - loads .env and config.yaml
 - sets up logging (file only unless -v)
 - dispatches the subcommand through COMMAND_ROUTER
 - maps errors onto exit codes (0 pass, 1 runtime, 2 validation, 3 check failed)
"""

import logging
import os
import sys
from typing import List, Optional

import yaml
from dotenv import load_dotenv

import qshell.GLOBALS as g
from qshell.console_functions import COMMAND_ROUTER, cmd_help
from qshell.errors import QShellError


def _configure_logging(verbose: bool = False) -> logging.Logger:
    """
    Configures Python logging to write to g.LOG_PATH. Console output is left to
    the reports unless verbose, which adds a stderr handler at DEBUG.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG if verbose else getattr(logging, g.LOG_LEVEL, logging.INFO))

    # remove existing handlers
    while root_logger.handlers:
        root_logger.removeHandler(root_logger.handlers[0])

    formatter = logging.Formatter(
        "%(asctime)s [%(levelname)s] %(name)s:%(funcName)s: %(message)s"
    )

    log_dir = os.path.dirname(g.LOG_PATH)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)

    file_handler = logging.FileHandler(g.LOG_PATH, mode="a")
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)
    root_logger.addHandler(file_handler)

    if verbose:
        console = logging.StreamHandler(sys.stderr)
        console.setLevel(logging.DEBUG)
        console.setFormatter(formatter)
        root_logger.addHandler(console)

    logger = logging.getLogger("main")
    logger.info("Set logging to %s", g.LOG_PATH)
    return logger


def _load_config() -> dict:
    """
    Load configuration from YAML file into the global `g.CONFIG` dictionary.
    A missing or malformed file leaves the defaults in place.
    """
    if not os.path.exists(g.CONFIG_PATH):
        g.LOGGER.warning("Config file not found: %s", g.CONFIG_PATH)
        return {}

    try:
        with open(g.CONFIG_PATH, "r", encoding="utf-8") as f:
            config_data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        g.LOGGER.error("Error parsing YAML config: %s", e)
        return {}

    if not isinstance(config_data, dict):
        g.LOGGER.error("Config file %s does not hold a mapping", g.CONFIG_PATH)
        return {}

    g.CONFIG = config_data
    return g.CONFIG


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    verbose = "-v" in argv or "--verbose" in argv

    load_dotenv()
    g.CONFIG_PATH = os.getenv("QSHELL_CONFIG", g.CONFIG_PATH)

    # config decides where the log goes, so it is read before handlers exist
    g.LOGGER = logging.getLogger("main")
    _load_config()
    g.init_limits()
    g.LOGGER = _configure_logging(verbose)

    g.LOGGER.info("----------------------------------------------------")
    g.LOGGER.info("Starting qshell (%s): %s", g.QSHELL_VERSION, " ".join(argv))
    g.LOGGER.info("----------------------------------------------------")

    if not argv:
        cmd_help([])
        return 2

    command, rest = argv[0], argv[1:]
    handler = COMMAND_ROUTER.get(command)
    if handler is None:
        g.LOGGER.warning("Unknown command: %s", command)
        print(f"SYSTEM: Unknown command '{command}'. Try 'help'.")
        return 2

    try:
        code = handler(rest)
    except QShellError as e:
        g.LOGGER.warning("Command %s failed: %s: %s", command, type(e).__name__, e)
        print(f"SYSTEM: Error in {command} => {type(e).__name__}: {e}")
        return e.exit_code
    except Exception as e:
        g.LOGGER.exception("Unexpected error in %s", command)
        print(f"SYSTEM: Error in {command} => {e}")
        return 1

    g.LOGGER.info("Command %s finished with exit code %d", command, code)
    return code


if __name__ == "__main__":
    sys.exit(main())
