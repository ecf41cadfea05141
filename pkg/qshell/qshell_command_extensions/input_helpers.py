# input_helpers.py
#
# Argument parsing shared by the cmd_* handlers and the builders that turn
# --facets / --uniform / --sphere / --code into a QComplex.

import argparse
import logging
import shlex
from dataclasses import dataclass
from typing import List, Optional, Sequence

from qshell import GLOBALS as g
from qshell.errors import BadArgs
from qshell.gf import FieldSpec, parse_field_spec
from qshell.qcomplex import QComplex, q_sphere, read_complex, uniform
from qshell.qmatroid import code_matroid, matroid_complex, read_generator_file
from qshell.vecspace import full_space

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """argparse that raises BadArgs instead of exiting the process."""

    def error(self, message):
        raise BadArgs(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    field: FieldSpec
    fmt: str
    out: Optional[str]
    verbose: bool
    seed: Optional[int]
    options: argparse.Namespace


def new_parser(command: str) -> _Parser:
    parser = _Parser(prog=command, add_help=False)
    parser.add_argument("--field", default=None)
    parser.add_argument("--format", dest="fmt", default=None, choices=g.OUTPUT_FORMATS)
    parser.add_argument("--out", default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def add_input_arguments(parser: _Parser) -> None:
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--facets", metavar="PATH")
    src.add_argument("--uniform", nargs=2, type=int, metavar=("N", "K"))
    src.add_argument("--sphere", type=int, metavar="R")
    src.add_argument("--code", metavar="GENFILE")


def parse_run_config(command: str, parser: _Parser, args: str | Sequence[str]) -> RunConfig:
    tokens: List[str] = shlex.split(args) if isinstance(args, str) else list(args)
    ns = parser.parse_args(tokens)
    field = parse_field_spec(ns.field or g.DEFAULT_FIELD)
    if ns.seed is not None:
        logger.debug("--seed %s ignored; every computation is deterministic", ns.seed)
    return RunConfig(command, field, ns.fmt or g.DEFAULT_FORMAT, ns.out, ns.verbose, ns.seed, ns)


def build_complex(cfg: RunConfig) -> QComplex:
    """Builds the QComplex named by the input arguments."""
    ns = cfg.options
    if ns.facets:
        c = read_complex(ns.facets)
    elif ns.uniform:
        n, k = ns.uniform
        if not 0 < k <= n:
            raise BadArgs(f"--uniform needs 0 < k <= n, got n={n} k={k}")
        c = uniform(cfg.field, n, k)
    elif ns.sphere is not None:
        if ns.sphere < 1:
            raise BadArgs("--sphere needs r >= 1")
        c = q_sphere(full_space(cfg.field, ns.sphere + 1))
    else:
        c = matroid_complex(code_matroid(read_generator_file(ns.code)))
    logger.info("Input complex: %s", c)
    return c


def describe_input(cfg: RunConfig) -> str:
    ns = cfg.options
    if ns.facets:
        return f"facets:{ns.facets}"
    if ns.uniform:
        return f"uniform(q={cfg.field.q}, n={ns.uniform[0]}, k={ns.uniform[1]})"
    if ns.sphere is not None:
        return f"sphere(q={cfg.field.q}, r={ns.sphere})"
    return f"code:{ns.code}"
