import logging
import textwrap
from typing import Dict, List

from qshell import GLOBALS as g
from qshell.errors import BadArgs, CountDisagreement
from qshell.gf import format_field_spec
from qshell.homology import (
    boundary_matrices,
    compare_homology_methods,
    dump_boundary_triplets,
    mayer_vietoris_stage_check,
)
from qshell.ordercx import (
    chain_ids,
    is_simplicial_shelling,
    maximal_chains_sorted,
    order_complex,
)
from qshell.qcomplex import is_lex_shellable, is_shelling
from qshell.qorder import sort_q
from qshell.qshell_command_extensions.cmd_reproduce import cmd_reproduce
from qshell.qshell_command_extensions.input_helpers import (
    add_input_arguments,
    build_complex,
    describe_input,
    new_parser,
    parse_run_config,
)
from qshell.qshell_command_extensions.report_helpers import emit, render
from qshell.vecspace import enumerate_grassmannian, format_subspace_line, gaussian_binomial

logger = logging.getLogger(__name__)

########################################################
# 1) COMMAND HANDLER FUNCTIONS
########################################################
def cmd_help(args) -> int:
    """
    Usage: help

    Show usage for all known commands.
    """
    logger.debug("Showing help.")
    print(f"SYSTEM: qshell {g.QSHELL_VERSION}. Available commands:\n")

    wrapper = textwrap.TextWrapper(width=70, subsequent_indent="    ")

    for cmd_name, cmd_func in COMMAND_ROUTER.items():
        doc = (cmd_func.__doc__ or "").strip()
        lines = doc.splitlines()
        usage_line = "(No usage line found.)"
        description = ""
        if lines and lines[0].strip().startswith("Usage:"):
            usage_line = lines[0].strip()
            description = " ".join(l.strip() for l in lines[1:] if l.strip())
        elif lines:
            description = " ".join(l.strip() for l in lines if l.strip())

        print(f"{cmd_name}\n  {wrapper.fill(usage_line)}")
        if description:
            print(f"  {wrapper.fill(description)}")
        print()
    return 0


def cmd_grassmann(args) -> int:
    """
    Usage: grassmann --n N --k K [--field gf(q)] [--sort lex]

    Lists every k-dimensional subspace of F_q^n, optionally sorted under ≺_q,
    with a count footer.
    """
    parser = new_parser("grassmann")
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--sort", choices=["lex"], default=None)
    cfg = parse_run_config("grassmann", parser, args)
    n, k = cfg.options.n, cfg.options.k
    if n < 0 or not 0 <= k <= n:
        raise BadArgs(f"need 0 <= k <= n, got n={n} k={k}")

    spaces = enumerate_grassmannian(cfg.field, n, k)
    if cfg.options.sort == "lex":
        spaces = sort_q(spaces)
    expected = gaussian_binomial(n, k, cfg.field.q)
    if len(spaces) != expected:
        raise CountDisagreement(f"enumerated {len(spaces)} subspaces, Gaussian binomial gives {expected}")

    rows = [{"#": i + 1, "subspace": str(u), "basis": format_subspace_line(u)} for i, u in enumerate(spaces)]
    payload = {
        "field": format_field_spec(cfg.field),
        "n": n,
        "k": k,
        "sorted": cfg.options.sort == "lex",
        "count": len(spaces),
        "subspaces": [format_subspace_line(u) for u in spaces],
    }
    text = render(payload, rows, cfg.fmt, title=f"G_{k}(F_{cfg.field.q}^{n})")
    if cfg.fmt == "pretty":
        text += f"count: {len(spaces)}\n"
    emit(text, cfg.out)
    return 0


def _parse_order(text: str, count: int) -> List[int]:
    try:
        idx = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as e:
        raise BadArgs(f"--order expects comma separated facet numbers, got '{text}'") from e
    if sorted(idx) != list(range(1, count + 1)):
        raise BadArgs(f"--order must be a permutation of 1..{count}")
    return idx


def cmd_check(args) -> int:
    """
    Usage: check (--facets PATH | --uniform N K | --sphere R | --code GENFILE) [--field gf(q)] [--order 1,2,...]

    Checks the ≺_q facet order for a shelling, then checks the ⪯_l order on
    the maximal chains of the punctured order complex. --order also tests a
    custom facet order (numbers refer to the input facet list).
    """
    parser = new_parser("check")
    add_input_arguments(parser)
    parser.add_argument("--order", default=None)
    cfg = parse_run_config("check", parser, args)
    c = build_complex(cfg)

    lex = is_lex_shellable(c)
    payload: Dict = {"input": describe_input(cfg), "facets": len(c.facets), "dim": c.dim, "lex_shelling": lex.to_dict()}
    rows = [{"check": "≺_q facet order is a shelling", "result": "PASS" if lex.ok else "FAIL"}]
    ok = lex.ok

    if cfg.options.order:
        idx = _parse_order(cfg.options.order, len(c.facets))
        custom = is_shelling(c, [c.facets[i - 1] for i in idx])
        payload["order_shelling"] = custom.to_dict()
        rows.append({"check": f"order {cfg.options.order} is a shelling", "result": "PASS" if custom.ok else "FAIL"})
        ok = ok and custom.ok

    sc = order_complex(c, punctured=True)
    chains = maximal_chains_sorted(c)
    simplicial = is_simplicial_shelling(sc, [chain_ids(sc, ch) for ch in chains])
    payload["order_complex"] = {"vertices": len(sc.vertices), "chains": len(chains), "shelling": simplicial.to_dict()}
    rows.append({"check": "⪯_l chain order is a shelling of K", "result": "PASS" if simplicial.ok else "FAIL"})
    ok = ok and simplicial.ok

    payload["ok"] = ok
    emit(render(payload, rows, cfg.fmt, title=f"check {describe_input(cfg)}"), cfg.out)
    return 0 if ok else 3


def cmd_homology(args) -> int:
    """
    Usage: homology (--facets PATH | --uniform N K | --sphere R | --code GENFILE) [--method formula|count|snf|all] [--dump-matrices PATH]

    Top reduced homology of the punctured order complex by the Betti formula,
    by counting chains with full restriction, and by Smith normal form. With
    'all' the three must agree.
    """
    parser = new_parser("homology")
    add_input_arguments(parser)
    parser.add_argument("--method", choices=["formula", "count", "snf", "all"], default="all")
    parser.add_argument("--dump-matrices", dest="dump", default=None)
    cfg = parse_run_config("homology", parser, args)
    c = build_complex(cfg)
    result = compare_homology_methods(c, cfg.options.method, describe_input(cfg))

    rows: List[Dict] = []
    if result.homology is not None:
        for h in result.homology.groups:
            rows.append({"method": "snf", "degree": h.degree, "rank": h.rank, "torsion": ",".join(map(str, h.torsion))})
        if cfg.options.dump:
            emit(dump_boundary_triplets(boundary_matrices(result.sc)), cfg.options.dump)
    for name in ("formula", "count"):
        if name in result.ranks:
            rows.append({"method": name, "degree": result.degree, "rank": result.ranks[name], "torsion": ""})

    emit(render(result.to_dict(), rows, cfg.fmt, title=f"homology {describe_input(cfg)}"), cfg.out)
    if not result.agree:
        print(f"SYSTEM: Error => homology methods disagree: {result.ranks}")
    return 0 if result.agree else 3


def cmd_mv_check(args) -> int:
    """
    Usage: mv-check (--facets PATH | --uniform N K | --sphere R | --code GENFILE)

    Adds facets in ≺_q order and checks the Mayer-Vietoris rank identity and
    the concentration of each intersection complex at every stage.
    """
    parser = new_parser("mv-check")
    add_input_arguments(parser)
    cfg = parse_run_config("mv-check", parser, args)
    c = build_complex(cfg)
    report = mayer_vietoris_stage_check(c)
    k = report.k

    rows = [
        {
            "stage": s.stage,
            "facet": str(s.facet),
            "meets": s.intersection_facets,
            f"β{k - 2}(I)": s.intersection.get(k - 2, 0),
            f"β{k - 1}": s.after.get(k - 1, 0),
            "identity": s.identity_holds,
            "concentrated": s.concentrated,
        }
        for s in report.stages
    ]
    payload = report.to_dict()
    payload["complex"] = describe_input(cfg)
    ok = report.ok and report.accumulated == report.final_rank
    emit(render(payload, rows, cfg.fmt, title=f"mv-check {describe_input(cfg)}"), cfg.out)
    return 0 if ok else 3


########################################################
# THE COMMAND ROUTER DICTIONARY
########################################################

COMMAND_ROUTER = {
    "help": cmd_help,
    "grassmann": cmd_grassmann,
    "check": cmd_check,
    "homology": cmd_homology,
    "reproduce": cmd_reproduce,
    "mv-check": cmd_mv_check,
}
