# grouplab/main.py

import argparse
import json
import sys
import time
from pathlib import Path
from typing import List, Optional

from grouplab.cli import commands
from grouplab.cli.dependencies import parse_primes
from grouplab.config import get_settings
from grouplab.utils.errors import GroupLabError
from grouplab.utils.logger import set_level, setup_logger

logger = setup_logger(__name__)

ALGEBRA_QUERIES = ["symmetric-dim", "symmetric-commutes", "symmetric-central", "idempotents", "delta"]


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--primes", type=parse_primes, default=None,
                        help="comma-separated odd primes (single-context commands use the first)")
    common.add_argument("--max-order", type=int, default=None, help="largest corpus group order")
    common.add_argument("--format", choices=["json", "markdown"], default="json")
    common.add_argument("--out", type=Path, default=None, help="write the document here instead of stdout")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=None,
                        help="override GROUPLAB_LOG_LEVEL for this run")
    return common


GROUP_HELP = "group spec: C<n>, D<2n>, Q8, Q16, products joined by 'x', JSON or a .json path"


def _group_args(parser: argparse.ArgumentParser, positional: bool = True) -> None:
    if positional:
        parser.add_argument("group", nargs="?", default=None, help=GROUP_HELP)
    parser.add_argument("-g", "--group", dest="group_option", default=None, help="same as the positional group spec")


def _context_flags(parser: argparse.ArgumentParser, positional: bool = True) -> None:
    _group_args(parser, positional)
    parser.add_argument("--involution", default="classical",
                        help="'classical', 'identity', an enumeration index or 'map:i0,i1,...'")
    parser.add_argument("--orientation", default="trivial",
                        help="'trivial', an enumeration index or 'k:g1,g2,...' (kernel generators)")


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="grouplab",
        description="Group algebras with oriented involutions over F_p: predicates, oracles and sweeps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run a verification sweep over the corpus")
    verify_sub = verify.add_subparsers(dest="run", required=True)
    for name, func, text in (
        ("lemma5", commands.verify_lemma5, "Symmetric commutativity vs. abelian-or-SLC (trivial orientation)"),
        ("lemma8", commands.verify_lemma8, "Symmetric commutativity vs. the oriented conditions"),
        ("axioms", commands.verify_axioms, "Involution and anti-homomorphism axioms of the oriented map"),
    ):
        run = verify_sub.add_parser(name, parents=[common], help=text)
        if name == "axioms":
            run.add_argument("--samples", type=int, default=None, help="random pairs per compatible context")
        run.set_defaults(func=func)

    pipe = sub.add_parser("pipeline", parents=[common], help="Modular pipeline on G/P for P the p-elements")
    _context_flags(pipe)
    pipe.set_defaults(func=commands.pipeline, orientation="0")

    classify = sub.add_parser("classify", parents=[common], help="Classification report for an oriented pair")
    _context_flags(classify)
    classify.add_argument("--modulo-p", action="store_true", help="classify G/P instead of G")
    classify.add_argument("--prime", type=int, default=None,
                          help="p for --modulo-p (defaults to the first of --primes)")
    classify.set_defaults(func=commands.classify, orientation="0")

    inv = sub.add_parser("involutions", parents=[common], help="List the involutions of a group")
    _group_args(inv)
    inv.set_defaults(func=commands.involutions)

    ori = sub.add_parser("orientations", parents=[common], help="List the orientation kernels of a group")
    _group_args(ori)
    ori.add_argument("--include-trivial", action="store_true")
    ori.set_defaults(func=commands.orientations)

    units = sub.add_parser("units", parents=[common], help="Enumerate (symmetric) units of F_p G")
    _context_flags(units)
    units.add_argument("--symmetric", action="store_true")
    units.set_defaults(func=commands.units)

    ident = sub.add_parser("identity", parents=[common], help="Check a group identity on (symmetric) units")
    _context_flags(ident)
    ident.add_argument("--word", required=True, help="e.g. '(x1,x2)' or 'x1^2 x2^-1'")
    ident.add_argument("--symmetric", action="store_true")
    ident.set_defaults(func=commands.identity)

    alg = sub.add_parser("algebra", parents=[common], help="Queries on F_p G with the oriented involution")
    alg.add_argument("terms", nargs="*", metavar="[group] query [subgroup]",
                     help=f"query is one of {', '.join(ALGEBRA_QUERIES)}; delta takes 'P', 'G', 'Z' or generators")
    _context_flags(alg, positional=False)
    alg.add_argument("--subgroup", default=None, help="same as the positional subgroup of delta")
    alg.add_argument("--nilpotency", action="store_true", help="for delta: also report the nilpotency index")
    alg.set_defaults(func=commands.algebra)

    return parser


def _resolve_positionals(parser: argparse.ArgumentParser, args: argparse.Namespace, extras: List[str]) -> None:
    """Merges positional and flag forms of the group spec, and splits the algebra terms."""
    if not hasattr(args, "group_option") or any(x.startswith("-") for x in extras):
        if extras:
            parser.error(f"unrecognized arguments: {' '.join(extras)}")
        return
    # positionals that follow an option arrive as extras
    group = getattr(args, "group", None)
    terms = ([group] if group else []) + list(getattr(args, "terms", None) or []) + extras
    if args.command == "algebra":
        args.group = terms.pop(0) if terms and terms[0] not in ALGEBRA_QUERIES else None
        if not terms or terms[0] not in ALGEBRA_QUERIES:
            parser.error(f"algebra needs a query: one of {', '.join(ALGEBRA_QUERIES)}")
        args.query = terms.pop(0)
        if terms and args.query == "delta" and args.subgroup is None:
            args.subgroup = terms.pop(0)
        args.subgroup = args.subgroup or "P"
    else:
        args.group = terms.pop(0) if terms else None
    if terms:
        parser.error(f"unrecognized arguments: {' '.join(terms)}")

    if args.group and args.group_option and args.group != args.group_option:
        parser.error("give the group spec once, positionally or with -g")
    args.group = args.group or args.group_option
    if not args.group:
        parser.error(f"{args.command} needs a group spec")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args, extras = parser.parse_known_args(argv)
    _resolve_positionals(parser, args, extras)
    if getattr(args, "log_level", None):
        set_level(args.log_level)
    start_time = time.time()
    command = f"{args.command} {getattr(args, 'run', '') or ''}".rstrip()
    logger.info(f"Command: {command} (env={get_settings().app_env})")

    try:
        document, code = args.func(args)
    except GroupLabError as e:
        # Domain errors: machine-readable on stdout
        logger.error(f"{type(e).__name__}: {e}")
        print(json.dumps({"error": str(e), "type": type(e).__name__}, sort_keys=True))
        code = 2
    except Exception as e:
        logger.exception(f"Unhandled exception: {str(e)}")
        code = 1
    else:
        if args.out is not None:
            args.out.write_text(document, encoding="utf-8")
            logger.info(f"Report written to {args.out}")
        else:
            sys.stdout.write(document)

    logger.info(f"{args.command} completed in {time.time() - start_time:.3f}s with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
