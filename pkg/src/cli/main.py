"""
mclab command line: one binary, one subcommand per workflow.
"""
import argparse
import logging
import sys
from typing import List, Optional

from config.settings import LOGGING_CONFIG, RUN_CONFIG
from src.core.errors import MclabError
from src.core.loaders import write_output
from src.core.schemas import ErrorResponse
from . import commands
from .selftest import run_selftest

logger = logging.getLogger(__name__)


def setup_logging(level: Optional[str] = None) -> None:
    handlers = [logging.StreamHandler(sys.stderr)]
    if LOGGING_CONFIG["file"]:
        handlers.append(logging.FileHandler(LOGGING_CONFIG["file"]))
    logging.basicConfig(
        level=getattr(logging, (level or LOGGING_CONFIG["level"]).upper()),
        format=LOGGING_CONFIG["format"],
        handlers=handlers,
        force=True,
    )


def _common(parser: argparse.ArgumentParser, seeded: bool = False) -> None:
    parser.add_argument("--threads", type=int, default=RUN_CONFIG["threads"], help="Worker threads")
    parser.add_argument("--budget", type=int, default=None, help="Elementary-check budget for exhaustive searches")
    parser.add_argument("--output", type=str, default=None, help="Output file (default stdout)")
    parser.add_argument("--format", choices=["json", "csv"], default=RUN_CONFIG["format"], help="Report format")
    parser.add_argument("--log-level", type=str, default=None, help="Logging level")
    if seeded:
        parser.add_argument("--seed", type=int, required=True, help="Random seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mclab", description="Multiclass learnability lab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="All four dimensions with witnesses")
    p.add_argument("class_file")
    _common(p)
    p.set_defaults(handler=commands.cmd_dims)

    p = sub.add_parser("orient", help="Orient the one-inclusion graph")
    p.add_argument("class_file")
    p.add_argument("--method", choices=["optimal", "greedy", "brute-force"], default="optimal")
    p.add_argument("--bound", type=int, default=1, help="Degree bound for the greedy method")
    _common(p)
    p.set_defaults(handler=commands.cmd_orient)

    p = sub.add_parser("shift", help="Shift to a fixed point, or once along --direction")
    p.add_argument("class_file")
    p.add_argument("--direction", type=int, default=None)
    p.add_argument("--policy", type=str, default=None, help="Comma-separated direction schedule")
    _common(p)
    p.set_defaults(handler=commands.cmd_shift)

    p = sub.add_parser("learn", help="Predict, count leave-one-out mistakes, or emit a learning curve")
    p.add_argument("class_file")
    p.add_argument("--sample", type=str, default=None)
    p.add_argument("--menu", type=str, default=None)
    p.add_argument("--x", type=int, default=None, help="Test point")
    p.add_argument("--loo", action="store_true", help="Leave-one-out mistake count on the sample")
    p.add_argument("--distribution", type=str, default=None)
    p.add_argument("--ns", type=str, default=None, help="Comma-separated training sizes")
    p.add_argument("--mode", choices=["exact", "mc"], default="exact")
    p.add_argument("--trials", type=int, default=10000)
    _common(p, seeded=True)
    p.set_defaults(handler=commands.cmd_learn)

    p = sub.add_parser("list-learn", help="Menu from the list learner")
    p.add_argument("class_file")
    p.add_argument("--sample", type=str, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--d", type=int, default=None, help="DS dimension upper bound to use")
    p.add_argument("--truncate", action="store_true", help="Keep only the first d + t examples")
    _common(p)
    p.set_defaults(handler=commands.cmd_list_learn)

    p = sub.add_parser("compress", help="Sample compression")
    p.add_argument("class_file")
    p.add_argument("--sample", type=str, required=True)
    p.add_argument("--stage", choices=["combined", "list", "menu"], default="combined")
    p.add_argument("--menu", type=str, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--d-n", dest="d_n", type=int, default=None)
    _common(p, seeded=True)
    p.set_defaults(handler=commands.cmd_compress)

    p = sub.add_parser("complex", help="Simplicial complex tools")
    complex_sub = p.add_subparsers(dest="complex_command", required=True)
    for name in ("check", "to-cube", "to-complex", "squares", "from-bipartite"):
        q = complex_sub.add_parser(name)
        q.add_argument("input")
        _common(q)
        q.set_defaults(handler=commands.cmd_complex)

    p = sub.add_parser("coset", help="Coset complex and group conditions")
    p.add_argument("group_file")
    _common(p)
    p.set_defaults(handler=commands.cmd_coset)

    p = sub.add_parser("gen", help="Named constructions")
    gen_sub = p.add_subparsers(dest="gen_command", required=True)
    q = gen_sub.add_parser("hexagon")
    _common(q)
    q = gen_sub.add_parser("torus")
    q.add_argument("--complex", action="store_true", help="Emit the complex instead of the class")
    _common(q)
    q = gen_sub.add_parser("tree")
    q.add_argument("--k", type=int, default=3)
    q.add_argument("--m", type=int, default=2)
    _common(q)
    q = gen_sub.add_parser("cube")
    q.add_argument("--d", type=int, default=3)
    _common(q)
    p.set_defaults(handler=commands.cmd_gen)

    p = sub.add_parser("selftest", help="Run the bundled invariant suite")
    p.add_argument("--log-level", type=str, default=None)
    p.set_defaults(handler=None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)

    if args.command == "selftest":
        verdicts = run_selftest()
        return 0 if all(v.passed for v in verdicts) else 1

    try:
        text = args.handler(args)
        write_output(text, args.output)
        return 0
    except MclabError as e:
        error = ErrorResponse(error=e.message, error_code=e.error_code, details=e.details)
        sys.stderr.write(error.model_dump_json() + "\n")
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
