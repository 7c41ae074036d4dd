"""
hyperlog command-line interface
Entry point for the application
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from hyperlog.api.commands import ROOT_NAMES, cmd_check, cmd_root, cmd_sweep, exit_code
from hyperlog.core.config import APP_DESCRIPTION, APP_TITLE, APP_VERSION, load_config_file
from hyperlog.core.errors import BracketError, ConvergenceError, HyperlogError, UsageError
from hyperlog.core.log_setup import configure_logging
from hyperlog.models import ErrorDocument, RunSettings
from hyperlog.services.sweeps import sweep_names

logger = logging.getLogger(__name__)

SETTING_FLAGS = ("tol", "grid_n", "c", "d", "a", "b", "p")


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors get a JSON document"""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--c", type=float, help="first parameter of the zero-balanced pair")
    common.add_argument("--d", type=float, help="second parameter of the zero-balanced pair")
    common.add_argument("--a", type=float, help="small exponent of phi(t) = max(t^a, t^b)")
    common.add_argument("--b", type=float, help="large exponent of phi")
    common.add_argument("--p", type=float, help="power parameter")
    common.add_argument("--grid-n", dest="grid_n", type=int, help="points on every grid")
    common.add_argument("--tol", type=float, help="absolute tolerance on margins")
    common.add_argument("--config", type=Path, help="TOML config file")
    common.add_argument("--timing", action="store_true", default=None, help="fill runtime_ms")
    common.add_argument(
        "--log-level", dest="log_level", type=str.upper, choices=("DEBUG", "INFO", "WARNING", "ERROR")
    )

    parser = _Parser(prog=APP_TITLE, description=APP_DESCRIPTION)
    parser.add_argument("--version", action="version", version=f"{APP_TITLE} {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", parents=[common], help="run a verification suite")
    check.add_argument("check_id", help="check identifier or 'all'")

    root = sub.add_parser("root", parents=[common], help="solve a named root")
    root.add_argument("name", choices=ROOT_NAMES)

    sweep = sub.add_parser("sweep", parents=[common], help="write a named sweep to CSV")
    sweep.add_argument("name", choices=sweep_names())
    sweep.add_argument("--out", type=Path, required=True, help="CSV destination")
    return parser


def _settings(args: argparse.Namespace) -> RunSettings:
    config = load_config_file(args.config)
    flags = {name: getattr(args, name) for name in SETTING_FLAGS}
    flags["timing"] = args.timing
    return RunSettings.from_sources(config, flags)


def _error_details(error: HyperlogError) -> dict:
    if isinstance(error, BracketError):
        return {"lo": error.lo, "hi": error.hi, "f_lo": error.f_lo, "f_hi": error.f_hi, **error.diagnostics}
    if isinstance(error, ConvergenceError):
        return {"partial_value": error.partial_value, "n_terms": error.n_terms, "x": error.x}
    return {}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv, run the command and print its JSON document

    Returns:
        Process exit code
    """
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.log_level)
        settings = _settings(args)
        if args.command == "check":
            document = cmd_check(args.check_id, settings)
        elif args.command == "root":
            document = cmd_root(args.name, settings)
        else:
            document = cmd_sweep(args.name, settings, args.out)
    except HyperlogError as e:
        logger.error("%s: %s", e.kind, e)
        error = ErrorDocument(error=e.kind, message=str(e), details=_error_details(e))
        print(error.model_dump_json(indent=2))
        return e.exit_code

    print(document.model_dump_json(indent=2))
    return exit_code(document)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
