"""
Command-line entry point for Likelihood Station
"""

from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr, redirect_stdout
from typing import List, NamedTuple, Optional, Sequence

from ..config import settings
from ..exceptions.custom import EXIT_OK, EXIT_USAGE, ComputationTimeoutError
from ..exceptions.handlers import error_payload, handle_exception, log_exception
from ..logging_config import get_logger, setup_logging
from ..schemas.reports import RunReport
from ..utils.timing import StageTimer, groebner_timeout
from .commands import COMMANDS

logger = get_logger(__name__)


class CommandResult(NamedTuple):
    exit_code: int
    report: Optional[RunReport]
    output: str
    to_stderr: bool = False


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    common.add_argument("--strategy", choices=["auto", "syzygy", "minors"], default=None)
    common.add_argument("--step4", choices=["full", "prime"], default=None)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--tol-residual", type=float, default=None)
    common.add_argument("--tol-imag", type=float, default=None)
    common.add_argument("--timeout", type=float, default=None, help="seconds per Groebner basis")
    common.add_argument("--model-file", default=None, help="model in the text model format")
    common.add_argument("--presaturate", action="store_true")
    common.add_argument("--log-level", default=None)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="likelihood-station",
        description="Likelihood ideals, ML degrees and local maxima of algebraic statistical models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mldegree", parents=[common], help="ML degree from two generic data draws")
    p.add_argument("model", nargs="?")

    for name, text in (
        ("critical", "all complex critical points for the given data"),
        ("maximize", "certified local maxima for the given data"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("model", nargs="?")
        p.add_argument("--data", required=True, help="comma-separated counts")

    p = sub.add_parser("parametric", parents=[common], help="parametric likelihood ideal K_u")
    p.add_argument("model", nargs="?")
    p.add_argument("--data", default=None, help="comma-separated counts (generic draw if omitted)")
    p.add_argument("--no-check", action="store_true", help="skip the implicit consistency check")

    p = sub.add_parser("bound", parents=[common], help="complete-intersection ML degree bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degrees", required=True, help="comma-separated generator degrees")

    p = sub.add_parser("models", parents=[common], help="list or show catalog models")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("--export", action="store_true", help="print the model in the text format")
    return parser


def _parse(argv: Sequence[str]) -> tuple:
    """Parse argv, turning argparse's SystemExit into an exit code and message."""
    parser = build_parser()
    buffer = io.StringIO()
    try:
        with redirect_stderr(buffer), redirect_stdout(buffer):
            return parser.parse_args(list(argv)), None, ""
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return None, code, buffer.getvalue()


def run_command(argv: Sequence[str]) -> CommandResult:
    """
    Run one command

    Args:
        argv: arguments without the program name

    Returns:
        CommandResult with the exit code, the report (when one was produced) and the rendered output
    """
    args, code, message = _parse(argv)
    if args is None:
        return CommandResult(code, None, message.rstrip("\n"), to_stderr=code != EXIT_OK)

    setup_logging(args.log_level or settings.LOG_LEVEL, settings.LOG_FORMAT)
    timer = StageTimer()
    log = logger.bind(command=args.command, seed=args.seed)
    try:
        with groebner_timeout(args.timeout):
            outcome = COMMANDS[args.command](args, list(argv), timer)
    except ComputationTimeoutError as exc:
        log_exception(exc, args.command)
        code, payload = error_payload(exc)
        report = RunReport(
            command=list(argv),
            model=getattr(args, "model", None),
            seed=args.seed,
            timings=dict(timer.timings),
            timed_out=timer.timed_out or exc.stage,
            extra={"error": payload},
        )
        return CommandResult(code, report, report.render(args.format))
    except Exception as exc:
        stream = io.StringIO()
        code = handle_exception(exc, args.format, args.command, stream)
        return CommandResult(code, None, stream.getvalue().rstrip("\n"))

    if isinstance(outcome, str):
        return CommandResult(EXIT_OK, None, outcome.rstrip("\n"))
    outcome.timings = dict(timer.timings)
    log.info("command_finished", timings=outcome.timings)
    return CommandResult(EXIT_OK, outcome, outcome.render(args.format))


def main(argv: Optional[List[str]] = None) -> None:
    result = run_command(sys.argv[1:] if argv is None else argv)
    if result.output:
        print(result.output, file=sys.stderr if result.to_stderr else sys.stdout)
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
