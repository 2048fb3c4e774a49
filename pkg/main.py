"""
Main entry point for the Ribbon Braiding Calculator
"""
import sys
import logging
import argparse
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ValidationError
from pythonjsonlogger import jsonlogger

from app import __version__
from app.commands.braid import cmd_braid, render_braid
from app.commands.fuse import cmd_fuse, render_fuse
from app.commands.job import JobConfig, OutputFormat
from app.commands.rmatrix import cmd_rmatrix, render_rmatrix
from app.commands.twist import cmd_twist, render_twist
from app.commands.verify import cmd_verify, render_verify
from app.config import LIE_TYPE_CONFIGS, settings
from app.services.errors import BraidCalcError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTATION = 2
EXIT_VERIFICATION = 3

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

COMMANDS: Dict[str, Tuple[Callable, Callable, str]] = {
    "twist": (cmd_twist, render_twist, "twist, ribbon element and Drinfeld u scalars of V(lambda)"),
    "fuse": (cmd_fuse, render_fuse, "decomposition of V(lambda) (x) V(lambda)"),
    "rmatrix": (cmd_rmatrix, render_rmatrix, "certified braiding operator on V (x) V"),
    "braid": (cmd_braid, render_braid, "matrix of a braid word on V^(x)m"),
    "verify": (cmd_verify, render_verify, "run every identity for the instance"),
}

_installed_handlers: List[logging.Handler] = []


class UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors instead of exiting"""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def setup_logging(level: Optional[str] = None):
    """Log to settings.log_file (JSON lines when enabled) and to stderr"""
    root = logging.getLogger()
    for handler in _installed_handlers:
        root.removeHandler(handler)
        handler.close()
    _installed_handlers.clear()

    log_path = Path(settings.log_file)
    log_path.parent.mkdir(parents=True, exist_ok=True)
    file_handler = logging.FileHandler(log_path)
    if settings.json_logs:
        file_handler.setFormatter(jsonlogger.JsonFormatter("%(asctime)s %(name)s %(levelname)s %(message)s"))
    else:
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(logging.Formatter(LOG_FORMAT))

    for handler in (file_handler, stream_handler):
        root.addHandler(handler)
        _installed_handlers.append(handler)
    root.setLevel((level or settings.log_level).upper())


def build_parser() -> CliParser:
    common = CliParser(add_help=False)
    common.add_argument("--type", dest="lie_type", default="A",
                        help=f"Lie type: {', '.join(LIE_TYPE_CONFIGS)}")
    common.add_argument("--rank", type=int, default=1)
    common.add_argument("--weight", default=None, help="highest weight, e.g. 1,0")
    common.add_argument("--strands", type=int, default=3)
    common.add_argument("--word", default="", help='braid word, e.g. "1 2 -1"')
    common.add_argument("--module-file", default=None, help="JSON module file")
    common.add_argument("--order", type=int, default=settings.series_order,
                        help="truncation order of series expansions")
    common.add_argument("--cap", type=int, default=settings.dimension_cap,
                        help="largest dimension a command may build")
    common.add_argument("--format", dest="output_format", default=settings.output_format,
                        choices=[f.value for f in OutputFormat])
    common.add_argument("--log-level", default=None)

    parser = CliParser(prog="braidcalc", description="Exact braid group representations from quantum group modules")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (_, _, help_text) in COMMANDS.items():
        subparsers.add_parser(name, parents=[common], help=help_text)
    return parser


def render(report: BaseModel, renderer: Callable, output_format: OutputFormat) -> str:
    if output_format == OutputFormat.STRUCTURED:
        return report.model_dump_json(indent=2) + "\n"
    return renderer(report)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        0 on success, 1 on usage errors, 2 on computation errors, 3 when verification fails
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(args.log_level)
    try:
        config = JobConfig(
            lie_type=args.lie_type,
            rank=args.rank,
            weight=args.weight,
            strands=args.strands,
            word=args.word,
            output_format=args.output_format,
            module_file=args.module_file,
            order=args.order,
            cap=args.cap,
        )
    except ValidationError as e:
        logger.error(f"Invalid configuration: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    command, renderer, _ = COMMANDS[args.command]
    logger.info(f"Running {args.command} for {config.lie_type}{config.rank}")
    try:
        report = command(config)
    except BraidCalcError as e:
        logger.error(f"Error running {args.command}: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_COMPUTATION

    sys.stdout.write(render(report, renderer, config.output_format))
    if getattr(report, "passed", True) is False:
        return EXIT_VERIFICATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
