"""
sheafnet command-line entry point.

    python -m sheafnet.main complex --network fixtures/path3.json
    python -m sheafnet.main simulate --network fixtures/relay2.json --schedule fixtures/relay2_schedule.json
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from sheafnet.commands import bound, cohomology, complex, sections, simulate
from sheafnet.core.config import settings
from sheafnet.core.errors import EXIT_INPUT_ERROR, EXIT_INTERNAL_ERROR, EXIT_OK, ParseError, SheafNetError
from sheafnet.schemas.run_config import RunConfig

logger = logging.getLogger(__name__)

COMMANDS = {
    "complex": complex,
    "sections": sections,
    "cohomology": cohomology,
    "simulate": simulate,
    "bound": bound,
}


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors become ParseError so they share the input-error exit code."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ParseError(message)


def parse_window(text: str) -> tuple[int, int]:
    """"t0:t1" (or a single "t")."""
    parts = text.split(":")
    try:
        bounds = [int(p) for p in parts]
    except ValueError:
        raise ParseError("window must be t0:t1", field="--window") from None
    if len(bounds) == 1:
        bounds = bounds * 2
    if len(bounds) != 2 or bounds[1] < bounds[0]:
        raise ParseError("window must be t0:t1 with t0 <= t1", field="--window")
    return (bounds[0], bounds[1])


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--network", help="network document (JSON)")
    common.add_argument("--random", dest="random_nodes", type=int, help="use a seeded random disk network with this many nodes")
    common.add_argument("--schedule", help="schedule document (JSON)")
    common.add_argument("--window", type=parse_window, help="time window t0:t1")
    common.add_argument("--threshold", type=float, help="override the document's decode threshold")
    common.add_argument("--protocol", help="receive queue function")
    common.add_argument("--packet-dim", dest="packet_dim", type=int, help="packet dimension d")
    common.add_argument("--queue-len", dest="queue_len", type=int, help="buffer length n")
    common.add_argument("--format", dest="output_format", choices=["report", "dot"], default="report")

    parser = ArgumentParser(prog="sheafnet", description="Sheaf models of single-channel wireless networks.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, module in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=(module.__doc__ or "").strip())
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=settings.log_level.upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        args = build_parser().parse_args(argv)
        options = {k: v for k, v in vars(args).items() if v is not None}
        config = RunConfig(**options)
        output = COMMANDS[config.command].run(config)
    except SheafNetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        error = exc.errors()[0]
        print(f"error: {error['msg']} (field={'.'.join(str(p) for p in error['loc'])})", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except Exception as exc:
        logger.exception("unexpected failure")
        print(f"error: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL_ERROR
    sys.stdout.write(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
