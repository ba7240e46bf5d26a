import argparse
import logging
import os
import sys
from typing import Optional, Sequence

from dotenv import load_dotenv

from ..errors import exit_code_for
from .run import COMMANDS, RunConfig, Runner

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dunkl-spectra",
        description="Coefficient tables, Ritz spectra, bound checks and Witten models of perturbed Dunkl oscillators.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("params", nargs="*", metavar="key=value",
                        help="command parameters; comma-separated values run a sweep")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--debug", action="store_true", help="debug logging and timings in the output")
    return parser


def configure_logging(level: Optional[str], debug: bool = False):
    load_dotenv()
    if debug:
        level = "DEBUG"
    level = (level or os.environ.get("DUNKL_SPECTRA_LOG_LEVEL") or "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format=LOG_FORMAT, stream=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level, args.debug)
    try:
        config = RunConfig.from_pairs(args.command, args.params)
        return Runner(debug=args.debug).run(config)
    except Exception as e:
        code = exit_code_for(e)
        if code == 1:
            logger.exception("Unexpected failure in %s", args.command)
        else:
            logger.error("%s: %s", type(e).__name__, e)
            violated = getattr(e, "violated", None)
            if violated:
                logger.error("Violated: %s", "; ".join(violated))
        print(f"Error: {e}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
