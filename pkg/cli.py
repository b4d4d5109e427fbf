"""
Command-line entry point for loopconf
Run `python cli.py <command> [options]`; the exit status follows the report.
"""
import argparse
import json
import logging
import sys

from config import Config
from utils.runner import BUILTINS, COMMANDS, FORMATS, RunConfig, render_text, run


def build_parser():
    parser = argparse.ArgumentParser(
        prog="loopconf",
        description="Exact checks and classifications for the loop Virasoro conformal algebra.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--builtin", choices=BUILTINS, default="cw")
    parser.add_argument("--window", type=int, default=Config.WINDOW, metavar="N",
                        help="index window [-N, N]")
    parser.add_argument("--deg-bound", type=int, default=Config.DEG_BOUND, metavar="D")
    parser.add_argument("--format", choices=FORMATS, default=Config.FORMAT)
    parser.add_argument("--seed", type=int, default=Config.SEED, metavar="S")
    parser.add_argument("--input", dest="input_path", metavar="PATH",
                        help="JSON document with an algebra, module or derivation section")
    parser.add_argument("--alpha-band", type=int, default=Config.ALPHA_BAND, metavar="N")
    parser.add_argument("--i", type=int, default=1)
    parser.add_argument("--j", type=int, default=2)
    parser.add_argument("--verbose", action="store_true", help="log pipeline steps at DEBUG")
    return parser


def configure_logging(verbose=False):
    level = logging.DEBUG if verbose else getattr(logging, Config.LOG_LEVEL, logging.WARNING)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    config = RunConfig(
        command=args.command,
        window=args.window,
        deg_bound=args.deg_bound,
        format=args.format,
        input_path=args.input_path,
        seed=args.seed,
        alpha_band=args.alpha_band,
        i=args.i,
        j=args.j,
        builtin=args.builtin,
    )
    report = run(config)
    if config.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(render_text(report))
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
