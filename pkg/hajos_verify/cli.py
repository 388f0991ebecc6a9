"""Define the hajos-verify command line."""

import argparse
import json
import logging
import os
import sys
from contextlib import ExitStack

from . import __version__
from ._helpers import Graph6Error, PreconditionError
from .config import Config
from .generator import enumerate_nonisomorphic
from .graph import hajos_bound, is_eulerian
from .graph6 import read_graph6_lines, to_graph6
from .ip_models import NoAnchorError, build_ip_gen, build_ip_hd, select_formulation, write_lp
from .pipeline import StreamError, emit_report, exit_code, process_stream

LOGGER = logging.getLogger(__name__)

EXIT_ERROR = 1

FORMULATIONS = {
    "hd": build_ip_hd,
    "gen": build_ip_gen,
    "auto": select_formulation,
}


class UsageError(Exception):
    """The command line could not be parsed."""


class _Parser(argparse.ArgumentParser):
    """An ArgumentParser that reports usage errors with exit code 1."""

    def error(self, message):
        """Print the usage and raise instead of exiting with status 2."""
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _add_run_options(parser):
    """Add the options shared by the stream subcommands."""
    parser.add_argument("input", help="graph6 file, or - for standard input")
    parser.add_argument("--config", metavar="FILE", help="TOML file with a [hajos_verify] table")
    parser.add_argument("--report", choices=["csv", "json"], default="csv", help="report format (default: csv)")
    parser.add_argument("--out", metavar="FILE", help="write the report here instead of standard output")
    parser.add_argument("--fail-fast", action="store_true", default=None, help="stop at the first malformed line")


def build_parser():
    """Return the argument parser."""
    parser = _Parser(prog="hajos-verify", description=__version__.__description__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__.__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG messages")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    verify = commands.add_parser("verify", help="verify every graph of a graph6 stream")
    _add_run_options(verify)
    verify.add_argument("--seed", type=int, help="master seed (default: $HAJOS_SEED or 0)")
    verify.add_argument("--timeout-ms", type=int, help="wall budget per graph, heuristics included")
    verify.add_argument("--no-race", dest="race", action="store_false", default=None,
                        help="run the exact search alone in the last stage")
    verify.add_argument("--emit-lp", dest="emit_lp_dir", metavar="DIR",
                        help="write an LP model for every graph that reaches the last stage")
    verify.add_argument("--halt-on-counterexample", action="store_true", default=None,
                        help="stop at the first counterexample")
    verify.add_argument("--max-rlc-attempts", type=int, help="cap on repeated RLC decompositions")
    verify.add_argument("--node-limit", type=int, help="cap on exact search nodes per graph")
    verify.add_argument("--jobs", type=int, help="worker processes")
    verify.add_argument("--counterexamples", metavar="FILE",
                        help="append counterexamples here (default: standard error)")

    filter_cmd = commands.add_parser("filter", help="tally the minimum-counterexample criteria of a graph6 stream")
    _add_run_options(filter_cmd)

    generate = commands.add_parser("generate", help="enumerate non-isomorphic biconnected Eulerian graphs")
    generate.add_argument("--order", type=int, required=True, help="graph order (3..9)")
    generate.add_argument("--out", metavar="FILE", help="write graph6 lines here instead of standard output")
    generate.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                          help="worker processes; defaults to the CPU count")
    generate.add_argument("--json", action="store_true", help="print the summary as JSON")

    bound = commands.add_parser("bound", help="print the largest allowed number of cycles for an order")
    bound.add_argument("--order", type=int, required=True)

    emit = commands.add_parser("emit-lp", help="write the integer program of every graph of a graph6 file")
    emit.add_argument("input", help="graph6 file, or - for standard input")
    emit.add_argument("--formulation", choices=sorted(FORMULATIONS), default="auto")
    emit.add_argument("--out", metavar="DIR", required=True, help="directory for the .lp files")
    return parser


def _configure_logging(verbosity):
    """Send log messages to standard error at the requested level."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _open_input(stack, path):
    """Return a text stream for *path*, standard input for "-"."""
    if path == "-":
        return sys.stdin
    return stack.enter_context(open(path, encoding="ascii"))


def _make_config(args, filter_only):
    """Build the run configuration from the options given on the command line."""
    options = {"filter_only": filter_only, "fail_fast": args.fail_fast}
    for name in ("seed", "timeout_ms", "race", "emit_lp_dir", "halt_on_counterexample", "max_rlc_attempts",
                 "node_limit", "jobs"):
        options[name] = getattr(args, name, None)
    if args.config:
        return Config.from_toml(args.config, **options)
    return Config(**{key: value for key, value in options.items() if value is not None})


def _run_stream(args, filter_only):
    """Run the verify or filter subcommand."""
    config = _make_config(args, filter_only)
    with ExitStack() as stack:
        lines = _open_input(stack, args.input)
        sink = sys.stderr
        if getattr(args, "counterexamples", None):
            sink = stack.enter_context(open(args.counterexamples, "a", encoding="ascii"))
        report = process_stream(lines, config, counterexample_sink=sink)
        text = emit_report(report, args.report)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(text)
        else:
            sys.stdout.write(text)
    return exit_code(report)


def _run_generate(args):
    """Run the generate subcommand."""
    graphs, report = enumerate_nonisomorphic(args.order, jobs=args.jobs)
    text = "".join(to_graph6(g) + "\n" for g in graphs)
    if args.out:
        with open(args.out, "w", encoding="ascii") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    summary = json.dumps(report.to_dict(), sort_keys=True) if args.json else report.summary()
    print(summary, file=sys.stderr)
    return 0


def _run_emit(args):
    """Run the emit-lp subcommand."""
    build = FORMULATIONS[args.formulation]
    written = 0
    with ExitStack() as stack:
        for number, item in read_graph6_lines(_open_input(stack, args.input)):
            if isinstance(item, Graph6Error):
                LOGGER.warning("Skipping line %d: %s", number, item)
                continue
            if not is_eulerian(item):
                LOGGER.warning("Skipping line %d: %s is not an Eulerian graph", number, to_graph6(item))
                continue
            try:
                model = build(item)
            except NoAnchorError as exc:
                LOGGER.warning("Skipping line %d: %s", number, exc)
                continue
            print(write_lp(model, args.out))
            written += 1
    LOGGER.info("Wrote %d models to %s", written, args.out)
    return 0


def main(argv=None):
    """Run the command line and return its exit status.

    :param list argv: The arguments; sys.argv[1:] if None
    :return int: 0 when everything was verified or filtered, 2 on a counterexample, 3 on aborted graphs, 1 on
        usage or I/O errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"hajos-verify: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _configure_logging(args.verbose)

    try:
        if args.command == "verify":
            return _run_stream(args, filter_only=False)
        if args.command == "filter":
            return _run_stream(args, filter_only=True)
        if args.command == "generate":
            return _run_generate(args)
        if args.command == "bound":
            print(hajos_bound(args.order))
            return 0
        return _run_emit(args)
    except (OSError, PreconditionError, StreamError, ValueError, KeyError) as exc:
        LOGGER.error("%s", exc)
        print(f"hajos-verify: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
