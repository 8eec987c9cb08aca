#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Command-line interface: ``synth``, ``analyze`` and ``validate``.

Exit codes are 0 on success, 1 on bad input (unreadable or malformed files,
invalid flags, estimator preconditions) and 2 on internal failure.
"""

import argparse
import logging
import os
import sys

from blessed import Terminal

from . import __version__
from .lib import config as config_mod
from .lib import dfa, report, synth, trace, validate
from .lib.error import FractalError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2


class ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that exits with the input-error code on bad usage"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, "%s: error: %s\n" % (self.prog, message))


def build_parser():
    parser = ArgumentParser(
        prog="fractraffic",
        description="Fractal and long-range dependence analysis of frame-size traces",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--log-level",
        default="warning",
        help="debug, info, warning or error (default: %(default)s)",
    )
    parser.add_argument("--log-file", help="also append log records to this file")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    p = commands.add_parser("synth", help="write a seeded synthetic series")
    kinds = [k.value for k in synth.GeneratorKind]
    p.add_argument("--kind", choices=kinds, default="fgn")
    p.add_argument("--hurst", type=float, default=0.5)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=("auto", "circulant", "hosking"), default="auto")
    p.add_argument("--out", default="-", help="output file, - for stdout")
    p.add_argument(
        "--raw",
        action="store_true",
        help="write float samples instead of frame sizes in [64, 1518]",
    )
    p.set_defaults(func=cmd_synth)

    p = commands.add_parser("analyze", help="run PSA, DFA and TSA on a trace")
    p.add_argument("--in", dest="input", required=True, help="trace file, - for stdin")
    p.add_argument(
        "--format", choices=[f.value for f in trace.TraceFormat], default="sizes"
    )
    p.add_argument("--label", default="", help="direction label (default: file stem)")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", dest="report_format", action="store_const", const="json")
    out.add_argument("--csv", dest="report_format", action="store_const", const="csv")
    out.add_argument(
        "--table", dest="report_format", action="store_const", const="table"
    )
    p.add_argument("--plots", metavar="DIR", help="write plot-data CSV files here")
    p.add_argument("--preset", default="default")
    p.add_argument("--config", dest="config_file", metavar="FILE")
    p.add_argument("--omega0", type=float)
    p.add_argument("--max-regimes", type=int)
    p.add_argument("--psa-detrend", choices=("mean", "bridge"))
    p.add_argument("--tsa-smoothing", type=int)
    p.add_argument("--tsa-detrend", choices=("mean", "bridge"))
    p.add_argument(
        "--no-integrate",
        dest="integrate",
        action="store_const",
        const=False,
        help="use the raw series for PSA and TSA",
    )
    p.set_defaults(func=cmd_analyze, report_format="json")

    p = commands.add_parser("validate", help="run the estimator self-checks")
    p.add_argument(
        "--no-benchmark", action="store_true", help="skip the DFA benchmark table"
    )
    p.set_defaults(func=cmd_validate)
    return parser


def _write_bytes(path, data):
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    with open(path, "wb") as fp:
        fp.write(data)


def cmd_synth(args):
    spec = synth.GeneratorSpec(args.hurst, args.length, args.seed, args.kind)
    if spec.kind is synth.GeneratorKind.WHITE:
        series = synth.gen_white(spec)
    elif spec.kind is synth.GeneratorKind.FBM:
        series = synth.gen_fbm(spec, args.method)
    else:
        series = synth.gen_fgn(spec, args.method)
    if args.raw:
        text = trace.dump_lines(series.values, trace.TraceFormat.VALUES)
    else:
        text = trace.dump_lines(synth.to_frame_sizes(series), trace.TraceFormat.SIZES)
    _write_bytes(args.out, text.encode("utf-8"))
    logger.info("wrote %s to %s", series, args.out)
    return EXIT_OK


def cmd_analyze(args):
    config = config_mod.resolve_config(
        args.preset,
        args.config_file,
        {
            "omega0": args.omega0,
            "max_regimes": args.max_regimes,
            "psa_detrend": args.psa_detrend,
            "tsa_smoothing": args.tsa_smoothing,
            "tsa_detrend": args.tsa_detrend,
            "integrate": args.integrate,
        },
    )
    series = trace.load_trace(trace.TraceFile(args.input, args.format, args.label))
    result = report.analyze(series, config)
    _write_bytes("-", report.emit_report(result, args.report_format))
    if args.plots:
        os.makedirs(args.plots, exist_ok=True)
        for name, data in report.plot_files(result):
            _write_bytes(os.path.join(args.plots, name), data)
    return EXIT_OK


def cmd_validate(args):
    term = Terminal()
    results = validate.run_checks()
    for result in results:
        mark = term.green("PASS") if result.passed else term.red("FAIL")
        print("%s  %-32s %s" % (mark, result.name, result.detail))
    if not args.no_benchmark:
        print()
        print(validate.benchmark_table(dfa.dfa_benchmark(length=2**13, seeds=3)))
    passed = sum(r.passed for r in results)
    print()
    print("%d of %d checks passed" % (passed, len(results)))
    return EXIT_OK if passed == len(results) else EXIT_INTERNAL


def cli_main(argv=None):
    """Parse `argv`, run the command and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT

    try:
        config_mod.configure_logging(args.log_level, args.log_file)
        return args.func(args)
    except (FractalError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:
        logger.debug("internal failure", exc_info=True)
        print("internal error: %s" % e, file=sys.stderr)
        return EXIT_INTERNAL
