"""Command-line interface: summarize, simulate, tree.

Usage:
    ipsumm summarize hosts.txt --granularity 0
    ipsumm simulate --manifest testbed/registries.manifest --mode both --sweep
    ipsumm tree hosts.txt
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ip_summarizer.constants import (
    DEFAULT_GRANULARITY,
    DEFAULT_MIN_SUBNET_MASK,
    EXIT_OK,
    EXIT_USAGE,
    FORMAT_TABLE,
    GRANULARITIES,
    MAX_MASK,
    MODE_BOTH,
    MODE_DISTRIBUTED,
    MODE_SINGLE,
    OUTPUT_FORMATS,
    SIMULATION_MODES,
)
from ip_summarizer.directory import (
    compare_modes,
    publish_and_merge,
    summarize_single,
    sweep,
)
from ip_summarizer.heuristic import SummaryConfig, summarize
from ip_summarizer.patricia import PatriciaTree
from ip_summarizer.report import SummaryStats, render
from ip_summarizer.utils import (
    read_address_file,
    read_manifest,
    read_registry_files,
)

logger = logging.getLogger(__name__)

LOG_LEVELS = ("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG")


# ── Argument types ─────────────────────────────────────────────────────

def _mask_length(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value <= MAX_MASK:
        raise argparse.ArgumentTypeError(f"must be in 0..{MAX_MASK}: {value}")
    return value


def _density(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"must be in (0, 1]: {value}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", default=None,
                        help="Write to this file instead of stdout")
    common.add_argument("--loglevel", default="WARNING", choices=LOG_LEVELS,
                        help="Diagnostics level on stderr (default WARNING)")

    tuning = argparse.ArgumentParser(add_help=False)
    tuning.add_argument("--granularity", type=int, choices=GRANULARITIES,
                        default=DEFAULT_GRANULARITY,
                        help="0 = finest, 3 = coarsest (default %(default)s)")
    tuning.add_argument("--min-mask", type=_mask_length,
                        default=DEFAULT_MIN_SUBNET_MASK,
                        help="Masks up to this length never summarize "
                             "(default %(default)s)")
    tuning.add_argument("--distance", type=_mask_length, default=None,
                        help="Distance threshold in bits (needs --density)")
    tuning.add_argument("--density", type=_density, default=None,
                        help="Density threshold (needs --distance)")
    tuning.add_argument("--format", default=FORMAT_TABLE, choices=OUTPUT_FORMATS,
                        help="Output format (default %(default)s)")
    tuning.add_argument("--sweep", action="store_true",
                        help="Run every granularity and tabulate them")

    parser = argparse.ArgumentParser(
        prog="ipsumm",
        description="Summarize IPv4 address sets into CIDR prefixes",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    p = subparsers.add_parser("summarize", parents=[common, tuning],
                              help="Summarize one address file")
    p.add_argument("input", help="Address file, one dotted-quad per line")
    p.set_defaults(handler=cmd_summarize)

    p = subparsers.add_parser("simulate", parents=[common, tuning],
                              help="Run the two-level directory simulation")
    p.add_argument("inputs", nargs="*",
                   help="Registry address files (name = file stem)")
    p.add_argument("--manifest", default=None,
                   help="File of name=path lines, one per registry")
    p.add_argument("--mode", default=MODE_BOTH, choices=SIMULATION_MODES,
                   help="Simulation mode (default %(default)s)")
    p.add_argument("--jobs", type=_positive_int, default=1,
                   help="Registries summarized in parallel (default 1)")
    p.set_defaults(handler=cmd_simulate)

    p = subparsers.add_parser("tree", parents=[common],
                              help="Print the trie built from an address file")
    p.add_argument("input", help="Address file, one dotted-quad per line")
    p.set_defaults(handler=cmd_tree)

    return parser


def _config_from_args(parser: argparse.ArgumentParser,
                      args: argparse.Namespace) -> SummaryConfig:
    if (args.distance is None) != (args.density is None):
        parser.error("--distance and --density must be given together")
    if args.distance is not None:
        if args.sweep:
            parser.error("--sweep cannot be combined with --distance/--density")
        return SummaryConfig.with_thresholds(args.distance, args.density,
                                             args.min_mask)
    return SummaryConfig(granularity=args.granularity,
                         min_subnet_mask=args.min_mask)


def _write(args: argparse.Namespace, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ── Commands ───────────────────────────────────────────────────────────

def cmd_summarize(args: argparse.Namespace) -> int:
    """Summarize one address file and print prefixes plus statistics."""
    tree = PatriciaTree.build(read_address_file(args.input))
    name = Path(args.input).stem
    if args.sweep:
        results = [summarize(tree, args.config.with_granularity(g))
                   for g in GRANULARITIES]
        stats = SummaryStats.from_sweep(name, results, args.config)
    else:
        stats = SummaryStats.from_result(name, summarize(tree, args.config))
    logger.info("%s: %d addresses -> %d prefixes", name, stats.original_size,
                stats.summarized_size)
    _write(args, render(stats, args.format))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    """Summarize every registry, merge, and optionally compare with a
    single combined summarization."""
    if args.manifest:
        registries = read_manifest(args.manifest)
    else:
        registries = read_registry_files(args.inputs)
    if args.sweep:
        subject = sweep(registries, args.config, args.mode, args.jobs)
    elif args.mode == MODE_DISTRIBUTED:
        subject = publish_and_merge(registries, args.config, args.jobs)
    elif args.mode == MODE_SINGLE:
        subject = summarize_single(registries, args.config, args.jobs)
    else:
        subject = compare_modes(registries, args.config, args.jobs)
    _write(args, render(subject, args.format))
    return EXIT_OK


def cmd_tree(args: argparse.Namespace) -> int:
    """Print the indented trie dump for an address file."""
    tree = PatriciaTree.build(read_address_file(args.input))
    _write(args, tree.dump() + "\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and bool(args.manifest) == bool(args.inputs):
        parser.error("simulate needs either --manifest or registry files")
    if args.command != "tree":
        args.config = _config_from_args(parser, args)

    logging.basicConfig(level=args.loglevel,
                        format="%(levelname)s %(name)s: %(message)s", force=True)
    logging.captureWarnings(True)
    try:
        return args.handler(args)
    except (ValueError, OSError) as e:
        # Input, configuration and rendering errors all derive from ValueError.
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
