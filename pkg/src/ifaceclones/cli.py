"""Command line entry point: ``ifaceclones analyze ROOT...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import CORRELATION_METHODS, AnalysisConfig
from .errors import AnalysisError, ConfigError, NoSourceFound, SourceIOError
from .model import model_to_dict
from .report import emit_reports, run_analysis
from .textclone import CloneParams

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_BAD_INPUT = 2

logger = logging.getLogger("ifaceclones")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ifaceclones", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", help="analyze one or more source roots")
    p.add_argument("roots", nargs="+", type=Path, metavar="ROOT")
    tests = p.add_mutually_exclusive_group()
    tests.add_argument("--exclude-tests", dest="exclude_tests", action="store_true", default=True,
                       help="drop test interfaces (default)")
    tests.add_argument("--include-tests", dest="exclude_tests", action="store_false",
                       help="keep test interfaces")
    p.add_argument("--test-pattern", action="append", default=None, metavar="GLOB",
                   help="simple-name glob marking test classes (repeatable; default Test*, *Test, *Tests)")
    p.add_argument("--clone-min-length", type=int, default=6, metavar="N")
    p.add_argument("--clone-max-bias", type=int, default=2, metavar="N")
    p.add_argument("--clone-min-chunk", type=int, default=3, metavar="N")
    p.add_argument("--correlation", choices=[*CORRELATION_METHODS, "both"], default="both")
    p.add_argument("--format", default="json,csv,md", help="comma separated subset of json,csv,md")
    p.add_argument("--out", type=Path, default=Path("ifaceclones-report"), metavar="DIR")
    p.add_argument("--dump-model", type=Path, default=None, metavar="FILE",
                   help="write the parsed (unfiltered) model as JSON")
    p.add_argument("--library-root", action="append", type=Path, default=[], metavar="DIR",
                   help="sources parsed for resolution only; their interfaces are excluded")
    p.add_argument("--strip-comments", action="store_true", help="ignore comment lines in clone detection")
    p.add_argument("--intra-clones", action="store_true",
                   help="also report clones among implementers of the same interface")
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace) -> AnalysisConfig:
    methods = CORRELATION_METHODS if args.correlation == "both" else (args.correlation,)
    formats = {f.strip() for f in args.format.split(",") if f.strip()}
    kwargs = {}
    if args.test_pattern:
        kwargs["test_patterns"] = tuple(args.test_pattern)
    return AnalysisConfig(
        source_roots=tuple(args.roots),
        exclude_tests=args.exclude_tests,
        clone_params=CloneParams(args.clone_min_length, args.clone_max_bias, args.clone_min_chunk),
        correlation_methods=methods,
        output_dir=args.out,
        formats=frozenset(formats),
        library_roots=tuple(args.library_root),
        strip_comments=args.strip_comments,
        include_intra_clones=args.intra_clones,
        **kwargs,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        config = config_from_args(args)
        bundle = run_analysis(config)
        if args.dump_model is not None:
            args.dump_model.parent.mkdir(parents=True, exist_ok=True)
            args.dump_model.write_text(json.dumps(model_to_dict(bundle.model), indent=2) + "\n", encoding="utf-8")
        written = emit_reports(bundle, config)
    except (ConfigError, NoSourceFound, SourceIOError) as exc:
        print(f"ifaceclones: error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except AnalysisError as exc:
        print(f"ifaceclones: error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception:  # noqa: BLE001
        logger.exception("internal error")
        return EXIT_INTERNAL
    for path in written:
        logger.info("wrote %s", path)
    s = bundle.to_dict()["summary"]
    print(f"{s['interfaces']} interfaces, DM={s['dm']}, RDM={s['rdm']}, {s['suggestions']} suggestions -> {config.output_dir}")
    return EXIT_OK
