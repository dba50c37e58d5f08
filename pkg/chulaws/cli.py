"""
Command-line interface for chulaws.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from chulaws import __version__
from chulaws.core.base import Counterexample
from chulaws.core.engine import ConfigError, LawEngine
from chulaws.core.interpreter import Interpreter, replay_entry
from chulaws.core.parser import LawsStmt, ParseError, parse_program
from chulaws.core.registry import RegistryError
from chulaws.core.report import (
    IncompatibleReport,
    Report,
    ReportWriteError,
    emit_report,
    load_report,
    replayable,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chulaws",
        description="chulaws - exact checks of Chu-category laws",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "command",
        choices=["run", "laws", "replay"],
        help="Command to run",
    )
    parser.add_argument(
        "target",
        nargs="?",
        help=(
            "Script path (run), 'all' or a law id (laws), or a JSON "
            "report (replay)"
        ),
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="Master seed (default: 0)",
    )
    parser.add_argument(
        "--samples",
        type=int,
        help="Trials per law (laws only; default: trials.samples)",
    )
    parser.add_argument(
        "--dims",
        type=int,
        help="Largest carrier dimension (laws only; default: "
        "trials.max_dim)",
    )
    parser.add_argument(
        "--format",
        choices=["text", "json"],
        help="Report format; overrides report directives in the script",
    )
    parser.add_argument(
        "--output",
        type=Path,
        help="Write the report here instead of stdout",
    )
    parser.add_argument(
        "--config",
        type=Path,
        help="Configuration file (default: chulaws/config.yaml)",
    )
    parser.add_argument(
        "--workers",
        type=int,
        help="Thread-pool size for law trials (default: engine.workers)",
    )
    return parser


def _emit(
    report: Report,
    fmt: Optional[str],
    output: Optional[Path],
    directives: Optional[List] = None,
    base_dir: Optional[Path] = None,
) -> None:
    """Write the report where the options or directives ask for it."""
    if fmt is None and output is None and directives:
        for directive in directives:
            path = None
            if directive.path is not None:
                path = Path(directive.path)
                if not path.is_absolute() and base_dir is not None:
                    path = base_dir / path
            body = emit_report(report, directive.format, path)
            if path is None:
                sys.stdout.write(body.decode("utf-8"))
        return
    body = emit_report(report, fmt or "json", output)
    if output is None:
        sys.stdout.write(body.decode("utf-8"))


def _run_script(args, engine: LawEngine) -> Report:
    path = Path(args.target)
    text = path.read_text(encoding="utf-8")
    script = parse_program(text)
    interpreter = Interpreter(
        engine, seed=args.seed, workers=args.workers, version=__version__
    )
    report = interpreter.execute(script)
    _emit(report, args.format, args.output, script.reports, path.parent)
    return report


def _run_laws(args, engine: LawEngine) -> Report:
    target = args.target or "all"
    if target != "all":
        target = engine.registry.get(target).law_id
    flags = {}
    if args.samples is not None:
        flags["samples"] = args.samples
    if args.dims is not None:
        flags["dims"] = args.dims
    words = ["laws", target]
    words.extend(f"--{key} {value}" for key, value in flags.items())
    text = " ".join(words)
    interpreter = Interpreter(
        engine, seed=args.seed, workers=args.workers, version=__version__
    )
    report = Report(version=__version__, seed=args.seed)
    stmt = LawsStmt(1, 1, text, target=target, flags=flags)
    report.results.extend(interpreter.laws_entries(stmt))
    _emit(report, args.format, args.output)
    return report


def _run_replay(args, engine: LawEngine) -> Report:
    payload = load_report(Path(args.target), __version__)
    report = Report(
        version=__version__,
        seed=int(payload.get("seed", 0)),
        context=dict(payload.get("context", {})),
    )
    for number, raw in enumerate(replayable(payload), start=1):
        wanted = Counterexample.from_json(raw)
        report.results.append(
            replay_entry(
                engine,
                wanted,
                number,
                f"replay {wanted.law_id} {wanted.trial} "
                f"--seed {wanted.seed}",
            )
        )
    _emit(report, args.format, args.output)
    return report


def main(argv: Optional[List[str]] = None):
    """Main CLI entry point."""
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command in ("run", "replay") and not args.target:
        print(f"❌ {args.command} needs a path", file=sys.stderr)
        sys.exit(EXIT_INVALID)
    if args.workers is not None and args.workers < 1:
        print("❌ --workers must be at least 1", file=sys.stderr)
        sys.exit(EXIT_INVALID)

    try:
        engine = LawEngine(config_path=args.config)
        if args.command == "run":
            report = _run_script(args, engine)
        elif args.command == "laws":
            report = _run_laws(args, engine)
        else:
            report = _run_replay(args, engine)
    except ParseError as exc:
        print(f"❌ Parse error: {exc}", file=sys.stderr)
        sys.exit(EXIT_INVALID)
    except (ConfigError, RegistryError, IncompatibleReport) as exc:
        print(f"❌ {exc}", file=sys.stderr)
        sys.exit(EXIT_INVALID)
    except ReportWriteError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        sys.exit(EXIT_INVALID)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"❌ Cannot read {args.target}: {exc}", file=sys.stderr)
        sys.exit(EXIT_INVALID)

    # Exit with error code if blocked
    if engine.should_block(report.statuses()):
        sys.exit(EXIT_FAILED)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
