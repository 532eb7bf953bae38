from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from apps.cli.commands import COMMANDS, execute
from packages.documents.reports import render
from packages.shared.config import configure_logging, load_settings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="solvco", description="Exact cohomology of solvmanifolds from Lie algebra data")
    parser.add_argument("command", choices=sorted(COMMANDS), help="What to compute")
    parser.add_argument("file", help="Input document (JSON)")
    parser.add_argument("--subtorus", default="auto", help="auto, closure, full or explicit:<file>")
    parser.add_argument("--pipeline", default="auto", choices=["auto", "dolbb", "split", "breve"], help="Hodge pipeline")
    parser.add_argument("--mode", default=None, choices=["abelian", "parallelizable", "general"], help="Shortcut for the breve pipeline")
    parser.add_argument("--emit", default=None, help="modify: write the modified algebra as a new document here")
    parser.add_argument("--json", dest="json_out", default=None, help="Also write the report to this file")
    parser.add_argument("--threads", type=int, default=None, help="Overrides SOLVCO_THREADS")
    parser.add_argument("--no-timing", action="store_true", help="Drop timing_seconds so reports are byte-identical")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    settings = load_settings()
    configure_logging(settings.log_level)
    args = build_parser().parse_args(argv)

    report = execute(
        args.command,
        args.file,
        subtorus=args.subtorus,
        pipeline=args.pipeline,
        mode=args.mode,
        emit=args.emit,
        threads=args.threads or settings.threads,
    )
    text = render(report, timing=not args.no_timing)
    if args.json_out:
        Path(args.json_out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
