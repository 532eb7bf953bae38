from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Tuple

from dotenv import load_dotenv

# Ensure project root is on sys.path for `packages.*` imports
PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
	sys.path.insert(0, str(PROJECT_ROOT))

from apps.cli.commands import execute
from packages.documents.loader import load_document
from packages.documents.reports import RunReport
from packages.shared.config import configure_logging, load_settings
from packages.shared.errors import EXIT_INTERNAL, EXIT_INVALID_INPUT, SolvcoError

logger = logging.getLogger("run_corpus")

Job = Tuple[Path, str, Dict[str, Any]]


def plan(path: Path) -> List[Job]:
	"""Commands a document's expectations call for; validate always runs."""
	jobs: List[Job] = [(path, "validate", {})]
	try:
		expected = load_document(path).expectations
	except SolvcoError:
		return jobs
	if expected is None:
		return jobs
	if expected.betti is not None or expected.betti_g is not None or expected.betti_differs_from_g is not None:
		jobs.append((path, "betti", {"subtorus": expected.subtorus}))
	if expected.hodge is not None:
		for pipeline in expected.pipelines or ["auto"]:
			jobs.append((path, "hodge", {"pipeline": pipeline}))
	if expected.modified_nilpotent is not None or expected.holomorphic_mostow is not None:
		jobs.append((path, "modify", {"subtorus": expected.subtorus}))
	return jobs


def _explained_invalid(report: RunReport, path: Path) -> bool:
	"""A validate exit 2 is fine when the document expects the failing check."""
	try:
		expected = load_document(path).expectations
	except SolvcoError:
		return False
	if expected is None:
		return False
	return expected.valid is False or expected.integrable is False


def regressed(report: RunReport, path: Path) -> bool:
	if any(not c.passed for c in report.expectations):
		return True
	if report.exit_code == EXIT_INTERNAL:
		return True
	if report.command == "validate":
		return report.exit_code == EXIT_INVALID_INPUT and not _explained_invalid(report, path)
	return report.exit_code != 0


def run_job(job: Job, threads: int) -> Dict[str, Any]:
	path, command, options = job
	report = execute(command, path, threads=threads, **options)
	return {
		"document": path.name,
		"command": command,
		"options": options,
		"verdict": report.verdict,
		"exit_code": report.exit_code,
		"failed": [c.name for c in report.expectations if not c.passed],
		"regressed": regressed(report, path),
		"timing_seconds": report.timing_seconds,
	}


def main() -> None:
	load_dotenv()
	settings = load_settings()
	configure_logging(settings.log_level)
	parser = argparse.ArgumentParser(description="Run every corpus document against its recorded expectations")
	parser.add_argument("--path", default=settings.corpus_dir, help="Corpus directory or a single document")
	parser.add_argument("--workers", type=int, default=settings.threads, help="Documents processed in parallel")
	parser.add_argument("--skip", action="append", default=[], help="Document stem to skip; repeatable")
	args = parser.parse_args()

	root = Path(args.path)
	files = [root] if root.is_file() else sorted(root.glob("*.json"))
	files = [f for f in files if f.stem not in args.skip]
	jobs = [job for f in files for job in plan(f)]
	if not jobs:
		print(json.dumps({"documents": 0, "message": "No documents found"}))
		return

	# one worker per job; exterior-power ranks stay single-threaded underneath
	with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
		results = list(pool.map(lambda job: run_job(job, 1), jobs))

	failures = [r for r in results if r["regressed"]]
	for r in failures:
		logger.error("regression: %s %s %s", r["document"], r["command"], r["failed"] or r["verdict"])
	print(
		json.dumps(
			{
				"documents": len(files),
				"runs": len(results),
				"regressions": len(failures),
				"results": results,
			},
			indent=2,
			sort_keys=True,
		)
	)
	sys.exit(1 if failures else 0)


if __name__ == "__main__":
	main()
