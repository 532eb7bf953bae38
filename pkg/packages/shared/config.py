from __future__ import annotations

import logging
import os
from pathlib import Path

from pydantic import BaseModel, Field


PROJECT_ROOT = Path(__file__).resolve().parents[2]

DEFAULT_THREADS = int(os.getenv("SOLVCO_THREADS", "1"))
DEFAULT_LOG_LEVEL = os.getenv("SOLVCO_LOG_LEVEL", "WARNING")
DEFAULT_CORPUS_DIR = os.getenv("SOLVCO_CORPUS_DIR", str(PROJECT_ROOT / "corpus"))
DEFAULT_SUBSET_LIMIT = int(os.getenv("SOLVCO_SUBSET_LIMIT", "24"))

TOOLKIT_VERSION = "0.1.0"


class ToolkitSettings(BaseModel):
	threads: int = Field(default=1, ge=1, description="Worker cap for per-degree ranks and corpus regression")
	log_level: str = Field(default="WARNING", description="Root log level used by the CLI")
	corpus_dir: str = Field(default=str(PROJECT_ROOT / "corpus"), description="Directory holding the bundled examples")
	subset_limit: int = Field(default=24, ge=1, description="Largest weight count for 2^n subset-sum enumeration")


def load_settings() -> ToolkitSettings:
	"""Read SOLVCO_* variables from the environment (call load_dotenv() first in entry points)."""
	return ToolkitSettings(
		threads=max(1, int(os.getenv("SOLVCO_THREADS", str(DEFAULT_THREADS)))),
		log_level=os.getenv("SOLVCO_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
		corpus_dir=os.getenv("SOLVCO_CORPUS_DIR", DEFAULT_CORPUS_DIR),
		subset_limit=int(os.getenv("SOLVCO_SUBSET_LIMIT", str(DEFAULT_SUBSET_LIMIT))),
	)


def configure_logging(level: str) -> None:
	logging.basicConfig(
		level=getattr(logging, level.upper(), logging.WARNING),
		format="%(asctime)s %(levelname)s %(name)s: %(message)s",
	)


settings = load_settings()


__all__ = [
	"PROJECT_ROOT",
	"TOOLKIT_VERSION",
	"ToolkitSettings",
	"load_settings",
	"configure_logging",
	"settings",
]
