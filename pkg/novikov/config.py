"""
Configuration
=============
Environment-driven defaults (a ``.env`` file is honoured) and the validated
settings of one CLI run.

  NOVIKOV_CATALOG     catalog file                     catalog/novikov3.json
  NOVIKOV_OUT_DIR     report and DOT output directory  out
  NOVIKOV_JOBS        worker processes                 1
  NOVIKOV_LOG_LEVEL   root log level                   INFO
"""

import os
from pathlib import Path
from typing import List, Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, field_validator

load_dotenv()

CATALOG_PATH = Path(os.getenv("NOVIKOV_CATALOG", "catalog/novikov3.json"))
OUT_DIR      = Path(os.getenv("NOVIKOV_OUT_DIR", "out"))
JOBS         = int(os.getenv("NOVIKOV_JOBS", "1"))
LOG_LEVEL    = os.getenv("NOVIKOV_LOG_LEVEL", "INFO").upper()

ALL_TYPES = list(range(1, 14))


class RunConfig(BaseModel):
    catalog: Path = CATALOG_PATH
    out_dir: Path = OUT_DIR
    types: Optional[List[int]] = None        # None means every type
    samples: Optional[Path] = None
    jobs: int = JOBS
    format: Literal["text", "json"] = "json"

    @field_validator("catalog")
    @classmethod
    def _catalog_exists(cls, v: Path) -> Path:
        if not v.is_file():
            raise ValueError(f"catalog file not found: {v}")
        return v

    @field_validator("samples")
    @classmethod
    def _samples_exist(cls, v: Optional[Path]) -> Optional[Path]:
        if v is not None and not v.is_file():
            raise ValueError(f"samples file not found: {v}")
        return v

    @field_validator("types")
    @classmethod
    def _types_in_range(cls, v: Optional[List[int]]) -> Optional[List[int]]:
        if v is None:
            return v
        bad = [t for t in v if t not in ALL_TYPES]
        if bad:
            raise ValueError(f"types must be within 1..13, got {bad}")
        return sorted(set(v))

    @field_validator("jobs")
    @classmethod
    def _jobs_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("jobs must be >= 1")
        return v

    @property
    def selected_types(self) -> List[int]:
        return self.types if self.types is not None else ALL_TYPES

    def wants(self, type_: Optional[int]) -> bool:
        return self.types is None or type_ in self.types
