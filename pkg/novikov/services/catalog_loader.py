"""
Catalog Loader
==============
Helpers for loading the catalog and sample-grid files from disk.

  catalog/novikov3.json   — the shipped catalog (families … diagrams)
  --samples PATH          — optional {family: [{param: value}, ...]} override
"""

import json
import logging
import os
from pathlib import Path
from typing import Dict, List

from pydantic import ValidationError

from novikov.errors import CatalogError
from novikov.models.schemas import SCHEMA_VERSION, CatalogModel

logger = logging.getLogger(__name__)

CATALOG_PATH = Path(os.getenv("NOVIKOV_CATALOG", "catalog/novikov3.json"))


def _read_json(path: Path, what: str):
    if not path.exists():
        raise CatalogError(f"{what} not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise CatalogError(f"{what} {path} is not valid JSON: {e}") from e


def load_catalog_model(path: Path | str = CATALOG_PATH) -> CatalogModel:
    """Parse and validate the catalog file; every failure becomes a CatalogError."""
    path = Path(path)
    raw = _read_json(path, "catalog")
    try:
        model = CatalogModel.model_validate(raw)
    except ValidationError as e:
        raise CatalogError(f"catalog {path} failed validation:\n{e}") from e
    if model.schema_version != SCHEMA_VERSION:
        raise CatalogError(
            f"catalog {path} has schema_version {model.schema_version}, "
            f"expected {SCHEMA_VERSION}"
        )
    logger.info(
        f"Catalog loaded from {path} — {len(model.families)} families, "
        f"{len(model.witnesses)} witnesses, {len(model.closure_tables)} closure tables."
    )
    return model


def load_sample_overrides(path: Path | str) -> Dict[str, List[Dict[str, str]]]:
    """
    Load a --samples file. Values stay as strings; the catalog parses them
    when the override is applied.
    """
    path = Path(path)
    raw = _read_json(path, "samples file")
    if not isinstance(raw, dict) or not all(
        isinstance(v, list) and all(isinstance(s, dict) for s in v) for v in raw.values()
    ):
        raise CatalogError(f"samples file {path} must map family names to lists of parameter maps")
    return {name: [{k: str(v) for k, v in s.items()} for s in samples] for name, samples in raw.items()}
