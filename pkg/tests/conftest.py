import json
from pathlib import Path

import pytest

from novikov.catalog import Catalog

REPO_ROOT = Path(__file__).resolve().parent.parent
CATALOG_FILE = REPO_ROOT / "catalog" / "novikov3.json"


@pytest.fixture(scope="session")
def catalog() -> Catalog:
    return Catalog.load(CATALOG_FILE)


@pytest.fixture
def raw_catalog() -> dict:
    with open(CATALOG_FILE, encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture
def write_catalog(tmp_path):
    """Write a (mutated) catalog dict to a temp file and return its path."""
    def _write(data: dict, name: str = "catalog.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path
    return _write


@pytest.fixture(scope="session")
def catalog_file() -> Path:
    return CATALOG_FILE
