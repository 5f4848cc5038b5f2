import json

import pytest
from pydantic import BaseModel, ValidationError

from novikov.commands.verify_catalog import check_sample
from novikov.config import ALL_TYPES, RunConfig
from novikov.pipeline import run_jobs, worker_catalog, write_report, write_text


class Sample(BaseModel):
    zeta: int
    alpha: str


def _family_of(job):
    return worker_catalog().family(job).letter


def _explode(job):
    if job == "bad":
        raise ValueError("boom")
    return job.upper()


# ──────────────────────────────────────────────
# Config
# ──────────────────────────────────────────────

def test_run_config_validation(catalog_file, tmp_path):
    cfg = RunConfig(catalog=catalog_file, out_dir=tmp_path, types=[3, 1, 3])
    assert cfg.types == [1, 3]
    assert cfg.wants(1) and not cfg.wants(2)
    assert cfg.selected_types == [1, 3]

    everything = RunConfig(catalog=catalog_file)
    assert everything.selected_types == ALL_TYPES
    assert everything.wants(None)


@pytest.mark.parametrize("overrides", [
    {"types": [14]},
    {"types": [0]},
    {"jobs": 0},
    {"format": "yaml"},
])
def test_run_config_rejects_bad_values(catalog_file, overrides):
    with pytest.raises(ValidationError):
        RunConfig(catalog=catalog_file, **overrides)


def test_run_config_requires_existing_files(tmp_path, catalog_file):
    with pytest.raises(ValidationError):
        RunConfig(catalog=tmp_path / "missing.json")
    with pytest.raises(ValidationError):
        RunConfig(catalog=catalog_file, samples=tmp_path / "missing.json")


# ──────────────────────────────────────────────
# Jobs
# ──────────────────────────────────────────────

def test_run_jobs_inline(catalog):
    results = run_jobs(_family_of, ["A4", "B5", "E1"], lambda job, exc: None, catalog)
    assert results == ["A", "B", "E"]


def test_run_jobs_maps_errors(catalog):
    results = run_jobs(_explode, ["x", "bad", "y"], lambda job, exc: f"failed: {exc}", catalog)
    assert results == ["X", "failed: boom", "Y"]


def test_run_jobs_on_worker_processes(catalog, catalog_file):
    jobs = [("A4", 0), ("A5", 0), ("B5", 1)]
    inline = run_jobs(check_sample, jobs, lambda job, exc: [], catalog)
    pooled = run_jobs(check_sample, jobs, lambda job, exc: [], catalog, workers=2, catalog_path=catalog_file)
    assert pooled == inline
    assert all(c.status.value == "ok" for batch in pooled for c in batch)


# ──────────────────────────────────────────────
# Reports
# ──────────────────────────────────────────────

def test_write_report_is_sorted_json(tmp_path):
    path = write_report(Sample(zeta=1, alpha="a"), tmp_path / "out", "sample")
    text = path.read_text(encoding="utf-8")
    assert path.name == "sample.json"
    assert text.endswith("\n")
    assert text.index('"alpha"') < text.index('"zeta"')
    assert json.loads(text) == {"alpha": "a", "zeta": 1}
    assert not list((tmp_path / "out").glob("*.tmp"))


def test_write_text_replaces_existing_file(tmp_path):
    write_text("first", tmp_path, "type01.dot")
    path = write_text("second", tmp_path, "type01.dot")
    assert path.read_text(encoding="utf-8") == "second"
