"""
Whole-catalog sweeps. Each one walks every family sample or every witness,
so they are marked slow: ``pytest -m "not slow"`` skips them.
"""

import json
import random
from pathlib import Path

import pytest

from novikov.algebra import (
    annihilator_dims,
    derivation_dim,
    is_complete,
    is_novikov,
    square_dim,
    trace_invariant,
    transport,
)
from novikov.commands.hasse import build
from novikov.commands.verify_catalog import build_report
from novikov.commands.verify_degenerations import collect
from novikov.conditions import lie_class_of_algebra
from novikov.config import RunConfig
from novikov.exactnum import Scalar
from novikov.linalg import Matrix
from novikov.main import EXIT_FAILED, EXIT_OK, main

pytestmark = pytest.mark.slow

CATALOG_FILE = Path(__file__).resolve().parent.parent / "catalog" / "novikov3.json"
FAMILY_NAMES = [f["name"] for f in json.loads(CATALOG_FILE.read_text(encoding="utf-8"))["families"]]
BASIS_CHANGES = 100


@pytest.fixture
def cfg(catalog_file, tmp_path) -> RunConfig:
    return RunConfig(catalog=catalog_file, out_dir=tmp_path)


def test_every_family_sample_passes(cfg, catalog):
    report = build_report(cfg, catalog)
    assert report.failures == []
    assert report.ok


def test_every_witness_verifies(cfg, catalog):
    report, edges = collect(cfg, catalog)
    assert report.failures == []
    assert all(s.verified == s.samples for s in report.witnesses)
    assert edges


def test_order_matches_closure_tables_and_diagrams(cfg, catalog):
    report, dots = build(cfg, catalog)
    assert report is not None
    assert report.discrepancies == []
    assert all(check.ok for check in report.diagrams)
    assert sorted(dots) == list(range(1, 14))


def test_hasse_command_writes_one_dot_per_type(catalog_file, tmp_path):
    argv = ["hasse", "--catalog", str(catalog_file), "--out", str(tmp_path), "--types", "1"]
    assert main(argv) == EXIT_OK
    assert sorted(p.name for p in tmp_path.glob("*.dot")) == ["type01.dot"]
    assert json.loads((tmp_path / "hasse_report.json").read_text(encoding="utf-8"))["ok"] is True


def test_corrupted_closure_table_is_localized(raw_catalog, write_catalog, tmp_path):
    table = next(t for t in raw_catalog["closure_tables"] if t["type"] == 1)
    row = next(r for r in table["rows"] if r["source"]["family"] == "A5")
    row["targets"].append({"family": "A2"})
    path = write_catalog(raw_catalog)

    argv = ["hasse", "--catalog", str(path), "--out", str(tmp_path / "out"), "--types", "1"]
    assert main(argv) == EXIT_FAILED
    report = json.loads((tmp_path / "out" / "hasse_report.json").read_text(encoding="utf-8"))
    assert {(d["source"], d["target"]) for d in report["discrepancies"]} == {("A5", "A2")}


def test_failed_recorded_certificate_fails_the_run(raw_catalog, write_catalog, tmp_path):
    record = next(
        o for o in raw_catalog["obstructions"]
        if o["source"]["family"] == "A7" and o["target"]["family"] == "A2"
    )
    record["kind"], record["payload"] = "gen_der_dim", {"weights": "1,1,1"}
    path = write_catalog(raw_catalog)

    argv = ["hasse", "--catalog", str(path), "--out", str(tmp_path / "out"), "--types", "1"]
    assert main(argv) == EXIT_FAILED
    report = json.loads((tmp_path / "out" / "hasse_report.json").read_text(encoding="utf-8"))
    assert [(d["source"], d["target"], d["problem"]) for d in report["discrepancies"]] == [
        ("A7", "A2", "recorded gen_der_dim certificate does not check"),
    ]


def test_trace_invariant_closed_form(catalog):
    for a in ("1", "2", "1/3", "-2"):
        S = catalog.instantiate("D2", {"a": a})
        al = Scalar.of(a)
        expected = (3 * al + 2) * (3 * al + 2) / (al * al + 2 * (al + 1) * (al + 1))
        assert trace_invariant(S, "c", 1, 1) == expected
    assert trace_invariant(catalog.instantiate("D2", {"a": "1"}), "c", 1, 1) == Scalar.of("25/9")


def _invariants(S) -> tuple:
    return (
        derivation_dim(S), annihilator_dims(S), square_dim(S), is_complete(S),
        lie_class_of_algebra(S), trace_invariant(S, "c", 1, 1), trace_invariant(S, "d", 1, 1),
    )


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_invariants_survive_random_basis_change(catalog, name):
    rng = random.Random(f"basis-change-{name}")

    def invertible() -> Matrix:
        while True:
            m = Matrix([[Scalar(rng.randint(-3, 3), rng.randint(-1, 1)) for _ in range(3)] for _ in range(3)])
            if m.det():
                return m

    family = catalog.family(name)
    for values in family.samples:
        S = family.instantiate(values)
        expected = _invariants(S)
        for step in range(BASIS_CHANGES):
            g = invertible()
            T = transport(S, g)
            assert is_novikov(T)
            if step % 10 == 0:
                h = invertible()
                assert transport(T, h) == transport(S, h @ g)
            assert _invariants(T) == expected, f"{name} {values} change #{step}"
