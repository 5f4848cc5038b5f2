import json

import pytest

from novikov.main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main


def _run(command, catalog, out, *extra):
    return main([command, "--catalog", str(catalog), "--out", str(out), *extra])


def _family(raw, name):
    return next(f for f in raw["families"] if f["name"] == name)


def _witness(raw, wid):
    return next(w for w in raw["witnesses"] if w["id"] == wid)


# ──────────────────────────────────────────────
# verify-catalog
# ──────────────────────────────────────────────

def test_verify_catalog_type_filter_passes(catalog_file, tmp_path):
    assert _run("verify-catalog", catalog_file, tmp_path, "--types", "4") == EXIT_OK
    report = json.loads((tmp_path / "catalog_report.json").read_text(encoding="utf-8"))
    assert report["ok"] is True
    assert report["checks"] > 0
    assert report["failures"] == []


def test_verify_catalog_flags_corrupted_family(raw_catalog, write_catalog, tmp_path):
    # e1·e2 = e1 breaks left symmetry
    _family(raw_catalog, "A2")["products"] = {"12": {"1": "1"}}
    path = write_catalog(raw_catalog)

    assert _run("verify-catalog", path, tmp_path, "--types", "1") == EXIT_FAILED
    report = json.loads((tmp_path / "catalog_report.json").read_text(encoding="utf-8"))
    failed = {(f["family"], f["check"]) for f in report["failures"]}
    assert ("A2", "novikov") in failed
    assert all(family == "A2" for family, _ in failed)


def test_empty_catalog_is_trivially_ok(write_catalog, tmp_path):
    path = write_catalog({})
    assert _run("verify-catalog", path, tmp_path / "out") == EXIT_OK
    report = json.loads((tmp_path / "out" / "catalog_report.json").read_text(encoding="utf-8"))
    assert report == {"checks": 0, "failures": [], "ok": True, "schema_version": report["schema_version"]}


def test_verify_catalog_text_format(catalog_file, tmp_path, capsys):
    assert _run("verify-catalog", catalog_file, tmp_path, "--types", "4", "--format", "text") == EXIT_OK
    assert "0 failed" in capsys.readouterr().out


# ──────────────────────────────────────────────
# verify-degenerations
# ──────────────────────────────────────────────

def test_verify_degenerations_type_filter(catalog_file, tmp_path):
    assert _run("verify-degenerations", catalog_file, tmp_path, "--types", "4") == EXIT_OK
    report = json.loads((tmp_path / "degeneration_report.json").read_text(encoding="utf-8"))
    assert report["ok"] is True
    assert [s["witness"] for s in report["witnesses"]] == ["33"]
    assert report["witnesses"][0]["regime"] == "exact"


def test_verify_degenerations_reports_regimes(catalog_file, tmp_path, capsys):
    assert _run("verify-degenerations", catalog_file, tmp_path, "--types", "2", "--format", "text") == EXIT_OK
    report = json.loads((tmp_path / "degeneration_report.json").read_text(encoding="utf-8"))
    regimes = {s["witness"]: s["regime"] for s in report["witnesses"]}
    assert regimes["20"] == "exact"
    # B4(a) -> B5(a) along diag(1, t, t) holds identically in a
    assert regimes["21"] == "identity"
    assert " identity, " in capsys.readouterr().out


def test_verify_degenerations_localizes_corrupted_witness(raw_catalog, write_catalog, tmp_path):
    _witness(raw_catalog, "1")["matrix"] = [["t", "0", "0"], ["0", "t", "0"], ["0", "0", "1"]]
    path = write_catalog(raw_catalog)

    assert _run("verify-degenerations", path, tmp_path, "--types", "1") == EXIT_FAILED
    report = json.loads((tmp_path / "degeneration_report.json").read_text(encoding="utf-8"))
    assert {f["witness"] for f in report["failures"]} == {"1"}
    assert report["failures"][0]["status"] == "limit_mismatch"


# ──────────────────────────────────────────────
# invariants
# ──────────────────────────────────────────────

def test_invariants_text(catalog_file, tmp_path, capsys):
    assert _run("invariants", catalog_file, tmp_path, "E4", "--format", "text") == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("E4")
    assert "9/5" in out
    assert "dim Der            1" in out


def test_invariants_with_params_writes_report(catalog_file, tmp_path, capsys):
    assert _run("invariants", catalog_file, tmp_path, "B5", "b=1/2") == EXIT_OK
    report = json.loads((tmp_path / "invariants_B5_b1over2.json").read_text(encoding="utf-8"))
    assert report["der_dim"] == 6
    assert report["params"] == {"b": "1/2"}
    assert json.loads(capsys.readouterr().out)["family"] == "B5"


def test_invariants_generalized_derivation(catalog_file, tmp_path):
    assert _run("invariants", catalog_file, tmp_path, "C7", "c=-1") == EXIT_OK
    report = json.loads((tmp_path / "invariants_C7_c-1.json").read_text(encoding="utf-8"))
    assert report["gen_der_dims"]["1,1,0"] == 5


# ──────────────────────────────────────────────
# Input errors
# ──────────────────────────────────────────────

@pytest.mark.parametrize("argv", [
    ["invariants", "C7", "c=0"],
    ["invariants", "B5", "b"],
    ["invariants", "B5"],
    ["invariants", "Z9"],
])
def test_bad_invariant_requests_are_input_errors(catalog_file, tmp_path, argv):
    assert main(argv + ["--catalog", str(catalog_file), "--out", str(tmp_path)]) == EXIT_INPUT


def test_missing_catalog_is_input_error(tmp_path):
    assert _run("verify-catalog", tmp_path / "missing.json", tmp_path) == EXIT_INPUT


def test_malformed_catalog_is_input_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert _run("verify-catalog", path, tmp_path) == EXIT_INPUT


def test_bad_types_flag_exits(catalog_file, tmp_path):
    with pytest.raises(SystemExit):
        _run("verify-catalog", catalog_file, tmp_path, "--types", "x")


def test_out_of_range_type_is_input_error(catalog_file, tmp_path):
    assert _run("verify-catalog", catalog_file, tmp_path, "--types", "14") == EXIT_INPUT
