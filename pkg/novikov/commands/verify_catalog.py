"""
verify-catalog: audit every family at every grid sample.

Checks per (family, sample): Novikov axioms, Lie class, tabulated dim Der,
the universal operator identity, every applicable iso rule, the stored
trace formulas, and that all members of the iso-class share their
invariants.
"""

import argparse
import logging
from typing import List, Tuple

from novikov.algebra import (
    annihilator_dims,
    check_novikov,
    derivation_dim,
    is_complete,
    square_dim,
    trace_invariant,
    verify_isomorphism,
)
from novikov.catalog import Catalog, format_params
from novikov.conditions import TRACE_INDICES, lie_class_of_algebra
from novikov.config import RunConfig
from novikov.errors import NotLie, Singular
from novikov.models.schemas import CatalogReport, CheckStatus, FamilyCheck
from novikov.operators import UNIVERSAL_IDENTITY, OpExpr, check_operator_identity
from novikov.pipeline import run_jobs, worker_catalog, write_report

logger = logging.getLogger(__name__)

NAME = "verify-catalog"
HELP = "check axioms, Lie classes, dim Der, iso rules and trace formulas at every sample"

Job = Tuple[str, int]


def add_arguments(parser: argparse.ArgumentParser) -> None:
    pass


# ──────────────────────────────────────────────
# One (family, sample)
# ──────────────────────────────────────────────

def _invariants(S) -> tuple:
    return (derivation_dim(S), annihilator_dims(S), square_dim(S), is_complete(S), lie_class_of_algebra(S))


def check_sample(job: Job) -> List[FamilyCheck]:
    catalog = worker_catalog()
    name, idx = job
    family = catalog.family(name)
    values = family.samples[idx]
    sample = format_params(values)
    checks: List[FamilyCheck] = []

    def record(check: str, ok: bool, detail: str | None = None) -> None:
        status = CheckStatus.ok if ok else CheckStatus.failed
        checks.append(FamilyCheck(family=name, sample=sample, check=check, status=status, detail=None if ok else detail))

    S = family.instantiate(values)

    violations = check_novikov(S)
    if violations:
        v = violations[0]
        record("novikov", False, f"identity ({v.identity}) fails on (e{v.i}, e{v.j}, e{v.k})")
    else:
        record("novikov", True)

    expected_lie = family.lie_class(values)
    try:
        computed = lie_class_of_algebra(S)
        record("lie", computed == expected_lie, f"computed {computed}, catalog says {expected_lie}")
    except NotLie as e:
        record("lie", False, str(e))

    der = derivation_dim(S)
    expected_der = family.expected_der_dim(values)
    record("der_table", der == expected_der, f"dim Der = {der}, the catalog says {expected_der}")

    universal = catalog.universal_identities() or [("universal", OpExpr.parse(UNIVERSAL_IDENTITY))]
    for ident, T in universal:
        record("universal_identity", check_operator_identity(S, T), f"{ident} does not vanish")

    for rule in catalog.iso_rules.get(name, []):
        partner = rule.partner(values)
        if partner is None or not family.is_admissible(partner):
            continue
        target = family.instantiate(partner)
        try:
            ok = verify_isomorphism(S, target, rule.matrix_at(values).invert())
            detail = f"matrix does not map {name}{sample} onto {name}{format_params(partner)}"
        except Singular:
            ok, detail = False, "iso matrix is singular"
        record("iso_rule", ok, detail)

    if family.trace_weights:
        for i, j in TRACE_INDICES:
            formula = family.trace_formula(values, i, j)
            computed = trace_invariant(S, "c", i, j)
            record(f"trace_formula c{i}{j}", formula == computed, f"formula {formula}, computed {computed}")

    node = catalog.node(name, values)
    mine = _invariants(S)
    for member in catalog.members(node):
        if member == values:
            continue
        other = _invariants(family.instantiate(member))
        record("iso_invariants", other == mine, f"member {format_params(member)} has different invariants")

    return checks


def _failed_job(job: Job, exc: Exception) -> List[FamilyCheck]:
    name, idx = job
    return [FamilyCheck(family=name, sample={"index": str(idx)}, check="error", status=CheckStatus.failed, detail=str(exc))]


# ──────────────────────────────────────────────
# Command
# ──────────────────────────────────────────────

def build_report(cfg: RunConfig, catalog: Catalog) -> CatalogReport:
    logger.info("─── verify_catalog started ───")
    families = catalog.families_for_types(cfg.types)
    jobs: List[Job] = [(f.name, idx) for f in families for idx in range(len(f.samples))]
    results = run_jobs(check_sample, jobs, _failed_job, catalog, cfg.jobs, cfg.catalog, cfg.samples)
    checks = [c for batch in results for c in batch]
    failures = [c for c in checks if c.status == CheckStatus.failed]
    failures.sort(key=lambda c: (c.family, sorted(c.sample.items()), c.check))
    report = CatalogReport(ok=not failures, checks=len(checks), failures=failures)
    if failures:
        first = failures[0]
        logger.error(f"[{first.family} {first.sample}] {first.check} failed: {first.detail}")
    logger.info(f"─── verify_catalog done: {len(checks)} checks, {len(failures)} failed ───")
    return report


def render_text(report: CatalogReport) -> str:
    lines = [f"FAIL {c.family} {c.sample} {c.check}: {c.detail}" for c in report.failures]
    lines.append(f"{report.checks} checks, {len(report.failures)} failed")
    return "\n".join(lines)


def run(cfg: RunConfig, catalog: Catalog, args: argparse.Namespace) -> int:
    report = build_report(cfg, catalog)
    write_report(report, cfg.out_dir, "catalog_report")
    if cfg.format == "text":
        print(render_text(report))
    return 0 if report.ok else 1
