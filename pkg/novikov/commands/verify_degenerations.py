"""
verify-degenerations: run every witness at every admissible sample, then
check the necessary conditions along each verified proper degeneration.
"""

import argparse
import logging
from collections import Counter
from typing import List, NamedTuple, Optional, Tuple

from novikov.catalog import Catalog, Node, format_params
from novikov.config import RunConfig
from novikov.degeneration import (
    apply_witness,
    check_verified_pair,
    verification_regime,
    witness_ends,
    witness_samples,
)
from novikov.exactnum import Scalar
from novikov.models.schemas import DegenerationReport, WitnessRun, WitnessStatus, WitnessSummary
from novikov.pipeline import run_jobs, worker_catalog, write_report

logger = logging.getLogger(__name__)

NAME = "verify-degenerations"
HELP = "verify every witness by exact limit computation"

Job = Tuple[str, Tuple[Tuple[str, str], ...]]


class Outcome(NamedTuple):
    run: WitnessRun
    edge: Optional[Tuple[Node, Node]] = None


def add_arguments(parser: argparse.ArgumentParser) -> None:
    pass


def verify_sample(job: Job) -> Outcome:
    catalog = worker_catalog()
    wid, items = job
    w = catalog.witness(wid)
    sample = {k: Scalar.of(v) for k, v in items}
    result = apply_witness(catalog, w, sample)
    run = WitnessRun(
        witness=wid,
        sample=format_params(sample),
        status=WitnessStatus(result.status),
        limit=str(result.limit) if result.limit is not None else None,
        detail=result.detail,
    )
    if not result.verified:
        logger.warning(f"[#{wid} {run.sample}] {result.status}: {result.detail}")
        return Outcome(run)

    src, tgt = witness_ends(catalog, w, sample)
    a, b = catalog.node(w.source, src), catalog.node(w.target, tgt)
    if a == b:
        return Outcome(run)
    report = check_verified_pair(catalog, a, b)
    if not report.passed:
        run.status = WitnessStatus.failed
        run.failed_conditions = [v.check for v in report.failures]
        run.detail = "; ".join(f"{v.check}: {v.detail}" for v in report.failures)
        logger.warning(f"[#{wid} {run.sample}] necessary conditions fail: {run.detail}")
    else:
        logger.debug(f"[#{wid} {run.sample}] {a} -> {b} verified")
    return Outcome(run, (a, b))


def _failed_job(job: Job, exc: Exception) -> Outcome:
    wid, items = job
    return Outcome(WitnessRun(witness=wid, sample=dict(items), status=WitnessStatus.failed, detail=str(exc)))


def collect(cfg: RunConfig, catalog: Catalog) -> Tuple[DegenerationReport, List[Tuple[Node, Node]]]:
    """Verify the selected witnesses; returns the report and the verified proper edges."""
    logger.info("─── verify_degenerations started ───")
    witnesses = [w for w in catalog.witnesses if cfg.wants(w.type)]
    jobs: List[Job] = []
    summaries = {}
    sample_sets = {}
    failures: List[WitnessRun] = []
    for w in witnesses:
        samples = witness_samples(catalog, w)
        sample_sets[w.id] = samples
        summaries[w.id] = WitnessSummary(
            witness=w.id,
            type=w.type,
            regime="sampled" if w.is_parametric else "exact",
            samples=len(samples),
            verified=0,
        )
        if not samples:
            failures.append(WitnessRun(witness=w.id, sample={}, status=WitnessStatus.failed, detail="no admissible sample"))
        for s in samples:
            jobs.append((w.id, tuple((k, str(v)) for k, v in sorted(s.items()))))

    outcomes = run_jobs(verify_sample, jobs, _failed_job, catalog, cfg.jobs, cfg.catalog, cfg.samples)

    edges: List[Tuple[Node, Node]] = []
    for outcome in outcomes:
        run = outcome.run
        if run.status == WitnessStatus.verified:
            summaries[run.witness].verified += 1
            if outcome.edge is not None:
                edges.append(outcome.edge)
        else:
            failures.append(run)

    for w in witnesses:
        summary = summaries[w.id]
        if w.is_parametric and summary.samples and summary.verified == summary.samples:
            summary.regime = verification_regime(catalog, w, sample_sets[w.id])

    order = {w.id: i for i, w in enumerate(witnesses)}
    failures.sort(key=lambda r: (order.get(r.witness, -1), sorted(r.sample.items())))
    report = DegenerationReport(
        ok=not failures,
        witnesses=[summaries[w.id] for w in witnesses],
        failures=failures,
    )
    if failures:
        logger.error(f"Failing witnesses: {', '.join(sorted({f'#{r.witness}' for r in failures}))}")
    logger.info(f"─── verify_degenerations done: {len(jobs)} runs, {len(failures)} failed ───")
    return report, edges


def render_text(report: DegenerationReport) -> str:
    lines = [f"FAIL #{r.witness} {r.sample} {r.status.value}: {r.detail}" for r in report.failures]
    regimes = Counter(s.regime for s in report.witnesses)
    runs = sum(s.samples for s in report.witnesses)
    lines.append(
        f"{len(report.witnesses)} witnesses "
        f"({regimes['exact']} exact, {regimes['identity']} identity, {regimes['sampled']} sampled), "
        f"{runs} runs, {len(report.failures)} failed"
    )
    return "\n".join(lines)


def run(cfg: RunConfig, catalog: Catalog, args: argparse.Namespace) -> int:
    report, _ = collect(cfg, catalog)
    write_report(report, cfg.out_dir, "degeneration_report")
    if cfg.format == "text":
        print(render_text(report))
    return 0 if report.ok else 1
