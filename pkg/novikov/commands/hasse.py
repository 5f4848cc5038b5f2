"""
hasse: verify the witnesses, build the degeneration order on the grid
nodes, cross-validate it against the closure tables and write one DOT file
per requested type.
"""

import argparse
import logging

from novikov.catalog import Catalog
from novikov.commands.verify_degenerations import collect
from novikov.config import RunConfig
from novikov.hasse import cross_validate, diagram_check, emit_dot
from novikov.models.schemas import HasseReport
from novikov.pipeline import write_report, write_text

logger = logging.getLogger(__name__)

NAME = "hasse"
HELP = "cross-validate the degeneration order and emit the type diagrams as DOT"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    pass


def build(cfg: RunConfig, catalog: Catalog) -> tuple[HasseReport | None, dict[int, str]]:
    """None when the witness stage already fails. The order always uses every witness; --types only selects output."""
    deg_report, edges = collect(cfg.model_copy(update={"types": None}), catalog)
    if not deg_report.ok:
        logger.error("Witness verification failed; the order is not built.")
        return None, {}

    logger.info("─── hasse started ───")
    nodes = set(catalog.all_nodes()) | {n for e in edges for n in e}
    result = cross_validate(catalog, edges, nodes)
    rel = result.relation

    checks, dots = [], {}
    for t in cfg.selected_types:
        diagram = catalog.diagrams.get(t)
        if diagram is None:
            continue
        checks.append(diagram_check(catalog, rel, diagram, rel.nodes))
        dots[t] = emit_dot(catalog, rel, diagram, rel.nodes)

    discrepancies = [d for d in result.discrepancies if cfg.types is None or d.type in cfg.types]
    report = HasseReport(
        ok=not discrepancies and all(c.ok for c in checks),
        nodes=len(rel.nodes),
        closure_edges=rel.closure.number_of_edges(),
        discrepancies=discrepancies,
        certificates=[c for c in result.certificates if cfg.wants(c.type)],
        manual=[c for c in result.manual if cfg.wants(c.type)],
        redundant_manual=[c for c in result.redundant_manual if cfg.wants(c.type)],
        unused_manual=[c for c in result.unused_manual if cfg.wants(c.type)],
        diagrams=checks,
        closures={a.label: sorted(b.label for b in rel.successors(a)) for a in rel.nodes},
    )
    logger.info(f"─── hasse done: {len(discrepancies)} discrepancies ───")
    return report, dots


def render_text(report: HasseReport) -> str:
    lines = [f"DISCREPANCY type {d.type}: {d.source} -> {d.target}: {d.problem}" for d in report.discrepancies]
    for check in report.diagrams:
        for e in check.missing:
            lines.append(f"DIAGRAM {check.type} missing {e.source} -> {e.target}")
        for e in check.extra:
            lines.append(f"DIAGRAM {check.type} extra {e.source} -> {e.target}")
        for e in check.flagged:
            lines.append(f"diagram {check.type} flagged {e.source} -> {e.target} (drawn without its restriction)")
    for c in report.redundant_manual:
        lines.append(f"manual {c.source} -> {c.target} also certified by {c.kind}")
    for c in report.unused_manual:
        lines.append(f"manual record {c.source} -> {c.target} (type {c.type}) names no pair of the run")
    lines.append(
        f"{report.nodes} nodes, {report.closure_edges} closure edges, "
        f"{len(report.certificates)} certified and {len(report.manual)} manual exclusions, "
        f"{len(report.discrepancies)} discrepancies"
    )
    return "\n".join(lines)


def run(cfg: RunConfig, catalog: Catalog, args: argparse.Namespace) -> int:
    report, dots = build(cfg, catalog)
    if report is None:
        return 1
    write_report(report, cfg.out_dir, "hasse_report")
    for t, text in sorted(dots.items()):
        write_text(text, cfg.out_dir, f"type{t:02d}.dot")
    if cfg.format == "text":
        print(render_text(report))
    return 0 if report.ok else 1
