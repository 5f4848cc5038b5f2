"""
invariants: the full invariant battery for one instantiated family.
"""

import argparse
import logging
from typing import Dict, List

from novikov.algebra import StructureConstants, annihilator_dims, derivation_dim, is_complete, square_dim, trace_invariant
from novikov.catalog import Catalog, format_params
from novikov.conditions import TRACE_INDICES, jordan_algebra, lie_class_of_algebra
from novikov.config import RunConfig
from novikov.errors import CatalogError
from novikov.models.schemas import InvariantReport
from novikov.pipeline import write_report

logger = logging.getLogger(__name__)

NAME = "invariants"
HELP = "print every invariant of one family at given parameters"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("family", help="family name, e.g. E4 or B5")
    parser.add_argument("params", nargs="*", metavar="NAME=VALUE", help="parameter values, e.g. b=1/2")


def parse_params(items: List[str]) -> Dict[str, str]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise CatalogError(f"parameter {item!r} is not NAME=VALUE")
        out[name.strip()] = value.strip()
    return out


def invariant_report(catalog: Catalog, family: str, params: Dict[str, str]) -> InvariantReport:
    fam = catalog.family(family)
    values = fam.bind(params)
    S: StructureConstants = fam.instantiate(values)

    member_values = [v for m in catalog.orbit(family, values) for v in m.values()]
    gen = {}
    for w in catalog.weight_triples_for(member_values):
        gen[",".join(map(str, w))] = derivation_dim(S, w)

    traces = {}
    for kind in ("c", "d"):
        for i, j in TRACE_INDICES:
            q = trace_invariant(S, kind, i, j)
            traces[f"{kind}{i}{j}"] = None if q is None else str(q)

    return InvariantReport(
        family=family,
        params=format_params(values),
        der_dim=derivation_dim(S),
        gen_der_dims=gen,
        annihilators=list(annihilator_dims(S)),
        square_dim=square_dim(S),
        complete=is_complete(S),
        trace_invariants=traces,
        lie_class=str(lie_class_of_algebra(S)),
        jordan_associative=jordan_algebra(S)[1],
    )


def render_text(report: InvariantReport) -> str:
    head = report.family + (f" {report.params}" if report.params else "")
    lines = [
        head,
        f"  dim Der            {report.der_dim}",
        f"  annihilators       left {report.annihilators[0]}, right {report.annihilators[1]}",
        f"  dim A·A            {report.square_dim}",
        f"  complete           {report.complete}",
        f"  Lie class          {report.lie_class}",
        f"  Jordan associative {report.jordan_associative}",
    ]
    for w, d in report.gen_der_dims.items():
        lines.append(f"  dim Der_({w}){' ' * max(1, 12 - len(w))}{d}")
    for k, q in report.trace_invariants.items():
        lines.append(f"  {k[0]}_{k[1]},{k[2]}              {q if q is not None else 'undefined'}")
    return "\n".join(lines)


def run(cfg: RunConfig, catalog: Catalog, args: argparse.Namespace) -> int:
    report = invariant_report(catalog, args.family, parse_params(args.params))
    name = "invariants_" + args.family + "".join(f"_{k}{v}" for k, v in report.params.items())
    write_report(report, cfg.out_dir, name.replace("/", "over"))
    if cfg.format == "text":
        print(render_text(report))
    else:
        print(report.model_dump_json(indent=2))
    return 0
