"""
Hasse
=====
The degeneration order on iso-class nodes: closure of verified edges,
transitive reduction, cross-validation against the closure tables and the
stored diagram patterns, and DOT output.

Nodes are canonical ``catalog.Node`` values, so isomorphic members of a
family collapse before any edge is added. Self-loops never enter a graph;
the order is reflexive by convention.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Set, Tuple

import networkx as nx
from graphviz import Digraph

from novikov.algebra import derivation_dim
from novikov.catalog import Catalog, Node, conditions_hold
from novikov.certificates import Certificate
from novikov.degeneration import certify_pair
from novikov.errors import CycleDetected
from novikov.models.schemas import (
    CertificateKind,
    DiagramCheck,
    DiagramEdgeReport,
    DiagramModel,
    Discrepancy,
    EdgeStyle,
    ObstructionModel,
    PairCertificate,
)

logger = logging.getLogger(__name__)

Edge = Tuple[Node, Node]


def _sorted_nodes(nodes: Iterable[Node]) -> List[Node]:
    return sorted(nodes, key=Node.sort_key)


def _sorted_edges(edges: Iterable[Edge]) -> List[Edge]:
    return sorted(edges, key=lambda e: (e[0].sort_key(), e[1].sort_key()))


@dataclass
class HasseRelation:
    graph: nx.DiGraph
    closure: nx.DiGraph

    @property
    def nodes(self) -> List[Node]:
        return _sorted_nodes(self.graph.nodes)

    def reaches(self, a: Node, b: Node) -> bool:
        return a == b or self.closure.has_edge(a, b)

    def successors(self, a: Node) -> Set[Node]:
        return set(self.closure.successors(a)) if a in self.closure else set()

    def closure_edges(self) -> List[Edge]:
        return _sorted_edges(self.closure.edges)


# ──────────────────────────────────────────────
# Closure and reduction
# ──────────────────────────────────────────────

def closure_from_edges(edges: Iterable[Edge], nodes: Iterable[Node] = ()) -> HasseRelation:
    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from((a, b) for a, b in edges if a != b)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        pass
    else:
        raise CycleDetected([u for u, _ in cycle] + [cycle[-1][1]])
    return HasseRelation(graph, nx.transitive_closure_dag(graph))


def transitive_reduction(rel: HasseRelation, nodes: Iterable[Node] | None = None) -> Set[Edge]:
    """Hasse edges of the closure, optionally restricted to a node subset."""
    closure = rel.closure if nodes is None else rel.closure.subgraph(nodes)
    return set(nx.transitive_reduction(closure).edges)


# ──────────────────────────────────────────────
# Cross-validation
# ──────────────────────────────────────────────

def expected_boundary(catalog: Catalog, node: Node, pool: Sequence[Node]) -> Set[Node]:
    """Orbit-closure boundary of ``node`` according to the closure tables."""
    out: Set[Node] = set()
    for table in catalog.closure_tables.values():
        for row in table.rows:
            if row.source.family != node.family:
                continue
            for m in catalog.members(node):
                if not conditions_hold(row.source.when, m):
                    continue
                for target in row.targets:
                    out.update(catalog.target_instances(target, m, pool))
    out.discard(node)
    return out


@dataclass
class CrossValidation:
    relation: HasseRelation
    discrepancies: List[Discrepancy] = field(default_factory=list)
    certificates: List[PairCertificate] = field(default_factory=list)
    manual: List[PairCertificate] = field(default_factory=list)
    redundant_manual: List[PairCertificate] = field(default_factory=list)
    unused_manual: List[PairCertificate] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def _pair_certificate(catalog: Catalog, a: Node, b: Node, kind: str, detail: str) -> PairCertificate:
    return PairCertificate(source=a.label, target=b.label, type=catalog.pair_type(a, b), kind=kind, detail=detail)


def _transitivity(rel: HasseRelation, blocked: Set[Edge], pending: Set[Edge]) -> Dict[Edge, str]:
    """Pairs ruled out because a degeneration would contradict an already excluded pair."""
    derived: Dict[Edge, str] = {}
    changed = True
    while changed:
        changed = False
        for a, b in _sorted_edges(pending - set(derived)):
            reason = None
            for c in _sorted_nodes(rel.successors(b)):
                if (a, c) in blocked:
                    reason = f"{a} ↛ {c} but {b} -> {c}"
                    break
            if reason is None:
                for c in _sorted_nodes(rel.closure.predecessors(a)):
                    if (c, b) in blocked:
                        reason = f"{c} -> {a} but {c} ↛ {b}"
                        break
            if reason:
                derived[(a, b)] = reason
                blocked.add((a, b))
                changed = True
    return derived


def _manual_records(catalog: Catalog, pool: Sequence[Node]) -> List[ObstructionModel]:
    """Manual records whose two families both occur in the pool."""
    families = {n.family for n in pool}
    return [
        o for o in catalog.obstructions
        if o.kind == CertificateKind.manual and o.source.family in families and o.target.family in families
    ]


def cross_validate(catalog: Catalog, edges: Iterable[Edge], nodes: Iterable[Node]) -> CrossValidation:
    """
    Compare the witness closure with the closure tables on ``nodes`` and
    certify every pair outside the closure.

    Manual records are audited too: one naming a pair the closure reaches
    is a discrepancy, and the report lists those whose pairs also have a
    machine certificate and those that name no pair of the pool.
    """
    pool = _sorted_nodes(set(nodes))
    rel = closure_from_edges(edges, pool)
    result = CrossValidation(rel)
    manual_records = _manual_records(catalog, pool)
    used: Set[int] = set()

    def problem(a: Node, b: Node, text: str) -> None:
        result.discrepancies.append(Discrepancy(type=catalog.pair_type(a, b), source=a.label, target=b.label, problem=text))

    def manual_for(a: Node, b: Node) -> List[ObstructionModel]:
        hits = [i for i, o in enumerate(manual_records) if catalog.pair_matches(o.source, o.target, a, b)]
        used.update(hits)
        return [manual_records[i] for i in hits]

    for a, b in rel.closure_edges():
        if derivation_dim(catalog.instantiate_node(a)) >= derivation_dim(catalog.instantiate_node(b)):
            problem(a, b, "closure edge does not increase dim Der")
        if manual_for(a, b):
            problem(a, b, "manual record excludes a pair the witness closure reaches")

    pending: Set[Edge] = set()
    for a in pool:
        expected = expected_boundary(catalog, a, pool)
        reached = rel.successors(a)
        for b in pool:
            if b == a:
                continue
            if b in reached and b not in expected:
                problem(a, b, "witness closure reaches the target but the closure table does not list it")
            elif b in expected and b not in reached:
                problem(a, b, "closure table lists the target but no verified witness chain reaches it")
            elif b not in reached:
                pending.add((a, b))

    blocked: Set[Edge] = set()
    manual: Dict[Edge, str] = {}
    for a, b in _sorted_edges(pending):
        records = [o for o in catalog.obstructions_for(a, b) if o.kind != CertificateKind.manual]
        notes = [r.note or "" for r in manual_for(a, b)]
        verdict = certify_pair(catalog, a, b, records)
        for kind in verdict.failed_hints:
            problem(a, b, f"recorded {kind} certificate does not check")
        cert: Certificate | None = verdict.certificate
        if cert:
            result.certificates.append(_pair_certificate(catalog, a, b, cert.kind, cert.detail))
            blocked.add((a, b))
            if notes:
                result.redundant_manual.append(_pair_certificate(catalog, a, b, cert.kind, notes[0]))
            continue
        if notes:
            manual[(a, b)] = notes[0]
            blocked.add((a, b))

    remaining = pending - blocked
    derived = _transitivity(rel, blocked, remaining)
    for (a, b), reason in derived.items():
        result.certificates.append(_pair_certificate(catalog, a, b, CertificateKind.transitivity.value, reason))
    for (a, b), note in manual.items():
        result.manual.append(_pair_certificate(catalog, a, b, CertificateKind.manual.value, note))

    for a, b in _sorted_edges(remaining - set(derived)):
        problem(a, b, "no certificate and no manual record for the excluded pair")

    for i, o in enumerate(manual_records):
        if i not in used:
            result.unused_manual.append(
                PairCertificate(source=o.source.family, target=o.target.family, type=o.type, kind=o.kind.value, detail=o.note or "")
            )

    result.certificates.sort(key=lambda c: (c.source, c.target))
    result.manual.sort(key=lambda c: (c.source, c.target))
    result.redundant_manual.sort(key=lambda c: (c.source, c.target))
    result.discrepancies.sort(key=lambda d: (d.source, d.target, d.problem))
    logger.info(
        f"Cross-validation: {len(pool)} nodes, {rel.closure.number_of_edges()} closure edges, "
        f"{len(result.certificates)} certified, {len(result.manual)} manual "
        f"({len(result.redundant_manual)} also certified, {len(result.unused_manual)} unused), "
        f"{len(result.discrepancies)} discrepancies."
    )
    return result


# ──────────────────────────────────────────────
# Diagrams
# ──────────────────────────────────────────────

def diagram_nodes(catalog: Catalog, diagram: DiagramModel, pool: Iterable[Node]) -> List[Node]:
    return _sorted_nodes(n for n in pool if any(catalog.node_matches(n, ref) for ref in diagram.nodes))


def diagram_instances(catalog: Catalog, diagram: DiagramModel, nodes: Sequence[Node]) -> Dict[Edge, Tuple[EdgeStyle, bool]]:
    """Every instantiated edge of the stored pattern: (style, omits_restrictions)."""
    out: Dict[Edge, Tuple[EdgeStyle, bool]] = {}
    for pattern in diagram.edges:
        for a in nodes:
            if a.family != pattern.source.family:
                continue
            for m in catalog.members(a):
                if not conditions_hold(pattern.source.when, m):
                    continue
                for b in catalog.target_instances(pattern.target, m, nodes):
                    if b != a:
                        out.setdefault((a, b), (pattern.style, pattern.omits_restrictions))
    return out


def _edge_report(e: Edge, style: EdgeStyle | str) -> DiagramEdgeReport:
    return DiagramEdgeReport(source=e[0].label, target=e[1].label, style=EdgeStyle(style).value)


def edge_styles(catalog: Catalog, diagram: DiagramModel, reduction: Iterable[Edge], instances: Dict[Edge, Tuple[EdgeStyle, bool]]) -> Dict[Edge, EdgeStyle]:
    styles = {}
    for a, b in reduction:
        if (a, b) in instances:
            styles[(a, b)] = instances[(a, b)][0]
        else:
            styles[(a, b)] = EdgeStyle.new if catalog.pair_type(a, b) == diagram.type else EdgeStyle.given
    return styles


def diagram_check(catalog: Catalog, rel: HasseRelation, diagram: DiagramModel, pool: Iterable[Node]) -> DiagramCheck:
    nodes = diagram_nodes(catalog, diagram, pool)
    reduction = transitive_reduction(rel, nodes)
    instances = diagram_instances(catalog, diagram, nodes)
    styles = edge_styles(catalog, diagram, reduction, instances)

    missing = [_edge_report(e, styles[e]) for e in _sorted_edges(reduction - set(instances))]
    extra, flagged = [], []
    for e in _sorted_edges(set(instances) - reduction):
        style, omits = instances[e]
        (flagged if omits else extra).append(_edge_report(e, style))
    check = DiagramCheck(type=diagram.type, ok=not missing and not extra, missing=missing, extra=extra, flagged=flagged)
    if not check.ok:
        logger.warning(f"[type {diagram.type}] diagram differs: {len(missing)} missing, {len(extra)} extra edges")
    return check


def emit_dot(catalog: Catalog, rel: HasseRelation, diagram: DiagramModel, pool: Iterable[Node]) -> str:
    """One digraph, nodes ranked by dim Der, solid edges new and dashed edges given before."""
    nodes = diagram_nodes(catalog, diagram, pool)
    reduction = transitive_reduction(rel, nodes)
    styles = edge_styles(catalog, diagram, reduction, diagram_instances(catalog, diagram, nodes))

    dot = Digraph(name=f"type{diagram.type}", comment=diagram.title)
    dot.attr(rankdir="TB")
    ranks: Dict[int, List[Node]] = {}
    for n in nodes:
        ranks.setdefault(derivation_dim(catalog.instantiate_node(n)), []).append(n)
    for der in sorted(ranks):
        with dot.subgraph(name=f"rank{der}") as sub:
            sub.attr(rank="same")
            for n in ranks[der]:
                sub.node(n.label, f"{n.label}\\ndim Der = {der}")
    for a, b in _sorted_edges(reduction):
        dot.edge(a.label, b.label, style="solid" if styles[(a, b)] == EdgeStyle.new else "dashed")
    return dot.source
