"""
Catalog
=======
The classification as data: families with their product tables, parameter
grids, isomorphism rules, operator identities, closure tables, hint records,
witnesses and diagram patterns.

Everything here is read-only after load. Parameter values are ``Scalar``;
a parameter map is a plain ``{name: Scalar}`` dict at the API surface and a
``((name, Scalar), ...)`` tuple wherever it has to be hashable.

Conditions are strings ``"lhs == rhs"`` or ``"lhs != rhs"`` in the symring
grammar; a list of conditions holds when every one does.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence

from novikov.algebra import StructureConstants
from novikov.errors import CatalogError, DivisionByZero, InadmissibleParameter, NovikovError
from novikov.exactnum import ZERO, Scalar
from novikov.lie import LieClass, LieTag
from novikov.linalg import Matrix
from novikov.models.schemas import (
    CatalogModel,
    ClosureTableModel,
    DiagramModel,
    FamilyModel,
    NodeRef,
    ObstructionModel,
    OperatorIdentityModel,
    TargetRef,
    WitnessModel,
)
from novikov.operators import OpExpr
from novikov.services.catalog_loader import CATALOG_PATH, load_catalog_model, load_sample_overrides
from novikov.symring import F, Expr, parse_expr

logger = logging.getLogger(__name__)

Params = tuple  # ((name, Scalar), ...) in the family's parameter order

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

# (source letter, target letter) -> type number of the Lie-level grouping
PAIR_TYPES: Dict[tuple[str, str], int] = {
    ("A", "A"): 1,  ("B", "B"): 2,  ("C", "C"): 3,  ("D", "D"): 4,  ("E", "E"): 5,
    ("C", "B"): 6,  ("B", "A"): 7,  ("C", "A"): 8,
    ("E", "B"): 9,  ("E", "A"): 10,
    ("D", "B"): 11, ("D", "E"): 12, ("D", "A"): 13,
}


# ──────────────────────────────────────────────
# Expressions and conditions
# ──────────────────────────────────────────────

@lru_cache(maxsize=None)
def _parsed(text: str, symbols: tuple[str, ...]) -> Expr:
    return parse_expr(text, symbols)


def free_symbols(text: str) -> set[str]:
    """Identifiers in an expression other than t and i."""
    return set(_NAME.findall(text)) - {"t", "i"}


def eval_scalar(text: str, bindings: Mapping[str, Scalar]) -> Scalar:
    return _parsed(text, tuple(sorted(bindings))).scalar(bindings)


def eval_in_t(text: str, bindings: Mapping[str, Scalar]):
    """Parse an entry of a witness matrix into a RatFun with parameters bound."""
    symbols = tuple(sorted(set(bindings) | {"t"}))
    return _parsed(text, symbols).evaluate(bindings)


def fold_expr(text: str, bindings: Mapping[str, F], num: Callable[[Scalar], F]) -> F:
    """Evaluate ``text`` in any field: constants through ``num``, names from ``bindings``."""
    return _parsed(text, tuple(sorted(bindings))).fold(num, bindings.__getitem__)


def _split_condition(cond: str) -> tuple[str, str, str]:
    for op in ("==", "!="):
        if op in cond:
            lhs, rhs = cond.split(op, 1)
            return lhs.strip(), op, rhs.strip()
    raise CatalogError(f"condition {cond!r} is neither 'lhs == rhs' nor 'lhs != rhs'")


def condition_holds(cond: str, bindings: Mapping[str, Scalar]) -> bool:
    lhs, op, rhs = _split_condition(cond)
    try:
        diff = eval_scalar(f"({lhs})-({rhs})", bindings)
    except DivisionByZero:
        return False
    return (diff == ZERO) == (op == "==")


def conditions_hold(conds: Iterable[str], bindings: Mapping[str, Scalar]) -> bool:
    return all(condition_holds(c, bindings) for c in conds)


def failed_conditions(conds: Iterable[str], bindings: Mapping[str, Scalar]) -> List[str]:
    return [c for c in conds if not condition_holds(c, bindings)]


def format_params(params: Mapping[str, Scalar] | Params) -> Dict[str, str]:
    items = params.items() if isinstance(params, Mapping) else params
    return {k: str(v) for k, v in items}


# ──────────────────────────────────────────────
# Nodes
# ──────────────────────────────────────────────

class Node(NamedTuple):
    """One iso-class of an instantiated family, by its canonical parameters."""
    family: str
    params: Params = ()

    @property
    def values(self) -> Dict[str, Scalar]:
        return dict(self.params)

    @property
    def label(self) -> str:
        if not self.params:
            return self.family
        if len(self.params) == 1:
            return f"{self.family}({self.params[0][1]})"
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}({inner})"

    def sort_key(self) -> tuple:
        return (family_sort_key(self.family), tuple(v.sort_key() for _, v in self.params))

    def __str__(self) -> str:
        return self.label


def family_sort_key(name: str) -> tuple:
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else 0)


# ──────────────────────────────────────────────
# Families
# ──────────────────────────────────────────────

@dataclass(eq=False)
class Family:
    name: str
    letter: str
    params: tuple[str, ...]
    exclusions: tuple[str, ...]
    products: Dict[tuple[int, int], Dict[int, str]]
    lie_tag: LieTag
    lie_lam: Optional[str]
    der_rules: List[tuple[tuple[str, ...], int]]
    samples: List[Dict[str, Scalar]]
    trace_weights: Optional[tuple[str, ...]] = None

    @classmethod
    def from_model(cls, m: FamilyModel) -> "Family":
        products = {}
        for key, vec in m.products.items():
            products[(int(key[0]), int(key[1]))] = {int(k): v for k, v in vec.items()}
        family = cls(
            name=m.name,
            letter=m.letter,
            params=tuple(m.params),
            exclusions=tuple(m.exclusions),
            products=products,
            lie_tag=LieTag(m.lie.tag.value),
            lie_lam=m.lie.lam,
            der_rules=[(tuple(r.when), r.value) for r in m.der_dim],
            samples=[],
            trace_weights=tuple(m.trace_weights) if m.trace_weights else None,
        )
        family.samples = [family.bind(s) for s in m.samples]
        return family

    def bind(self, raw: Mapping[str, object]) -> Dict[str, Scalar]:
        """Parameter map in declaration order; names must match exactly."""
        if set(raw) != set(self.params):
            raise CatalogError(
                f"{self.name} takes parameters {list(self.params)}, got {sorted(raw)}"
            )
        out = {}
        for p in self.params:
            out[p] = Scalar.of(raw[p])
        return out

    def key(self, values: Mapping[str, Scalar]) -> Params:
        return tuple((p, values[p]) for p in self.params)

    def check_admissible(self, values: Mapping[str, Scalar]) -> None:
        for excl in self.exclusions:
            if not condition_holds(excl, values):
                raise InadmissibleParameter(self.name, excl)

    def is_admissible(self, values: Mapping[str, Scalar]) -> bool:
        return all(condition_holds(e, values) for e in self.exclusions)

    def instantiate(self, values: Mapping[str, Scalar]) -> StructureConstants:
        values = self.bind(values)
        self.check_admissible(values)
        return _instantiate(self, self.key(values))

    def expected_der_dim(self, values: Mapping[str, Scalar]) -> int:
        for when, value in self.der_rules:
            if conditions_hold(when, values):
                return value
        raise CatalogError(f"{self.name}: no dim Der rule matches {format_params(values)}")

    def lie_class(self, values: Mapping[str, Scalar]) -> LieClass:
        if self.lie_tag == LieTag.R3_LAMBDA:
            return LieClass.r3_lambda(eval_scalar(self.lie_lam, values))
        return LieClass(self.lie_tag)

    def trace_formula(self, values: Mapping[str, Scalar], i: int, j: int) -> Scalar | None:
        """(Σμ^i)(Σμ^j) / Σμ^(i+j) from the stored diagonal weights, None if undefined."""
        if self.trace_weights is None:
            raise CatalogError(f"{self.name} has no trace weights")
        mu = [eval_scalar(w, values) for w in self.trace_weights]
        denom = sum((m ** (i + j) for m in mu), ZERO)
        if not denom:
            return None
        return sum((m ** i for m in mu), ZERO) * sum((m ** j for m in mu), ZERO) / denom


@lru_cache(maxsize=None)
def _instantiate(family: Family, key: Params) -> StructureConstants:
    values = dict(key)
    products = {
        ij: {k: eval_scalar(expr, values) for k, expr in vec.items()}
        for ij, vec in family.products.items()
    }
    return StructureConstants.from_products(3, products)


# ──────────────────────────────────────────────
# Isomorphism rules and identities
# ──────────────────────────────────────────────

@dataclass(eq=False)
class IsoRule:
    family: str
    map: Dict[str, str]
    matrix: List[List[str]]
    when: tuple[str, ...] = ()

    def partner(self, values: Mapping[str, Scalar]) -> Dict[str, Scalar] | None:
        """Parameters of the isomorphic algebra, None if the rule does not apply."""
        if not conditions_hold(self.when, values):
            return None
        try:
            return {p: eval_scalar(expr, values) for p, expr in self.map.items()}
        except DivisionByZero:
            return None

    def matrix_at(self, values: Mapping[str, Scalar]) -> Matrix:
        return Matrix([[eval_scalar(e, values) for e in row] for row in self.matrix])


@dataclass(eq=False)
class OperatorIdentity:
    name: str
    expr: str
    family: Optional[str] = None
    when: tuple[str, ...] = ()
    universal: bool = False

    def bound(self, values: Mapping[str, Scalar]) -> OpExpr:
        return _bound_identity(self.expr, tuple(sorted(values.items())))


@lru_cache(maxsize=None)
def _bound_identity(expr: str, items: tuple) -> OpExpr:
    return OpExpr.parse(expr, dict(items))


# ──────────────────────────────────────────────
# Witnesses
# ──────────────────────────────────────────────

@dataclass(eq=False)
class Witness:
    id: str
    source: str
    source_params: Dict[str, str]
    target: str
    target_params: Dict[str, str]
    conditions: tuple[str, ...]
    matrix: List[List[str]]
    samples: Optional[List[Dict[str, Scalar]]]
    type: Optional[int]
    note: Optional[str] = None
    symbols: tuple[str, ...] = field(default=())

    @property
    def is_parametric(self) -> bool:
        return bool(self.symbols)

    def sort_key(self) -> tuple:
        digits = self.id.rstrip("abcdefghijklmnopqrstuvwxyz")
        return (int(digits) if digits.isdigit() else 0, self.id)


# ──────────────────────────────────────────────
# Catalog
# ──────────────────────────────────────────────

class Catalog:
    """Loaded, cross-referenced catalog with the lookups every stage needs."""

    def __init__(self, model: CatalogModel, sample_overrides: Mapping[str, List[Dict[str, str]]] | None = None):
        self.model = model
        self.dim   = model.dim
        self.families: Dict[str, Family] = {}
        for fm in model.families:
            if fm.name in self.families:
                raise CatalogError(f"duplicate family {fm.name}")
            self.families[fm.name] = Family.from_model(fm)

        for name, samples in (sample_overrides or {}).items():
            family = self.family(name)
            family.samples = [family.bind(s) for s in samples]
            logger.info(f"[{name}] sample grid overridden ({len(samples)} samples).")

        for family in self.families.values():
            for s in family.samples:
                if not family.is_admissible(s):
                    raise CatalogError(f"{family.name}: sample {format_params(s)} violates an exclusion")

        self.iso_rules: Dict[str, List[IsoRule]] = {}
        for r in model.iso_rules:
            self.family(r.family)
            self.iso_rules.setdefault(r.family, []).append(
                IsoRule(r.family, dict(r.map), [list(row) for row in r.matrix], tuple(r.when))
            )

        self.identities = [self._identity(m) for m in model.operator_identities]
        self.weight_triples = [tuple(w) for w in model.weight_triples]
        self.closure_tables: Dict[int, ClosureTableModel] = {t.type: t for t in model.closure_tables}
        self.obstructions: List[ObstructionModel] = list(model.obstructions)
        self.diagrams: Dict[int, DiagramModel] = {d.type: d for d in model.diagrams}
        self.witnesses: List[Witness] = sorted(
            (self._witness(w) for w in model.witnesses), key=Witness.sort_key
        )
        self._check_references()

    @classmethod
    def load(cls, path: Path | str = CATALOG_PATH, samples_path: Path | str | None = None) -> "Catalog":
        overrides = load_sample_overrides(samples_path) if samples_path else None
        return cls(load_catalog_model(path), overrides)

    # ── Construction helpers ──────────────────

    def _identity(self, m: OperatorIdentityModel) -> OperatorIdentity:
        if m.family is not None:
            self.family(m.family)
        return OperatorIdentity(m.name, m.expr, m.family, tuple(m.when), m.universal)

    def _witness(self, w: WitnessModel) -> Witness:
        source, target = self.family(w.source.family), self.family(w.target.family)
        for end, fam in ((w.source, source), (w.target, target)):
            missing = set(fam.params) - set(end.params)
            extra = set(end.params) - set(fam.params)
            if missing or extra:
                raise CatalogError(f"witness #{w.id}: parameters of {fam.name} do not match {sorted(end.params)}")
        texts = [e for row in w.matrix for e in row] + list(w.conditions)
        texts += list(w.source.params.values()) + list(w.target.params.values())
        symbols = sorted(set().union(*(free_symbols(t) for t in texts)))
        samples = None
        if w.samples is not None:
            samples = [{k: eval_scalar(v, {}) for k, v in s.items()} for s in w.samples]
        if len(w.matrix) != self.dim:
            raise CatalogError(f"witness #{w.id}: matrix is not {self.dim}x{self.dim}")
        return Witness(
            id=w.id,
            source=source.name,
            source_params=dict(w.source.params),
            target=target.name,
            target_params=dict(w.target.params),
            conditions=tuple(w.conditions),
            matrix=[list(row) for row in w.matrix],
            samples=samples,
            type=PAIR_TYPES.get((source.letter, target.letter)),
            note=w.note,
            symbols=tuple(symbols),
        )

    def _check_references(self) -> None:
        refs: List[str] = []
        for table in self.closure_tables.values():
            for row in table.rows:
                refs.append(row.source.family)
                refs.extend(t.family for t in row.targets)
        for o in self.obstructions:
            refs += [o.source.family, o.target.family]
        for d in self.diagrams.values():
            refs += [n.family for n in d.nodes]
            refs += [x for e in d.edges for x in (e.source.family, e.target.family)]
        for name in refs:
            self.family(name)

    # ── Lookups ───────────────────────────────

    def family(self, name: str) -> Family:
        family = self.families.get(name)
        if family is None:
            raise CatalogError(f"unknown family {name!r}")
        return family

    def instantiate(self, name: str, values: Mapping[str, object] | None = None) -> StructureConstants:
        return self.family(name).instantiate(values or {})

    def default_samples(self, name: str) -> List[Dict[str, Scalar]]:
        return [dict(s) for s in self.family(name).samples]

    def der_dim_expected(self, name: str, values: Mapping[str, object] | None = None) -> int:
        family = self.family(name)
        values = family.bind(values or {})
        family.check_admissible(values)
        return family.expected_der_dim(values)

    def lie_class_of(self, node: Node) -> LieClass:
        return self.family(node.family).lie_class(node.values)

    def instantiate_node(self, node: Node) -> StructureConstants:
        return self.instantiate(node.family, node.values)

    def witness(self, wid: str) -> Witness:
        for w in self.witnesses:
            if w.id == wid:
                return w
        raise CatalogError(f"unknown witness #{wid}")

    # ── Iso-classes ───────────────────────────

    def orbit(self, name: str, values: Mapping[str, Scalar]) -> List[Dict[str, Scalar]]:
        """All admissible parameter maps reachable through the family's iso rules."""
        return [dict(k) for k in self._orbit(name, self.family(name).key(values))]

    @lru_cache(maxsize=None)
    def _orbit(self, name: str, key: Params) -> tuple[Params, ...]:
        family = self.family(name)
        seen = {key}
        frontier = [key]
        while frontier:
            current = dict(frontier.pop())
            for rule in self.iso_rules.get(name, []):
                partner = rule.partner(current)
                if partner is None or not family.is_admissible(partner):
                    continue
                k = family.key(partner)
                if k not in seen:
                    seen.add(k)
                    frontier.append(k)
        return tuple(sorted(seen, key=lambda k: tuple(v.sort_key() for _, v in k)))

    def node(self, name: str, values: Mapping[str, object] | None = None) -> Node:
        family = self.family(name)
        values = family.bind(values or {})
        family.check_admissible(values)
        return Node(name, self._orbit(name, family.key(values))[0])

    def members(self, node: Node) -> List[Dict[str, Scalar]]:
        return [dict(k) for k in self._orbit(node.family, node.params)]

    def grid_nodes(self, name: str) -> List[Node]:
        nodes = {self.node(name, s) for s in self.family(name).samples}
        return sorted(nodes, key=Node.sort_key)

    def all_nodes(self) -> List[Node]:
        nodes = [n for name in self.families for n in self.grid_nodes(name)]
        return sorted(nodes, key=Node.sort_key)

    def node_matches(self, node: Node, ref: NodeRef | TargetRef) -> bool:
        """Some member of the iso-class satisfies the reference's conditions."""
        if node.family != ref.family:
            return False
        return any(conditions_hold(ref.when, m) for m in self.members(node))

    def pattern_nodes(self, ref: NodeRef, nodes: Iterable[Node] | None = None) -> List[Node]:
        pool = self.grid_nodes(ref.family) if nodes is None else nodes
        return [n for n in pool if self.node_matches(n, ref)]

    def target_instances(
        self,
        ref: TargetRef,
        source_values: Mapping[str, Scalar],
        pool: Sequence[Node] | None = None,
    ) -> List[Node]:
        """
        Targets named by ``ref`` for one source member. With params the target
        is computed (conditions on the raw computed values); without, every
        grid node of the family that satisfies ``ref.when``.
        """
        if ref.params is None:
            return self.pattern_nodes(NodeRef(family=ref.family, when=ref.when), pool)
        family = self.family(ref.family)
        try:
            raw = {p: eval_scalar(e, source_values) for p, e in ref.params.items()}
            values = family.bind(raw)
        except DivisionByZero:
            return []
        if not conditions_hold(ref.when, values) or not family.is_admissible(values):
            return []
        node = self.node(ref.family, values)
        if pool is not None and node not in pool:
            return []
        return [node]

    def pair_matches(self, source: NodeRef, target: TargetRef, a: Node, b: Node) -> bool:
        """Does the record (source, target) name the pair a -> b for some member of a?"""
        if source.family != a.family or target.family != b.family:
            return False
        for m in self.members(a):
            if not conditions_hold(source.when, m):
                continue
            if target.params is None:
                if self.node_matches(b, target):
                    return True
            elif b in self.target_instances(target, m):
                return True
        return False

    def obstructions_for(self, a: Node, b: Node) -> List[ObstructionModel]:
        return [o for o in self.obstructions if self.pair_matches(o.source, o.target, a, b)]

    # ── Types, identities, weights ────────────

    def pair_type(self, a: Node, b: Node) -> int | None:
        return PAIR_TYPES.get((self.family(a.family).letter, self.family(b.family).letter))

    def families_for_types(self, types: Iterable[int] | None) -> List[Family]:
        """Families whose class letter takes part in one of the given types (all for None)."""
        if types is None:
            return list(self.families.values())
        letters = {x for (src, dst), t in PAIR_TYPES.items() if t in set(types) for x in (src, dst)}
        return [f for f in self.families.values() if f.letter in letters]

    def identities_for(self, node: Node) -> List[tuple[str, OpExpr]]:
        """Global identities plus those bound to the node's family, instantiated at its parameters."""
        out = []
        values = node.values
        for ident in self.identities:
            if ident.universal:
                continue
            if ident.family is None:
                out.append((ident.name, ident.bound({})))
            elif ident.family == node.family and conditions_hold(ident.when, values):
                try:
                    out.append((f"{ident.name}{format_params(values)}", ident.bound(values)))
                except (DivisionByZero, NovikovError) as e:
                    logger.debug(f"[{node}] identity {ident.name} skipped: {e}")
        return out

    def universal_identities(self) -> List[tuple[str, OpExpr]]:
        return [(i.name, i.bound({})) for i in self.identities if i.universal]

    def weight_triples_for(self, params: Iterable[Scalar]) -> List[tuple[Scalar, Scalar, Scalar]]:
        """Fixed triples once, parametric ones at every p in ``params``; undefined ones dropped."""
        params = list(dict.fromkeys(params))
        out: List[tuple] = []
        for triple in self.weight_triples:
            uses_p = any("p" in free_symbols(e) for e in triple)
            for p in (params if uses_p else [ZERO]):
                try:
                    w = tuple(eval_scalar(e, {"p": p}) for e in triple)
                except DivisionByZero:
                    continue
                if any(w) and w not in out:
                    out.append(w)
        return out
