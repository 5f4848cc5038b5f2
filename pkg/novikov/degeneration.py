"""
Degenerations
=============
Exact verification of witnesses, necessary conditions along verified
degenerations, and non-degeneration certificates.

A witness matrix is g_t⁻¹ with entries in Q(i)(t): its columns are the new
basis. The transported product is reduced in Q(i)(t) and only then
evaluated at t = 0, so nothing is ever approximated.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional

from sympy.polys.domains import QQ_I
from sympy.polys.fields import FracField
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMError

from novikov.algebra import StructureConstants, transport
from novikov.catalog import (
    Catalog,
    Family,
    Node,
    Witness,
    conditions_hold,
    eval_in_t,
    eval_scalar,
    failed_conditions,
    fold_expr,
    free_symbols,
)
from novikov.certificates import BATTERY, Certificate, PairContext, get_certificate
from novikov.conditions import NecessaryConditionReport, jordan_algebra, necessary_conditions
from novikov.errors import (
    CatalogError,
    Diverged,
    DivisionByZero,
    LimitMismatch,
    NovikovError,
    PoleAtZero,
    Singular,
    SingularFamily,
    WitnessFailure,
)
from novikov.exactnum import Scalar
from novikov.linalg import Matrix
from novikov.models.schemas import CertificateKind, ObstructionModel
from novikov.symring import RatFun

logger = logging.getLogger(__name__)

Sample = Dict[str, Scalar]

__all__ = [
    "DegenerationResult",
    "GenericLimit",
    "NecessaryConditionReport",
    "PairVerdict",
    "apply_witness",
    "certify_non_degeneration",
    "certify_pair",
    "check_verified_pair",
    "generic_limit",
    "necessary_conditions",
    "verification_regime",
    "witness_ends",
    "witness_samples",
]


@dataclass
class DegenerationResult:
    witness: str
    sample: Sample
    status: str                                  # verified | diverged | limit_mismatch | singular_family
    limit: Optional[StructureConstants] = None
    detail: Optional[str] = None

    @property
    def verified(self) -> bool:
        return self.status == "verified"


# ──────────────────────────────────────────────
# Samples
# ──────────────────────────────────────────────

def _is_bare(expr: str) -> bool:
    return expr.strip().isidentifier()


def _bare_symbols(exprs: Mapping[str, str]) -> set[str]:
    return {e.strip() for e in exprs.values() if _is_bare(e)}


def _bind_from_grid(family: Family, exprs: Mapping[str, str], fixed: Iterable[str] = ()) -> List[Sample]:
    """
    Values for the bare-symbol parameters of one witness end, read off the
    family's grid. Samples whose values disagree with a constant parameter
    are skipped. Symbols in ``fixed`` are bound by the other end.
    """
    fixed = set(fixed)
    bare = {p: e.strip() for p, e in exprs.items() if _is_bare(e) and e.strip() not in fixed}
    if not bare:
        return [{}]
    constants = {p: eval_scalar(e, {}) for p, e in exprs.items() if not free_symbols(e)}
    out: List[Sample] = []
    for s in family.samples:
        if any(s[p] != v for p, v in constants.items()):
            continue
        binding: Sample = {}
        consistent = True
        for p, sym in bare.items():
            if binding.setdefault(sym, s[p]) != s[p]:
                consistent = False
        if consistent and binding not in out:
            out.append(binding)
    return out


def witness_ends(catalog: Catalog, w: Witness, sample: Mapping[str, Scalar]) -> tuple[Sample, Sample]:
    """Source and target parameters of the witness at one sample."""
    src = catalog.family(w.source).bind({p: eval_scalar(e, sample) for p, e in w.source_params.items()})
    tgt = catalog.family(w.target).bind({p: eval_scalar(e, sample) for p, e in w.target_params.items()})
    return src, tgt


def witness_samples(catalog: Catalog, w: Witness) -> List[Sample]:
    """
    Admissible bindings of the witness symbols. Explicit samples win;
    otherwise symbols standing bare for a source parameter come from the
    source grid and the rest from the target grid, so a source parameter
    like ``-a`` follows the target's ``a``.
    """
    if not w.is_parametric:
        return [{}]
    if w.samples is not None:
        candidates = [dict(s) for s in w.samples]
    else:
        source, target = catalog.family(w.source), catalog.family(w.target)
        src_bindings = _bind_from_grid(source, w.source_params)
        tgt_bindings = _bind_from_grid(target, w.target_params, _bare_symbols(w.source_params))
        candidates = [{**a, **b} for a, b in product(src_bindings, tgt_bindings)]

    samples: List[Sample] = []
    for s in candidates:
        missing = set(w.symbols) - set(s)
        if missing:
            raise CatalogError(f"witness #{w.id}: no sample binds {sorted(missing)}")
        if not conditions_hold(w.conditions, s):
            continue
        try:
            src, tgt = witness_ends(catalog, w, s)
        except DivisionByZero:
            continue
        if not (catalog.family(w.source).is_admissible(src) and catalog.family(w.target).is_admissible(tgt)):
            continue
        if s not in samples:
            samples.append(s)
    return sorted(samples, key=lambda s: tuple(s[k].sort_key() for k in sorted(s)))


# ──────────────────────────────────────────────
# Witness application
# ──────────────────────────────────────────────

def _limit(S_A: StructureConstants, matrix: Matrix) -> StructureConstants:
    try:
        g = matrix.invert()
    except Singular as e:
        raise SingularFamily(f"g_t⁻¹ is singular over Q(i)(t): {e}") from e
    lifted = S_A.map(RatFun.const, RatFun.const(0), RatFun.const(1))
    moved = transport(lifted, g)
    try:
        return moved.map(lambda f: f.limit_at_zero())
    except PoleAtZero as e:
        raise Diverged(f"transported product has a pole at t = 0: {e}") from e


def witness_matrix(w: Witness, sample: Mapping[str, Scalar]) -> Matrix:
    return Matrix(
        [[eval_in_t(e, sample) for e in row] for row in w.matrix],
        RatFun.const(0),
        RatFun.const(1),
    )


def apply_witness(catalog: Catalog, w: Witness, sample: Mapping[str, Scalar] | None = None) -> DegenerationResult:
    sample = dict(sample or {})
    problems = failed_conditions(w.conditions, sample)
    if problems:
        raise CatalogError(f"witness #{w.id}: sample violates {problems}")
    src, tgt = witness_ends(catalog, w, sample)
    S_A = catalog.instantiate(w.source, src)
    S_B = catalog.instantiate(w.target, tgt)
    limit = None
    try:
        limit = _limit(S_A, witness_matrix(w, sample))
        if limit != S_B:
            raise LimitMismatch(f"limit {limit} differs from {w.target} {S_B}")
    except WitnessFailure as e:
        return DegenerationResult(w.id, sample, e.status, limit, str(e))
    return DegenerationResult(w.id, sample, "verified", limit)


def check_verified_pair(catalog: Catalog, source: Node, target: Node) -> NecessaryConditionReport:
    """Necessary conditions for a proper degeneration plus the Jordan compatibility check."""
    S_A, S_B = catalog.instantiate_node(source), catalog.instantiate_node(target)
    report = necessary_conditions(S_A, S_B, catalog.identities_for(source))
    J_A, assoc_a = jordan_algebra(S_A)
    J_B, assoc_b = jordan_algebra(S_B)
    if assoc_a and assoc_b:
        weak = necessary_conditions(J_A, J_B, strict=False, lie=False)
        for v in weak.verdicts:
            report.add(f"jordan {v.check}", v.passed, v.detail)
    return report


# ──────────────────────────────────────────────
# Verification regime
# ──────────────────────────────────────────────

@lru_cache(maxsize=None)
def _generic_field(symbols: tuple[str, ...]) -> FracField:
    return FracField(("t", *symbols), QQ_I)


def _t_coefficient(p, k: int):
    """Coefficient of t^k in p, as a polynomial in the remaining generators."""
    return p.ring.from_dict({(0, *e[1:]): c for e, c in p.iterterms() if e[0] == k})


def _generic_tensor(family: Family, values: Mapping[str, object], L: FracField) -> StructureConstants:
    num = lambda s: L.ground_new(s.rep)
    c = [[[L.zero] * 3 for _ in range(3)] for _ in range(3)]
    for (i, j), vec in family.products.items():
        for k, expr in vec.items():
            c[i - 1][j - 1][k - 1] = fold_expr(expr, values, num)
    return StructureConstants(3, c, L.zero, L.one)


@dataclass
class GenericLimit:
    """
    A witness limit computed once over Q(i)(t, symbols) with the symbols
    left free. ``leading`` holds, per entry, the lowest-order t coefficient
    of the transported denominator: a sample is an instance of the generic
    limit exactly where none of them vanishes.
    """
    symbols: tuple[str, ...]
    leading: List[object]
    matches_target: bool

    def specialises_at(self, sample: Mapping[str, Scalar]) -> bool:
        point = [QQ_I.zero, *(sample[s].rep for s in self.symbols)]
        return all(q(*point) for q in self.leading)


def generic_limit(catalog: Catalog, w: Witness) -> GenericLimit | None:
    """
    Transport the source along the witness with its symbols left free and
    let t → 0 entrywise. None when the family is singular or some entry
    has a pole at t = 0 for generic symbol values.
    """
    L = _generic_field(tuple(w.symbols))
    gens = dict(zip(("t", *w.symbols), L.gens))
    syms = {x: gens[x] for x in w.symbols}
    num = lambda s: L.ground_new(s.rep)
    try:
        matrix = [[fold_expr(e, gens, num) for e in row] for row in w.matrix]
        inverse = DomainMatrix(matrix, (3, 3), L.to_domain()).inv().to_list()
        source = _generic_tensor(
            catalog.family(w.source), {p: fold_expr(e, syms, num) for p, e in w.source_params.items()}, L
        )
        target = _generic_tensor(
            catalog.family(w.target), {p: fold_expr(e, syms, num) for p, e in w.target_params.items()}, L
        )
    except (ZeroDivisionError, DMError, NovikovError) as e:
        logger.debug(f"[#{w.id}] no generic limit: {e}")
        return None

    g = Matrix(inverse, L.zero, L.one)
    cols = [[row[i] for row in matrix] for i in range(3)]
    limit, leading = [], []
    for i in range(3):
        for j in range(3):
            for f in g.apply(source.mul(cols[i], cols[j])):
                p, q = f.numer, f.denom
                n = q.tail_degree(0)
                q0 = _t_coefficient(q, n)
                leading.append(q0)
                if not p or p.tail_degree(0) > n:
                    limit.append(L.zero)
                elif p.tail_degree(0) == n:
                    limit.append(L.new(_t_coefficient(p, n), q0))
                else:
                    return None

    expected = [x for row in target.c for vec in row for x in vec]
    matches = all(not (a - b) for a, b in zip(limit, expected))
    return GenericLimit(tuple(w.symbols), leading, matches)


def verification_regime(catalog: Catalog, w: Witness, samples: List[Sample]) -> str:
    """
    ``exact`` for a witness without symbols. ``identity`` when the generic
    limit equals the target as rational functions of the symbols and every
    sample is an instance of it. ``sampled`` otherwise.
    """
    if not w.is_parametric:
        return "exact"
    generic = generic_limit(catalog, w)
    if generic is None or not generic.matches_target:
        return "sampled"
    if not all(generic.specialises_at(s) for s in samples):
        return "sampled"
    return "identity"


# ──────────────────────────────────────────────
# Non-degeneration certificates
# ──────────────────────────────────────────────

@dataclass
class PairVerdict:
    certificate: Certificate | None = None
    failed_hints: List[str] = field(default_factory=list)     # recorded kinds whose payload does not check


def certify_pair(
    catalog: Catalog,
    source: Node,
    target: Node,
    hints: Iterable[ObstructionModel] = (),
) -> PairVerdict:
    """
    Check every recorded certificate for A ↛ B, then fall back to the
    battery when none of them holds. Recorded certificates that fail are
    kept on the verdict even when another one succeeds.
    """
    ctx = PairContext(catalog, source, target)
    verdict = PairVerdict()
    for hint in hints:
        if hint.kind in (CertificateKind.manual, CertificateKind.transitivity):
            continue
        detail = get_certificate(hint.kind.value).check(ctx, hint.payload)
        if detail is None:
            logger.warning(f"[{ctx.label}] recorded {hint.kind.value} certificate does not check")
            verdict.failed_hints.append(hint.kind.value)
        elif verdict.certificate is None:
            verdict.certificate = Certificate(hint.kind.value, detail)
    if verdict.certificate is None:
        for kind in BATTERY:
            detail = get_certificate(kind).check(ctx, {})
            if detail:
                verdict.certificate = Certificate(kind, detail)
                break
    return verdict


def certify_non_degeneration(
    catalog: Catalog,
    source: Node,
    target: Node,
    hints: Iterable[ObstructionModel] = (),
) -> Certificate | None:
    """First certificate that machine-checks A ↛ B; None means no certificate was found."""
    return certify_pair(catalog, source, target, hints).certificate
