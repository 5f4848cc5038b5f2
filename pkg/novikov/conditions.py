"""
Necessary conditions for a degeneration A -> B, evaluated on two concrete
structure tensors. Each check is one verdict; a failed verdict proves the
degeneration impossible.

With ``strict=False`` the checks are the ones that also hold when A ≅ B
(dim Der may stay equal). That weak form is what the Jordan argument uses,
since the associated algebras of a proper degeneration may be isomorphic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, NamedTuple, Sequence

from novikov.algebra import (
    StructureConstants,
    annihilator_dims,
    associated_algebras,
    derivation_dim,
    is_complete,
    left_right_operators,
    square_dim,
    trace_invariant,
)
from novikov.errors import NotLie
from novikov.lie import LieClass, classify_lie, lie_degenerates
from novikov.operators import OpExpr, check_operator_identity

logger = logging.getLogger(__name__)

TRACE_INDICES = ((1, 1), (1, 2), (2, 2))


class Verdict(NamedTuple):
    check: str
    passed: bool
    detail: str = ""


@dataclass
class NecessaryConditionReport:
    verdicts: List[Verdict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def failures(self) -> List[Verdict]:
        return [v for v in self.verdicts if not v.passed]

    def add(self, check: str, passed: bool, detail: str = "") -> None:
        self.verdicts.append(Verdict(check, passed, detail))


# ──────────────────────────────────────────────
# Cached invariants
# ──────────────────────────────────────────────

@lru_cache(maxsize=None)
def det_vanishes(S: StructureConstants, side: str) -> bool:
    """det L(x) ≡ 0 (side "L") or det R(x) ≡ 0 (side "R") as a polynomial in x."""
    L, R = left_right_operators(S)
    return (L if side == "L" else R).det().is_zero()


@lru_cache(maxsize=None)
def lie_class_of_algebra(S: StructureConstants) -> LieClass:
    return classify_lie(associated_algebras(S)[0])


@lru_cache(maxsize=None)
def jordan_algebra(S: StructureConstants) -> tuple[StructureConstants, bool]:
    """Product xy + yx and whether it is associative."""
    _, jordan, associative = associated_algebras(S)
    return jordan, associative


@lru_cache(maxsize=None)
def vanishes(S: StructureConstants, T: OpExpr) -> bool:
    return check_operator_identity(S, T)


# ──────────────────────────────────────────────
# Necessary conditions
# ──────────────────────────────────────────────

def necessary_conditions(
    S_A: StructureConstants,
    S_B: StructureConstants,
    identities: Sequence[tuple[str, OpExpr]] = (),
    weights: Sequence[tuple] = (),
    strict: bool = True,
    lie: bool = True,
) -> NecessaryConditionReport:
    report = NecessaryConditionReport()

    der_a, der_b = derivation_dim(S_A), derivation_dim(S_B)
    ok = der_a < der_b if strict else der_a <= der_b
    report.add("der_dim", ok, f"dim Der {der_a} -> {der_b}")

    for w in weights:
        da, db = derivation_dim(S_A, tuple(w)), derivation_dim(S_B, tuple(w))
        label = ",".join(map(str, w))
        report.add(f"gen_der_dim({label})", da <= db, f"dim Der_({label}) {da} -> {db}")

    sq_a, sq_b = square_dim(S_A), square_dim(S_B)
    report.add("square_dim", sq_a >= sq_b, f"dim A·A {sq_a} -> {sq_b}")

    (la, ra), (lb, rb) = annihilator_dims(S_A), annihilator_dims(S_B)
    report.add("annihilator", la <= lb and ra <= rb, f"annihilators ({la},{ra}) -> ({lb},{rb})")

    for kind in ("c", "d"):
        for i, j in TRACE_INDICES:
            qa, qb = trace_invariant(S_A, kind, i, j), trace_invariant(S_B, kind, i, j)
            if qa is not None and qb is not None:
                report.add(f"trace_{kind}{i}{j}", qa == qb, f"{kind}_{i},{j} {qa} -> {qb}")

    for name, T in identities:
        if vanishes(S_A, T):
            report.add(f"identity {name}", vanishes(S_B, T), f"{T}")

    if is_complete(S_A):
        report.add("completeness", is_complete(S_B), "A complete")

    for side in ("L", "R"):
        if det_vanishes(S_A, side):
            report.add(f"det_{side}", det_vanishes(S_B, side), f"det {side}(x) ≡ 0 on A")

    if lie:
        try:
            ca, cb = lie_class_of_algebra(S_A), lie_class_of_algebra(S_B)
        except NotLie as e:
            report.add("lie_type", False, str(e))
        else:
            report.add("lie_type", lie_degenerates(ca, cb), f"{ca} -> {cb}")

    return report
