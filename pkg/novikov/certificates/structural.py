"""
Certificates that look at structure rather than a single number: the Lie
degeneration order, registered operator identities, and the associated
Jordan-type algebras.
"""

import logging
from typing import Mapping

from novikov.certificates.base import BaseCertificate, PairContext
from novikov.conditions import jordan_algebra, lie_class_of_algebra, necessary_conditions, vanishes
from novikov.errors import NotLie
from novikov.lie import lie_degenerates

logger = logging.getLogger(__name__)


class LieTypeCertificate(BaseCertificate):
    kind = "lie_type"

    def check(self, ctx: PairContext, payload: Mapping[str, str]) -> str | None:
        try:
            ca, cb = lie_class_of_algebra(ctx.S_A), lie_class_of_algebra(ctx.S_B)
        except NotLie as e:
            logger.warning(f"[{ctx.label}] Lie class undefined: {e}")
            return None
        if not lie_degenerates(ca, cb):
            return f"Lie algebra {ca} does not degenerate to {cb}"
        return None


class OperatorIdentityCertificate(BaseCertificate):
    kind = "operator_identity"

    def check(self, ctx: PairContext, payload: Mapping[str, str]) -> str | None:
        wanted = payload.get("identity")
        for name, T in ctx.catalog.identities_for(ctx.source):
            if wanted and name.split("{")[0] != wanted:
                continue
            if vanishes(ctx.S_A, T) and not vanishes(ctx.S_B, T):
                return f"{name}: {T} vanishes on A but not on B"
        return None


class JordanArgumentCertificate(BaseCertificate):
    """
    A -> B forces J_A -> J_B or J_A ≅ J_B. When both are associative and
    even the weak conditions fail, A cannot degenerate to B.
    """
    kind = "jordan_argument"

    def check(self, ctx: PairContext, payload: Mapping[str, str]) -> str | None:
        J_A, assoc_a = jordan_algebra(ctx.S_A)
        J_B, assoc_b = jordan_algebra(ctx.S_B)
        if not (assoc_a and assoc_b):
            return None
        report = necessary_conditions(J_A, J_B, strict=False, lie=False)
        if report.passed:
            return None
        failed = report.failures[0]
        return f"J_A ↛ J_B: {failed.check} ({failed.detail})"
