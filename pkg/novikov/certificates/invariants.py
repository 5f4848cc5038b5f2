"""
Certificates from numerical invariants that can only move one way along a
degeneration: dim Der and every dim Der_(α,β,γ) go up, dim A·A goes down,
annihilators grow, completeness and det ≡ 0 are inherited, and c/d trace
invariants are constant wherever both are defined.
"""

from typing import Mapping

from novikov.algebra import annihilator_dims, derivation_dim, is_complete, square_dim, trace_invariant
from novikov.catalog import eval_scalar
from novikov.certificates.base import BaseCertificate, PairContext
from novikov.conditions import TRACE_INDICES, det_vanishes


class DerDimCertificate(BaseCertificate):
    kind = "der_dim"

    def check(self, ctx: PairContext, payload: Mapping[str, str]) -> str | None:
        da, db = derivation_dim(ctx.S_A), derivation_dim(ctx.S_B)
        if da >= db:
            return f"dim Der(A) = {da} >= dim Der(B) = {db}"
        return None


class GenDerDimCertificate(BaseCertificate):
    kind = "gen_der_dim"

    def check(self, ctx: PairContext, payload: Mapping[str, str]) -> str | None:
        if "weights" in payload:
            triples = [tuple(eval_scalar(w, {}) for w in payload["weights"].split(","))]
        else:
            values = [v for node in (ctx.source, ctx.target) for m in ctx.catalog.members(node) for v in m.values()]
            triples = ctx.catalog.weight_triples_for(values)
        for w in triples:
            da, db = derivation_dim(ctx.S_A, w), derivation_dim(ctx.S_B, w)
            if da > db:
                label = ",".join(map(str, w))
                return f"dim Der_({label}): {da} vs {db}"
        return None


class SquareDimCertificate(BaseCertificate):
    kind = "square_dim"

    def check(self, ctx: PairContext, payload: Mapping[str, str]) -> str | None:
        sa, sb = square_dim(ctx.S_A), square_dim(ctx.S_B)
        if sa < sb:
            return f"dim A·A = {sa} < dim B·B = {sb}"
        return None


class AnnihilatorCertificate(BaseCertificate):
    kind = "annihilator"

    def check(self, ctx: PairContext, payload: Mapping[str, str]) -> str | None:
        (la, ra), (lb, rb) = annihilator_dims(ctx.S_A), annihilator_dims(ctx.S_B)
        if la > lb:
            return f"left annihilator {la} > {lb}"
        if ra > rb:
            return f"right annihilator {ra} > {rb}"
        return None


class CompletenessCertificate(BaseCertificate):
    kind = "completeness"

    def check(self, ctx: PairContext, payload: Mapping[str, str]) -> str | None:
        if is_complete(ctx.S_A) and not is_complete(ctx.S_B):
            return "A is complete and B is not"
        return None


class DetVanishingCertificate(BaseCertificate):
    kind = "det_vanishing"

    def check(self, ctx: PairContext, payload: Mapping[str, str]) -> str | None:
        sides = (payload["side"],) if "side" in payload else ("L", "R")
        for side in sides:
            if det_vanishes(ctx.S_A, side) and not det_vanishes(ctx.S_B, side):
                return f"det {side}(x) ≡ 0 on A but not on B"
        return None


class TraceInvariantCertificate(BaseCertificate):
    kind = "trace_invariant"

    def check(self, ctx: PairContext, payload: Mapping[str, str]) -> str | None:
        if "kind" in payload:
            candidates = [(payload["kind"], int(payload["i"]), int(payload["j"]))]
        else:
            candidates = [(k, i, j) for k in ("c", "d") for i, j in TRACE_INDICES]
        for kind, i, j in candidates:
            qa, qb = trace_invariant(ctx.S_A, kind, i, j), trace_invariant(ctx.S_B, kind, i, j)
            if qa is not None and qb is not None and qa != qb:
                return f"{kind}_{i},{j}(A) = {qa}, {kind}_{i},{j}(B) = {qb}"
        return None
