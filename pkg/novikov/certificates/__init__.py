"""
Certificate registry — maps a certificate kind to its checker.

To add a new kind:
  1. Create novikov/certificates/yourkind.py extending BaseCertificate
  2. Import it here, add it to CERTIFICATES and, if it should run
     unprompted, to BATTERY
"""

from novikov.certificates.base import BaseCertificate, Certificate, PairContext
from novikov.certificates.invariants import (
    AnnihilatorCertificate,
    CompletenessCertificate,
    DerDimCertificate,
    DetVanishingCertificate,
    GenDerDimCertificate,
    SquareDimCertificate,
    TraceInvariantCertificate,
)
from novikov.certificates.structural import (
    JordanArgumentCertificate,
    LieTypeCertificate,
    OperatorIdentityCertificate,
)

# ── Registry ──────────────────────────────────
CERTIFICATES: dict[str, BaseCertificate] = {
    "lie_type":          LieTypeCertificate(),
    "der_dim":           DerDimCertificate(),
    "square_dim":        SquareDimCertificate(),
    "annihilator":       AnnihilatorCertificate(),
    "completeness":      CompletenessCertificate(),
    "det_vanishing":     DetVanishingCertificate(),
    "operator_identity": OperatorIdentityCertificate(),
    "trace_invariant":   TraceInvariantCertificate(),
    "gen_der_dim":       GenDerDimCertificate(),
    "jordan_argument":   JordanArgumentCertificate(),
}

# cheapest first
BATTERY: tuple[str, ...] = tuple(CERTIFICATES)


def get_certificate(kind: str) -> BaseCertificate | None:
    return CERTIFICATES.get(kind)


__all__ = ["BATTERY", "CERTIFICATES", "BaseCertificate", "Certificate", "PairContext", "get_certificate"]
