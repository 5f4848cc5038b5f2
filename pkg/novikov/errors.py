"""
Errors
======
One hierarchy for everything the engine can raise.

Verification outcomes (axiom violations, missing certificates, undefined
trace invariants) are data and never show up here.
"""


class NovikovError(Exception):
    """Base class for all engine errors."""


# ── Arithmetic ────────────────────────────────

class DivisionByZero(NovikovError, ZeroDivisionError):
    pass


class VariableMismatch(NovikovError):
    """Two polynomials from different ring contexts were combined."""


class PoleAtZero(NovikovError):
    """A rational function in t has no finite value at t = 0."""


class ParseError(NovikovError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text     = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class UnknownSymbol(NovikovError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown symbol {name!r}")


class Singular(NovikovError):
    """Matrix has no inverse over its field."""


# ── Algebra ───────────────────────────────────

class NotNovikov(NovikovError):
    pass


class NotLie(NovikovError):
    pass


# ── Catalog ───────────────────────────────────

class InadmissibleParameter(NovikovError):
    def __init__(self, family: str, exclusion: str):
        self.family    = family
        self.exclusion = exclusion
        super().__init__(f"{family}: parameter violates {exclusion}")


class CatalogError(NovikovError):
    """Malformed catalog file or a dangling family / witness reference."""


# ── Degenerations ─────────────────────────────

class WitnessFailure(NovikovError):
    status = "failed"


class SingularFamily(WitnessFailure):
    status = "singular_family"


class Diverged(WitnessFailure):
    status = "diverged"


class LimitMismatch(WitnessFailure):
    status = "limit_mismatch"


class CycleDetected(NovikovError):
    def __init__(self, cycle: list):
        self.cycle = cycle
        super().__init__("degeneration graph has a cycle: " + " -> ".join(map(str, cycle)))
