from pydantic import BaseModel, Field, field_validator, model_validator
from typing import Optional, List, Dict
from enum import Enum


SCHEMA_VERSION = 1


# ──────────────────────────────────────────────
# Catalog — shared pieces
# ──────────────────────────────────────────────

class LieTagName(str, Enum):
    abelian = "abelian"
    heisenberg_n3 = "heisenberg_n3"
    r2_plus_C = "r2_plus_C"
    r3 = "r3"
    r3_lambda = "r3_lambda"


class LieSpec(BaseModel):
    tag: LieTagName
    lam: Optional[str] = None          # expression in the family parameters, r3_lambda only

    @model_validator(mode="after")
    def _lam_iff_r3_lambda(self):
        if (self.tag == LieTagName.r3_lambda) != (self.lam is not None):
            raise ValueError("lam is required for r3_lambda and forbidden otherwise")
        return self


class DerRule(BaseModel):
    when: List[str] = []               # conditions, all must hold
    value: int


class NodeRef(BaseModel):
    """A family with an optional parameter restriction, e.g. B4 with a != 1/2."""
    family: str
    when: List[str] = []


class TargetRef(BaseModel):
    """
    Target of an edge or a table row.
    params maps target parameters to expressions in the source parameters;
    without params every grid node of the family (satisfying when) is meant.
    """
    family: str
    params: Optional[Dict[str, str]] = None
    when: List[str] = []


# ──────────────────────────────────────────────
# Catalog — families, iso rules, identities
# ──────────────────────────────────────────────

class FamilyModel(BaseModel):
    name: str
    letter: str                        # Lie class letter A..E
    params: List[str] = []
    exclusions: List[str] = []         # conditions every admissible sample satisfies
    products: Dict[str, Dict[str, str]] = {}   # "12" -> {"3": "b"} means e1·e2 = b e3
    lie: LieSpec
    der_dim: List[DerRule]
    samples: List[Dict[str, str]] = [{}]
    trace_weights: Optional[List[str]] = None  # μ with c_ij = (Σμ^i)(Σμ^j)/Σμ^(i+j)

    @field_validator("letter")
    @classmethod
    def _letter(cls, v: str) -> str:
        if v not in ("A", "B", "C", "D", "E"):
            raise ValueError(f"unknown class letter {v!r}")
        return v

    @field_validator("products")
    @classmethod
    def _product_keys(cls, v: Dict[str, Dict[str, str]]) -> Dict[str, Dict[str, str]]:
        for key, vec in v.items():
            if len(key) != 2 or not key.isdigit():
                raise ValueError(f"product key {key!r} must be two basis indices like '12'")
            if any(not k.isdigit() for k in vec):
                raise ValueError(f"product {key!r} has a non-numeric basis index")
        return v


class IsoRuleModel(BaseModel):
    family: str
    map: Dict[str, str]                # new parameter values as expressions in the old ones
    matrix: List[List[str]]            # g⁻¹, columns are the new basis
    when: List[str] = []


class OperatorIdentityModel(BaseModel):
    name: str
    expr: str
    family: Optional[str] = None       # bound identities use the source parameters
    when: List[str] = []
    universal: bool = False            # must vanish on every Novikov algebra


# ──────────────────────────────────────────────
# Catalog — closure tables, hints, witnesses, diagrams
# ──────────────────────────────────────────────

class ClosureRow(BaseModel):
    source: NodeRef
    targets: List[TargetRef] = []


class ClosureTableModel(BaseModel):
    type: int = Field(ge=1, le=13)
    rows: List[ClosureRow]


class CertificateKind(str, Enum):
    der_dim = "der_dim"
    gen_der_dim = "gen_der_dim"
    square_dim = "square_dim"
    annihilator = "annihilator"
    trace_invariant = "trace_invariant"
    operator_identity = "operator_identity"
    completeness = "completeness"
    det_vanishing = "det_vanishing"
    lie_type = "lie_type"
    jordan_argument = "jordan_argument"
    transitivity = "transitivity"
    manual = "manual"


class ObstructionModel(BaseModel):
    type: int = Field(ge=1, le=13)
    source: NodeRef
    target: TargetRef
    kind: CertificateKind
    payload: Dict[str, str] = {}
    note: Optional[str] = None


class WitnessEnd(BaseModel):
    family: str
    params: Dict[str, str] = {}


class WitnessModel(BaseModel):
    id: str
    source: WitnessEnd
    target: WitnessEnd
    conditions: List[str] = []
    matrix: List[List[str]]
    samples: Optional[List[Dict[str, str]]] = None   # explicit bindings, bypasses the grids
    note: Optional[str] = None

    @field_validator("matrix")
    @classmethod
    def _square(cls, v: List[List[str]]) -> List[List[str]]:
        if not v or any(len(r) != len(v) for r in v):
            raise ValueError("witness matrix must be square")
        return v


class EdgeStyle(str, Enum):
    new = "new"
    given = "given"


class DiagramEdge(BaseModel):
    source: NodeRef
    target: TargetRef
    style: EdgeStyle = EdgeStyle.new
    omits_restrictions: bool = False   # drawn without its parameter restriction


class DiagramModel(BaseModel):
    type: int = Field(ge=1, le=13)
    title: str = ""
    nodes: List[NodeRef]
    edges: List[DiagramEdge]


class CatalogModel(BaseModel):
    schema_version: int = SCHEMA_VERSION
    dim: int = 3
    families: List[FamilyModel] = []
    iso_rules: List[IsoRuleModel] = []
    operator_identities: List[OperatorIdentityModel] = []
    weight_triples: List[List[str]] = []
    closure_tables: List[ClosureTableModel] = []
    obstructions: List[ObstructionModel] = []
    witnesses: List[WitnessModel] = []
    diagrams: List[DiagramModel] = []


# ──────────────────────────────────────────────
# Reports
# ──────────────────────────────────────────────

class CheckStatus(str, Enum):
    ok = "ok"
    failed = "failed"


class FamilyCheck(BaseModel):
    family: str
    sample: Dict[str, str]
    check: str                         # novikov | lie | der_table | universal_identity | iso_rule | trace_formula ...
    status: CheckStatus
    detail: Optional[str] = None


class CatalogReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    ok: bool
    checks: int
    failures: List[FamilyCheck] = []


class WitnessStatus(str, Enum):
    verified = "verified"
    diverged = "diverged"
    limit_mismatch = "limit_mismatch"
    singular_family = "singular_family"
    failed = "failed"


class WitnessRun(BaseModel):
    witness: str
    sample: Dict[str, str]
    status: WitnessStatus
    limit: Optional[str] = None
    detail: Optional[str] = None
    failed_conditions: List[str] = []


class WitnessSummary(BaseModel):
    witness: str
    type: Optional[int] = None
    regime: str                        # "exact" (no symbols), "identity" or "sampled"
    samples: int
    verified: int


class DegenerationReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    ok: bool
    witnesses: List[WitnessSummary] = []
    failures: List[WitnessRun] = []


class InvariantReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    family: str
    params: Dict[str, str]
    der_dim: int
    gen_der_dims: Dict[str, int]
    annihilators: List[int]
    square_dim: int
    complete: bool
    trace_invariants: Dict[str, Optional[str]]
    lie_class: str
    jordan_associative: bool


class PairCertificate(BaseModel):
    source: str
    target: str
    type: Optional[int] = None
    kind: str
    detail: str = ""


class Discrepancy(BaseModel):
    type: Optional[int] = None
    source: str
    target: str
    problem: str


class DiagramEdgeReport(BaseModel):
    source: str
    target: str
    style: str


class DiagramCheck(BaseModel):
    type: int
    ok: bool
    missing: List[DiagramEdgeReport] = []
    extra: List[DiagramEdgeReport] = []
    flagged: List[DiagramEdgeReport] = []


class HasseReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    ok: bool
    nodes: int
    closure_edges: int
    discrepancies: List[Discrepancy] = []
    certificates: List[PairCertificate] = []
    manual: List[PairCertificate] = []
    redundant_manual: List[PairCertificate] = []     # manual records whose pair also has a machine certificate
    unused_manual: List[PairCertificate] = []        # manual records naming no pair of the run
    diagrams: List[DiagramCheck] = []
    closures: Dict[str, List[str]] = {}
