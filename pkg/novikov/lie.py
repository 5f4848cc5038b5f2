"""
Solvable 3-dimensional Lie algebras: classification of a bracket into
C^3, n3, r2+C, r3 or r3,λ, and the degeneration order between them.

r3,λ is stored by κ = (1+λ)²/λ, which is the same number for λ and 1/λ,
so equality of LieClass compares the unordered pair {λ, 1/λ}.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from novikov.algebra import StructureConstants
from novikov.errors import NotLie
from novikov.exactnum import ONE, Scalar
from novikov.linalg import Matrix


class LieTag(str, Enum):
    ABELIAN   = "abelian"         # C^3
    HEISENBERG = "heisenberg_n3"  # n3
    R2_PLUS_C = "r2_plus_C"
    R3        = "r3"              # non-diagonalizable adjoint action
    R3_LAMBDA = "r3_lambda"


FOUR = Scalar(4)


@dataclass(frozen=True)
class LieClass:
    tag: LieTag
    kappa: Scalar | None = None

    def __post_init__(self):
        if (self.tag == LieTag.R3_LAMBDA) != (self.kappa is not None):
            raise ValueError("kappa is present iff the class is r3_lambda")

    @classmethod
    def r3_lambda(cls, lam) -> "LieClass":
        lam = Scalar.of(lam)
        if not lam:
            raise ValueError("r3,λ needs λ ≠ 0")
        return cls(LieTag.R3_LAMBDA, (ONE + lam) ** 2 / lam)

    @property
    def lam_pair(self) -> frozenset[Scalar] | None:
        """{λ, 1/λ} when both roots of λ² + (2-κ)λ + 1 lie in Q(i)."""
        if self.kappa is None:
            return None
        b = Scalar(2) - self.kappa
        root = (b * b - FOUR).sqrt()
        if root is None:
            return None
        return frozenset({(-b + root) / 2, (-b - root) / 2})

    @property
    def is_r3_one(self) -> bool:
        return self.tag == LieTag.R3_LAMBDA and self.kappa == FOUR

    def __str__(self) -> str:
        if self.tag != LieTag.R3_LAMBDA:
            return {
                LieTag.ABELIAN:    "C^3",
                LieTag.HEISENBERG: "n3",
                LieTag.R2_PLUS_C:  "r2+C",
                LieTag.R3:         "r3",
            }[self.tag]
        pair = self.lam_pair
        if pair is None:
            return f"r3,λ(κ={self.kappa})"
        return "r3,{" + ",".join(sorted(map(str, pair))) + "}"


def check_lie(S: StructureConstants) -> list[str]:
    n = S.dim
    problems = []
    for i in range(n):
        for j in range(n):
            if any(a + b for a, b in zip(S.c[i][j], S.c[j][i])):
                problems.append(f"[e{i + 1},e{j + 1}] not antisymmetric")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                a = S.mul(list(S.c[i][j]), S.basis(k))
                b = S.mul(list(S.c[j][k]), S.basis(i))
                c = S.mul(list(S.c[k][i]), S.basis(j))
                if any(x + y + z for x, y, z in zip(a, b, c)):
                    problems.append(f"Jacobi fails on (e{i + 1},e{j + 1},e{k + 1})")
    return problems


def _coordinates(basis: list[list], vec: list) -> list:
    """Coordinates of vec in the span of basis (assumed to contain it)."""
    aug = Matrix([[b[r] for b in basis] + [vec[r]] for r in range(len(vec))])
    m, pivots = aug.rref()
    if len(basis) in pivots:
        raise NotLie("bracket leaves the derived algebra")
    return [m[r][len(basis)] for r in range(len(basis))]


def classify_lie(S: StructureConstants) -> LieClass:
    problems = check_lie(S)
    if problems:
        raise NotLie("; ".join(problems[:3]))
    if S.dim != 3:
        raise NotLie(f"no Lie algebra list for dimension {S.dim}")

    products = [list(S.c[i][j]) for i in range(3) for j in range(3)]
    rows, pivots = Matrix(products).rref()
    derived = [rows[r] for r in range(len(pivots))]

    if not derived:
        return LieClass(LieTag.ABELIAN)

    if len(derived) == 1:
        z = derived[0]
        central = all(not any(S.mul(z, S.basis(i))) for i in range(3))
        return LieClass(LieTag.HEISENBERG if central else LieTag.R2_PLUS_C)

    if len(derived) == 3:
        raise NotLie("derived algebra is everything; not in the solvable list")

    outside = next(
        i for i in range(3) if Matrix(derived + [S.basis(i)]).rank() == 3
    )
    x = S.basis(outside)
    ad = [_coordinates(derived, S.mul(x, u)) for u in derived]
    # columns of ad are images of the derived basis
    tr  = ad[0][0] + ad[1][1]
    det = ad[0][0] * ad[1][1] - ad[1][0] * ad[0][1]
    if not det:
        raise NotLie("adjoint action on the derived algebra is singular")
    kappa = tr * tr / det
    if kappa == FOUR:
        half = tr / 2
        scalar = ad[0][1] == 0 and ad[1][0] == 0 and ad[0][0] == half
        return LieClass(LieTag.R3_LAMBDA, FOUR) if scalar else LieClass(LieTag.R3)
    return LieClass(LieTag.R3_LAMBDA, kappa)


def lie_degenerates(src: LieClass, dst: LieClass) -> bool:
    """Reflexive-transitive Lie degeneration order in dimension 3."""
    if src == dst or dst.tag == LieTag.ABELIAN:
        return True
    if dst.tag == LieTag.HEISENBERG:
        return src.tag in (LieTag.R2_PLUS_C, LieTag.R3) or (
            src.tag == LieTag.R3_LAMBDA and not src.is_r3_one
        )
    if dst.is_r3_one:
        return src.tag == LieTag.R3
    return False
