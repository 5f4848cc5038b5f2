"""
Algebras
========
Structure constants and the invariants used to separate orbits.

  - ``StructureConstants``  c[i][j][k] with e_i·e_j = Σ_k c[i][j][k] e_k (0-based)
  - axioms, left/right multiplication operators, (α,β,γ)-derivations,
    annihilators, dim A·A, completeness, trace invariants c_{i,j} / d_{i,j},
    associated Lie and Jordan-type algebras, basis-change transport

Identity checks expand polynomials completely; nothing here samples at
random points. Invariant functions are memoized on the (hashable) algebra.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Callable, Mapping, NamedTuple, Sequence

from novikov.errors import NotNovikov
from novikov.exactnum import ONE, ZERO, Scalar
from novikov.linalg import Matrix
from novikov.symring import MPoly

logger = logging.getLogger(__name__)


class StructureConstants:
    __slots__ = ("dim", "c", "zero", "one", "_hash")

    def __init__(self, dim: int, c: Sequence, zero=ZERO, one=ONE):
        self.dim  = dim
        self.c    = tuple(tuple(tuple(c[i][j]) for j in range(dim)) for i in range(dim))
        self.zero = zero
        self.one  = one
        self._hash = None
        if any(len(v) != dim for row in self.c for v in row):
            raise ValueError("structure tensor has the wrong shape")

    @classmethod
    def zero_algebra(cls, dim: int) -> "StructureConstants":
        return cls(dim, [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)])

    @classmethod
    def from_products(cls, dim: int, products: Mapping[tuple[int, int], Mapping[int, object]]) -> "StructureConstants":
        """Build from 1-based {(i, j): {k: coef}}, i.e. e_i·e_j = Σ coef e_k."""
        c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in products.items():
            for k, coef in vec.items():
                c[i - 1][j - 1][k - 1] = Scalar.of(coef)
        return cls(dim, c)

    # ── Products ──────────────────────────────

    def product(self, i: int, j: int) -> tuple:
        return self.c[i][j]

    def mul(self, u: Sequence, v: Sequence) -> list:
        out = [self.zero] * self.dim
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if not vb:
                    continue
                w = ua * vb
                for k, coef in enumerate(self.c[a][b]):
                    if coef:
                        out[k] = out[k] + w * coef
        return out

    def basis(self, i: int) -> list:
        return [self.one if k == i else self.zero for k in range(self.dim)]

    def map(self, fn: Callable, zero=ZERO, one=ONE) -> "StructureConstants":
        return StructureConstants(
            self.dim,
            [[[fn(x) for x in v] for v in row] for row in self.c],
            zero,
            one,
        )

    def is_commutative(self) -> bool:
        return all(self.c[i][j] == self.c[j][i] for i in range(self.dim) for j in range(self.dim))

    def __eq__(self, other) -> bool:
        return isinstance(other, StructureConstants) and self.dim == other.dim and self.c == other.c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, self.c))
        return self._hash

    def nonzero_products(self) -> list[tuple[int, int, tuple]]:
        return [
            (i, j, self.c[i][j])
            for i in range(self.dim)
            for j in range(self.dim)
            if any(self.c[i][j])
        ]

    def __str__(self) -> str:
        parts = []
        for i, j, vec in self.nonzero_products():
            terms = []
            for k, coef in enumerate(vec):
                if coef:
                    terms.append(f"e{k + 1}" if coef == self.one else f"({coef})e{k + 1}")
            parts.append(f"e{i + 1}e{j + 1}=" + "+".join(terms))
        return ", ".join(parts) or "0"

    def __repr__(self) -> str:
        return f"StructureConstants({self})"


# ──────────────────────────────────────────────
# Axioms
# ──────────────────────────────────────────────

class Violation(NamedTuple):
    identity: int
    i: int
    j: int
    k: int


def check_novikov(S: StructureConstants) -> list[Violation]:
    """Empty list iff both Novikov identities hold on all basis triples."""
    n = S.dim
    e = [S.basis(i) for i in range(n)]
    prod = [[list(S.c[i][j]) for j in range(n)] for i in range(n)]
    violations = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                xy_z = S.mul(prod[i][j], e[k])
                x_yz = S.mul(e[i], prod[j][k])
                yx_z = S.mul(prod[j][i], e[k])
                y_xz = S.mul(e[j], prod[i][k])
                if any(a - b - c + d for a, b, c, d in zip(xy_z, x_yz, yx_z, y_xz)):
                    violations.append(Violation(1, i + 1, j + 1, k + 1))
                xz_y = S.mul(prod[i][k], e[j])
                if any(a - b for a, b in zip(xy_z, xz_y)):
                    violations.append(Violation(2, i + 1, j + 1, k + 1))
    return violations


def is_novikov(S: StructureConstants) -> bool:
    return not check_novikov(S)


# ──────────────────────────────────────────────
# Multiplication operators
# ──────────────────────────────────────────────

def coordinate_ring(dim: int, symbols: Sequence[str] = ("x",)) -> tuple[str, ...]:
    return tuple(f"{s}{k + 1}" for s in symbols for k in range(dim))


def left_right_operators(
    S: StructureConstants,
    symbol: str = "x",
    ring: Sequence[str] | None = None,
) -> tuple[Matrix, Matrix]:
    """L(x) and R(x) as matrices over MPoly in symbol1..symbol_dim."""
    n = S.dim
    ring = tuple(ring) if ring is not None else coordinate_ring(n, (symbol,))
    xs = [MPoly.var(ring, f"{symbol}{k + 1}") for k in range(n)]
    zero, one = MPoly.zero(ring), MPoly.constant(ring, 1)
    L = [[zero] * n for _ in range(n)]
    R = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, coef in enumerate(S.c[i][j]):
                if coef:
                    L[k][j] = L[k][j] + xs[i] * coef
                    R[k][i] = R[k][i] + xs[j] * coef
    return Matrix(L, zero, one), Matrix(R, zero, one)


def basis_operators(S: StructureConstants) -> tuple[list[Matrix], list[Matrix]]:
    """L(e_i) and R(e_i) over Scalar."""
    n = S.dim
    lefts, rights = [], []
    for i in range(n):
        lefts.append(Matrix([[S.c[i][j][k] for j in range(n)] for k in range(n)]))
        rights.append(Matrix([[S.c[j][i][k] for j in range(n)] for k in range(n)]))
    return lefts, rights


# ──────────────────────────────────────────────
# Linear invariants
# ──────────────────────────────────────────────

@lru_cache(maxsize=None)
def derivation_dim(S: StructureConstants, weights: tuple = (ONE, ONE, ONE)) -> int:
    """dim of {D : α D(e_i e_j) = β D(e_i)e_j + γ e_i D(e_j)}."""
    alpha, beta, gamma = (Scalar.of(w) for w in weights)
    n = S.dim
    c = S.c
    rows = []
    for i in range(n):
        for j in range(n):
            for m in range(n):
                row = [ZERO] * (n * n)
                # unknown d[k][l] lives at k*n + l, D e_l = Σ_k d[k][l] e_k
                for k in range(n):
                    if c[i][j][k]:
                        row[m * n + k] = row[m * n + k] + alpha * c[i][j][k]
                    if c[k][j][m]:
                        row[k * n + i] = row[k * n + i] - beta * c[k][j][m]
                    if c[i][k][m]:
                        row[k * n + j] = row[k * n + j] - gamma * c[i][k][m]
                if any(row):
                    rows.append(row)
    if not rows:
        return n * n
    return n * n - Matrix(rows).rank()


@lru_cache(maxsize=None)
def annihilator_dims(S: StructureConstants) -> tuple[int, int]:
    """(dim of the left annihilator, dim of the right annihilator)."""
    n = S.dim
    left  = [[S.c[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    right = [[S.c[i][j][k] for j in range(n)] for i in range(n) for k in range(n)]
    return n - Matrix(left).rank(), n - Matrix(right).rank()


@lru_cache(maxsize=None)
def square_dim(S: StructureConstants) -> int:
    vecs = [list(S.c[i][j]) for i in range(S.dim) for j in range(S.dim)]
    return Matrix(vecs).rank()


@lru_cache(maxsize=None)
def is_complete(S: StructureConstants, shortcut: bool = False) -> bool:
    """True iff every R(x) is nilpotent."""
    n = S.dim
    if shortcut:
        if not is_novikov(S):
            raise NotNovikov("commuting right multiplications need a Novikov algebra")
        _, rights = basis_operators(S)
        return all(r.power(n).is_zero() for r in rights)
    _, R = left_right_operators(S)
    return R.power(n).is_zero()


# ──────────────────────────────────────────────
# Trace invariants
# ──────────────────────────────────────────────

@lru_cache(maxsize=None)
def _xy_operators(S: StructureConstants, kind: str) -> tuple[Matrix, Matrix]:
    ring = coordinate_ring(S.dim, ("x", "y"))
    Lx, Rx = left_right_operators(S, "x", ring)
    Ly, Ry = left_right_operators(S, "y", ring)
    return (Lx, Ly) if kind == "c" else (Rx, Ry)


@lru_cache(maxsize=None)
def trace_invariant(S: StructureConstants, kind: str, i: int, j: int) -> Scalar | None:
    """
    c_{i,j} (kind "c", from L) or d_{i,j} (kind "d", from R).

    Returns the constant q with tr(M(x)^i) tr(M(y)^j) = q · tr(M(x)^i M(y)^j),
    or None when tr(M(x)^i M(y)^j) vanishes or no such constant exists.
    """
    if kind not in ("c", "d"):
        raise ValueError(f"unknown trace invariant kind {kind!r}")
    if i < 1 or j < 1:
        raise ValueError("trace invariants need i, j >= 1")
    Mx, My = _xy_operators(S, kind)
    Px, Py = Mx.power(i), My.power(j)
    P = (Px @ Py).trace()
    Q = Px.trace() * Py.trace()
    if not P:
        return None
    mono, p = next(iter(P.terms.items()))
    q = Q.terms.get(mono, ZERO) / p
    if Q != P * q:
        return None
    return q


# ──────────────────────────────────────────────
# Associated algebras
# ──────────────────────────────────────────────

def _combine(S: StructureConstants, sign: int) -> StructureConstants:
    n = S.dim
    c = [
        [[S.c[i][j][k] + S.c[j][i][k] if sign > 0 else S.c[i][j][k] - S.c[j][i][k] for k in range(n)]
         for j in range(n)]
        for i in range(n)
    ]
    return StructureConstants(n, c, S.zero, S.one)


def is_associative(S: StructureConstants) -> bool:
    n = S.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left  = S.mul(list(S.c[i][j]), S.basis(k))
                right = S.mul(S.basis(i), list(S.c[j][k]))
                if left != right:
                    return False
    return True


def associated_algebras(S: StructureConstants) -> tuple[StructureConstants, StructureConstants, bool]:
    """(Lie bracket xy - yx, Jordan-type product xy + yx, whether the latter is associative)."""
    lie    = _combine(S, -1)
    jordan = _combine(S, +1)
    return lie, jordan, is_associative(jordan)


# ──────────────────────────────────────────────
# Basis change
# ──────────────────────────────────────────────

def transport(S: StructureConstants, h: Matrix) -> StructureConstants:
    """
    (h∘μ)(x, y) = h μ(h⁻¹x, h⁻¹y).

    The new basis vectors are the columns of h⁻¹; entries may live in any
    field that Scalar coefficients multiply into (Scalar, RatFun).
    """
    n = S.dim
    hinv = h.invert()
    cols = [list(hinv.col(i)) for i in range(n)]
    c = [[h.apply(S.mul(cols[i], cols[j])) for j in range(n)] for i in range(n)]
    return StructureConstants(n, c, h.zero, h.one)


def verify_isomorphism(S_A: StructureConstants, S_B: StructureConstants, h: Matrix) -> bool:
    return transport(S_A, h) == S_B
