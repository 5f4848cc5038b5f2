"""
Dense exact matrices over any of the engine's fields (Scalar, RatFun) or
the polynomial ring MPoly. Elimination, inversion, products and
determinants run on sympy's ``DomainMatrix`` over the matching domain:
``QQ_I`` for Scalar, Q(i)(t) for RatFun, Q(i)[x...] for MPoly. Elimination
needs division, so it is only used with field entries.
"""

from __future__ import annotations

from functools import partial
from typing import Any, Callable, Iterable, NamedTuple, Sequence

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError, DMNonSquareMatrixError

from novikov.errors import Singular
from novikov.exactnum import ONE, ZERO, Scalar
from novikov.symring import T_DOMAIN, T_FIELD, MPoly, RatFun


class _Kind(NamedTuple):
    domain: Any
    lift: Callable    # engine element -> domain element
    wrap: Callable    # domain element -> engine element


def _kind_of(*matrices: "Matrix") -> _Kind:
    sample = next(
        (x for m in matrices for r in m.rows for x in r if not isinstance(x, Scalar)),
        matrices[0].one,
    )
    if isinstance(sample, RatFun):
        return _Kind(
            T_DOMAIN,
            lambda x: x.rep if isinstance(x, RatFun) else T_FIELD.ground_new(Scalar.of(x).rep),
            RatFun,
        )
    if isinstance(sample, MPoly):
        ring = sample.ring
        return _Kind(
            ring.to_domain(),
            lambda x: x.rep if isinstance(x, MPoly) else ring.ground_new(Scalar.of(x).rep),
            partial(MPoly._wrap, sample.vars),
        )
    return _Kind(QQ_I, lambda x: Scalar.of(x).rep, Scalar._wrap)


class Matrix:
    __slots__ = ("rows", "nrows", "ncols", "zero", "one")

    def __init__(self, rows: Iterable[Iterable], zero=ZERO, one=ONE):
        self.rows  = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        self.zero  = zero
        self.one   = one
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int, zero=ZERO, one=ONE) -> "Matrix":
        return cls(([one if i == j else zero for j in range(n)] for i in range(n)), zero, one)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, zero=ZERO, one=ONE) -> "Matrix":
        return cls(([zero] * ncols for _ in range(nrows)), zero, one)

    def _like(self, rows) -> "Matrix":
        return Matrix(rows, self.zero, self.one)

    def _to_dm(self, kind: _Kind) -> DomainMatrix:
        rows = [[kind.lift(x) for x in r] for r in self.rows]
        return DomainMatrix(rows, (self.nrows, self.ncols), kind.domain)

    def _from_dm(self, dm: DomainMatrix, kind: _Kind) -> "Matrix":
        return self._like([kind.wrap(x) for x in r] for r in dm.to_list())

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return self._like(zip(*self.rows)) if self.rows else self

    def map(self, fn: Callable, zero=None, one=None) -> "Matrix":
        return Matrix(
            ([fn(x) for x in r] for r in self.rows),
            self.zero if zero is None else zero,
            self.one if one is None else one,
        )

    # ── Arithmetic ────────────────────────────

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._like([a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._like([a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows))

    def __neg__(self) -> "Matrix":
        return self._like([-a for a in r] for r in self.rows)

    def scale(self, c) -> "Matrix":
        return self._like([c * a for a in r] for r in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        if not self.rows or not other.ncols:
            return Matrix.zeros(self.nrows, other.ncols, self.zero, self.one)
        kind = _kind_of(self, other)
        return self._from_dm(self._to_dm(kind) * other._to_dm(kind), kind)

    def apply(self, vec: Sequence) -> list:
        out = []
        for r in self.rows:
            acc = self.zero
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def power(self, k: int) -> "Matrix":
        if not self.rows:
            return self
        kind = _kind_of(self)
        return self._from_dm(self._to_dm(kind) ** k, kind)

    def trace(self):
        acc = self.zero
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    # ── Elimination (field entries) ───────────

    def rref(self) -> tuple[list[list], list[int]]:
        """Reduced row echelon form and the pivot columns."""
        if not self.rows:
            return [], []
        kind = _kind_of(self)
        m, pivots = self._to_dm(kind).rref()
        return [[kind.wrap(x) for x in r] for r in m.to_list()], list(pivots)

    def rank(self) -> int:
        if not self.rows:
            return 0
        return self._to_dm(_kind_of(self)).rank()

    def nullspace(self) -> list[list]:
        """Basis with a 1 in each free column and -rref entries in the pivot columns."""
        if not self.rows:
            return [list(r) for r in Matrix.identity(self.ncols, self.zero, self.one).rows]
        kind = _kind_of(self)
        m, pivots = self._to_dm(kind).rref()
        basis = m.nullspace_from_rref(pivots)
        return [[kind.wrap(x) for x in r] for r in basis.to_list()]

    def invert(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise Singular("only square matrices can be inverted")
        kind = _kind_of(self)
        try:
            inv = self._to_dm(kind).inv()
        except (DMNonInvertibleMatrixError, DMNonSquareMatrixError) as exc:
            raise Singular("matrix is singular over its field") from exc
        return self._from_dm(inv, kind)

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if not self.rows:
            return self.one
        kind = _kind_of(self)
        return kind.wrap(self._to_dm(kind).det())

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self})"


def rank_nullspace(m: Matrix) -> tuple[int, list[list]]:
    basis = m.nullspace()
    return m.ncols - len(basis), basis


def invert(m: Matrix) -> Matrix:
    return m.invert()


def matmul_power_trace(m: Matrix, k: int):
    p = m.power(k)
    return p, p.trace()
