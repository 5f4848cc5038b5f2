"""
Symbolic Rings
==============
Exact polynomial arithmetic over Q(i), backed by sympy's sparse rings.

  - ``MPoly``   multivariate polynomial over a fixed, ordered variable list
  - ``RatFun``  rational function in the contraction parameter t, reduced,
                with a monic denominator
  - ``parse_expr``  recursive-descent parser for the catalog expression grammar

Grammar (whitespace is insignificant)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' int)?
    base   := number | 'i' | symbol | '(' expr ')' | '-' factor
    int    := ['-'] digits | '{' ['-'] digits '}' | '(' ['-'] digits ')'

Parsed expressions fold into any field: ``RatFun`` once parameters are bound
to scalars, or a sympy fraction field when parameters stay symbolic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence, TypeVar

from sympy.polys.domains import QQ_I
from sympy.polys.fields import field
from sympy.polys.rings import PolyRing

from novikov.errors import (
    DivisionByZero,
    NovikovError,
    ParseError,
    PoleAtZero,
    UnknownSymbol,
    VariableMismatch,
)
from novikov.exactnum import ONE, I, Scalar

F = TypeVar("F")


# ──────────────────────────────────────────────
# Multivariate polynomials
# ──────────────────────────────────────────────

@lru_cache(maxsize=None)
def poly_ring(vars: tuple[str, ...]) -> PolyRing:
    return PolyRing(vars, QQ_I)


class MPoly:
    """Polynomial over Q(i); ``terms`` maps exponent tuples to nonzero Scalars."""

    __slots__ = ("vars", "rep")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, Scalar] | None = None):
        self.vars = tuple(vars)
        self.rep  = poly_ring(self.vars).from_dict(
            {tuple(e): Scalar.of(c).rep for e, c in (terms or {}).items()}
        )

    @classmethod
    def _wrap(cls, vars: tuple[str, ...], rep) -> "MPoly":
        p = object.__new__(cls)
        p.vars, p.rep = vars, rep
        return p

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "MPoly":
        return cls(vars)

    @classmethod
    def constant(cls, vars: Sequence[str], value) -> "MPoly":
        vars = tuple(vars)
        return cls._wrap(vars, poly_ring(vars).ground_new(Scalar.of(value).rep))

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> "MPoly":
        vars = tuple(vars)
        if name not in vars:
            raise UnknownSymbol(name)
        return cls._wrap(vars, poly_ring(vars).gens[vars.index(name)])

    @property
    def ring(self) -> PolyRing:
        return self.rep.ring

    @property
    def terms(self) -> dict[tuple, Scalar]:
        return {e: Scalar._wrap(c) for e, c in self.rep.iterterms()}

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise VariableMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, (Scalar, int)):
            return MPoly.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other) -> "MPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MPoly._wrap(self.vars, self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._wrap(self.vars, -self.rep)

    def __sub__(self, other) -> "MPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MPoly._wrap(self.vars, self.rep - other.rep)

    def __rsub__(self, other) -> "MPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (Scalar, int)):
            return MPoly._wrap(self.vars, self.rep.mul_ground(Scalar.of(other).rep))
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MPoly._wrap(self.vars, self.rep * other.rep)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        return MPoly._wrap(self.vars, self.rep ** k)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Scalar, int)):
            other = MPoly.constant(self.vars, other)
        if not isinstance(other, MPoly):
            return False
        return self.vars == other.vars and self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.vars, self.rep))

    def __bool__(self) -> bool:
        return bool(self.rep)

    def is_zero(self) -> bool:
        return not self.rep

    def degree(self) -> int:
        return max((sum(e) for e in self.rep.itermonoms()), default=-1)

    def evaluate(self, values: Mapping[str, Scalar]) -> Scalar:
        missing = [v for v in self.vars if v not in values]
        if missing and self.rep:
            raise UnknownSymbol(missing[0])
        point = [Scalar.of(values[v]).rep if v in values else QQ_I.zero for v in self.vars]
        return Scalar._wrap(self.rep(*point))

    def substitute(self, name: str, value) -> "MPoly":
        """Replace one variable by a Scalar or an MPoly over the same variables."""
        if name not in self.vars:
            raise UnknownSymbol(name)
        value = self._lift(value)
        gen = self.ring.gens[self.vars.index(name)]
        return MPoly._wrap(self.vars, self.rep.compose(gen, value.rep))

    def sorted_terms(self) -> list[tuple[tuple, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-k for k in kv[0])))

    def __str__(self) -> str:
        if not self.rep:
            return "0"
        parts = []
        for exp, coef in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, exp) if k
            )
            parts.append(_term_text(coef, mono))
        return _join_terms(parts)

    def __repr__(self) -> str:
        return f"MPoly({self})"


def _coef_text(c: Scalar) -> str:
    return str(c) if c.is_real else f"({c})"


def _term_text(coef: Scalar, mono: str) -> str:
    if not mono:
        return _coef_text(coef)
    if coef == ONE:
        return mono
    if coef == -ONE:
        return f"-{mono}"
    return f"{_coef_text(coef)}*{mono}"


def _join_terms(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else f"+{p}"
    return out


# ──────────────────────────────────────────────
# Rational functions in t
# ──────────────────────────────────────────────

T_FIELD, _T = field("t", QQ_I)
T_DOMAIN = T_FIELD.to_domain()


def _t_poly_text(p) -> str:
    if not p:
        return "0"
    parts = []
    for (k,), c in sorted(p.iterterms(), reverse=True):
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        parts.append(_term_text(Scalar._wrap(c), mono))
    return _join_terms(parts)


class RatFun:
    """num/den with gcd(num, den) = 1 and a monic denominator."""

    __slots__ = ("rep",)

    def __init__(self, rep):
        numer, denom = rep.numer, rep.denom
        if not numer:
            rep = T_FIELD.zero
        elif denom.LC != QQ_I.one:
            u = QQ_I.one / denom.LC
            rep = T_FIELD.raw_new(numer.mul_ground(u), denom.mul_ground(u))
        self.rep = rep

    @classmethod
    def const(cls, c) -> "RatFun":
        return cls(T_FIELD.ground_new(Scalar.of(c).rep))

    @classmethod
    def t(cls) -> "RatFun":
        return cls(_T)

    @property
    def num(self):
        return self.rep.numer

    @property
    def den(self):
        return self.rep.denom

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_ground

    def _lift(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, (Scalar, int)):
            return RatFun.const(other)
        return NotImplemented

    def __add__(self, other) -> "RatFun":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RatFun(self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.rep)

    def __sub__(self, other) -> "RatFun":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RatFun(self.rep - other.rep)

    def __rsub__(self, other) -> "RatFun":
        return self._lift(other) - self

    def __mul__(self, other) -> "RatFun":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RatFun(self.rep * other.rep)

    __rmul__ = __mul__

    def inv(self) -> "RatFun":
        if not self.rep:
            raise DivisionByZero("inverse of the zero rational function")
        return RatFun(self.rep ** -1)

    def __truediv__(self, other) -> "RatFun":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other) -> "RatFun":
        return self._lift(other) * self.inv()

    def __pow__(self, k: int) -> "RatFun":
        if k < 0:
            return self.inv() ** (-k)
        return RatFun(self.rep ** k)

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(self.rep)

    def __bool__(self) -> bool:
        return bool(self.rep)

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise NovikovError(f"{self} is not a constant")
        return Scalar._wrap(self.num.const())

    def order_at_zero(self) -> int:
        if not self.rep:
            raise ValueError("order of zero")
        return self.num.tail_degree() - self.den.tail_degree()

    def limit_at_zero(self) -> Scalar:
        """f(0) after reduction; PoleAtZero if t divides the denominator."""
        den0 = self.den.const()
        if not den0:
            raise PoleAtZero(f"{self} has a pole of order {-self.order_at_zero()} at t=0")
        return Scalar._wrap(self.num.const() / den0)

    def evaluate(self, x: Scalar) -> Scalar:
        d = self.den(x.rep)
        if not d:
            raise DivisionByZero(f"{self} evaluated at a pole")
        return Scalar._wrap(self.num(x.rep) / d)

    def __str__(self) -> str:
        if self.is_polynomial:
            return _t_poly_text(self.num)
        return f"({_t_poly_text(self.num)})/({_t_poly_text(self.den)})"

    def __repr__(self) -> str:
        return f"RatFun({self})"


def ratfun_limit_at_zero(f: RatFun) -> Scalar:
    return f.limit_at_zero()


# ──────────────────────────────────────────────
# Expression trees
# ──────────────────────────────────────────────

class Expr:
    """Parsed expression; bind parameters, then compute in t."""

    def symbols(self) -> set[str]:
        raise NotImplementedError

    def fold(self, num: Callable[[Scalar], F], sym: Callable[[str], F]) -> F:
        """Evaluate bottom-up in any field: ``num`` lifts constants, ``sym`` resolves names."""
        raise NotImplementedError

    def evaluate(self, bindings: Mapping[str, Scalar]) -> RatFun:
        def sym(name: str) -> RatFun:
            if name in bindings:
                return RatFun.const(bindings[name])
            if name == "t":
                return RatFun.t()
            raise UnknownSymbol(name)

        return self.fold(RatFun.const, sym)

    def scalar(self, bindings: Mapping[str, Scalar] | None = None) -> Scalar:
        value = self.evaluate(bindings or {})
        if not value.is_constant():
            raise NovikovError(f"{self} still depends on t")
        return value.constant_value()


@dataclass(frozen=True)
class Num(Expr):
    value: Scalar

    def symbols(self) -> set[str]:
        return set()

    def fold(self, num, sym):
        return num(self.value)

    def __str__(self) -> str:
        return _coef_text(self.value)


@dataclass(frozen=True)
class Sym(Expr):
    name: str

    def symbols(self) -> set[str]:
        return {self.name}

    def fold(self, num, sym):
        return sym(self.name)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def symbols(self) -> set[str]:
        return self.arg.symbols()

    def fold(self, num, sym):
        return -self.arg.fold(num, sym)

    def __str__(self) -> str:
        return f"-({self.arg})"


@dataclass(frozen=True)
class Bin(Expr):
    op: str
    left: Expr
    right: Expr

    def symbols(self) -> set[str]:
        return self.left.symbols() | self.right.symbols()

    def fold(self, num, sym):
        a = self.left.fold(num, sym)
        b = self.right.fold(num, sym)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        return a / b

    def __str__(self) -> str:
        return f"({self.left}){self.op}({self.right})"


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exp: int

    def symbols(self) -> set[str]:
        return self.base.symbols()

    def fold(self, num, sym):
        return self.base.fold(num, sym) ** self.exp

    def __str__(self) -> str:
        return f"({self.base})^{self.exp}"


# ──────────────────────────────────────────────
# Parser
# ──────────────────────────────────────────────

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        number, name, char = m.groups()
        start = m.start(m.lastindex)
        if number is not None:
            tokens.append(("num", number, start))
        elif name is not None:
            tokens.append(("name", name, start))
        elif char in "+-*/^(){}":
            tokens.append(("op", char, start))
        else:
            raise ParseError(f"unexpected character {char!r}", text, start)
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, symbols: set[str]):
        self.text    = text
        self.symbols = symbols
        self.tokens  = _tokenize(text)
        self.pos     = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str) -> None:
        kind, tok, at = self.take()
        if tok != value or kind != "op":
            raise ParseError(f"expected {value!r}", self.text, at)

    def parse(self) -> Expr:
        node = self.expr()
        kind, tok, at = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {tok!r}", self.text, at)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = Bin(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = Bin(op, node, self.factor())
        return node

    def factor(self) -> Expr:
        node = self.base()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            node = Pow(node, self.exponent())
        return node

    def exponent(self) -> int:
        closer = None
        if self.peek()[1] in ("{", "("):
            closer = "}" if self.take()[1] == "{" else ")"
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, tok, at = self.take()
        if kind != "num":
            raise ParseError("expected an integer exponent", self.text, at)
        if closer:
            self.expect(closer)
        return sign * int(tok)

    def base(self) -> Expr:
        kind, tok, at = self.take()
        if kind == "num":
            return Num(Scalar(int(tok)))
        if kind == "name":
            if tok == "i":
                return Num(I)
            if tok not in self.symbols:
                raise UnknownSymbol(tok)
            return Sym(tok)
        if tok == "(":
            node = self.expr()
            self.expect(")")
            return node
        if tok == "-":
            return Neg(self.factor())
        raise ParseError(f"unexpected {tok or 'end of input'!r}", self.text, at)


def parse_expr(text: str, symbols: Iterable[str] = ("t",)) -> Expr:
    """Parse ``text``; every identifier other than ``i`` must be declared."""
    return _Parser(text, set(symbols)).parse()


def parse_scalar(text: str) -> Scalar:
    return parse_expr(text, ()).scalar()


def parse_ratfun(text: str, bindings: Mapping[str, Scalar] | None = None) -> RatFun:
    bindings = dict(bindings or {})
    return parse_expr(text, set(bindings) | {"t"}).evaluate(bindings)
