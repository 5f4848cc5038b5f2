"""
Operator polynomials in L(x) and R(x).

Text form: a sum of terms ``coef * trL^p * trR^q * WORD`` where WORD is a
string over {L, R} read left to right as a matrix product, or ``I`` for
the identity. Any factor may be omitted. Example::

    LRR - 2*RLR + RRL
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Mapping

from novikov.algebra import StructureConstants, left_right_operators
from novikov.errors import ParseError
from novikov.exactnum import ONE, ZERO, Scalar
from novikov.linalg import Matrix
from novikov.symring import parse_expr

UNIVERSAL_IDENTITY = "LRR - 2*RLR + RRL"

_TRACE = re.compile(r"^tr([LR])(?:\^(\d+))?$")
_WORD  = re.compile(r"^[LRI]+$")


class OpExpr:
    """Formal sum keyed by (p, q, word); the empty word is the identity."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int, str], Scalar] | None = None):
        merged: dict[tuple[int, int, str], Scalar] = {}
        for key, coef in (terms or {}).items():
            merged[key] = merged.get(key, ZERO) + coef
        self.terms = {k: v for k, v in merged.items() if v}

    @classmethod
    def parse(cls, text: str, bindings: Mapping[str, Scalar] | None = None) -> "OpExpr":
        bindings = dict(bindings or {})
        terms: dict[tuple[int, int, str], Scalar] = {}
        for sign, chunk, at in _split_terms(text):
            coef, p, q, word = Scalar(sign), 0, 0, ""
            for factor in _split_top(chunk, "*"):
                f = factor.strip()
                trace = _TRACE.match(f)
                if trace:
                    power = int(trace.group(2) or 1)
                    if trace.group(1) == "L":
                        p += power
                    else:
                        q += power
                elif _WORD.match(f):
                    word += f.replace("I", "")
                elif f:
                    coef = coef * parse_expr(f, bindings).scalar(bindings)
                else:
                    raise ParseError("empty factor", text, at)
            key = (p, q, word)
            terms[key] = terms.get(key, ZERO) + coef
        return cls(terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (p, q, word), coef in sorted(self.terms.items()):
            factors = [] if coef in (ONE, -ONE) else [str(coef) if coef.is_real else f"({coef})"]
            if p:
                factors.append("trL" if p == 1 else f"trL^{p}")
            if q:
                factors.append("trR" if q == 1 else f"trR^{q}")
            factors.append(word or "I")
            text = "*".join(factors)
            parts.append(f"-{text}" if coef == -ONE else text)
        return " + ".join(parts).replace("+ -", "- ")

    def __eq__(self, other) -> bool:
        return isinstance(other, OpExpr) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:k])
            start = k + 1
    parts.append(text[start:])
    return parts


def _split_terms(text: str) -> list[tuple[int, str, int]]:
    """Signed top-level summands as (sign, body, position)."""
    pieces, depth, start, sign, prev = [], 0, 0, 1, ""
    for k, ch in enumerate(text):
        if ch.isspace():
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and prev not in ("", "*", "/", "^", "+", "-"):
            pieces.append((sign, text[start:k], start))
            sign, start, prev = (1 if ch == "+" else -1), k + 1, ch
            continue
        prev = ch
    pieces.append((sign, text[start:], start))
    cleaned = []
    for sign, body, at in pieces:
        body = body.strip()
        while body.startswith(("-", "+")):
            if body[0] == "-":
                sign = -sign
            body = body[1:].strip()
        if not body:
            raise ParseError("empty term", text, at)
        cleaned.append((sign, body, at))
    return cleaned


@lru_cache(maxsize=None)
def _operators(S: StructureConstants) -> tuple[Matrix, Matrix]:
    return left_right_operators(S)


def evaluate_operator(S: StructureConstants, T: OpExpr) -> Matrix:
    """T(x) for S as a matrix of polynomials in x1..x_dim."""
    L, R = _operators(S)
    trL, trR = L.trace(), R.trace()
    total = Matrix.zeros(S.dim, S.dim, L.zero, L.one)
    words: dict[str, Matrix] = {"": Matrix.identity(S.dim, L.zero, L.one)}
    for (p, q, word), coef in T.terms.items():
        if word not in words:
            m = words[""]
            for letter in word:
                m = m @ (L if letter == "L" else R)
            words[word] = m
        factor = L.one * coef
        if p:
            factor = factor * trL ** p
        if q:
            factor = factor * trR ** q
        if factor:
            total = total + words[word].scale(factor)
    return total


def check_operator_identity(S: StructureConstants, T: OpExpr) -> bool:
    return evaluate_operator(S, T).is_zero()
