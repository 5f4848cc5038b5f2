from fractions import Fraction

import pytest

from novikov.algebra import StructureConstants
from novikov.errors import NotLie
from novikov.exactnum import Scalar
from novikov.lie import LieClass, LieTag, check_lie, classify_lie, lie_degenerates


def bracket(pairs) -> StructureConstants:
    """Antisymmetric extension of {(i, j): {k: coef}} with i < j."""
    products = {}
    for (i, j), vec in pairs.items():
        products[(i, j)] = vec
        products[(j, i)] = {k: -Scalar.of(v) for k, v in vec.items()}
    return StructureConstants.from_products(3, products)


N3      = bracket({(1, 2): {3: 1}})
R2C     = bracket({(1, 2): {2: 1}})
R3      = bracket({(1, 3): {1: -1}, (2, 3): {1: -1, 2: -1}})
R3_TWO  = bracket({(1, 3): {1: -1}, (2, 3): {2: -2}})
R3_ONE  = bracket({(1, 3): {1: -1}, (2, 3): {2: -1}})


def test_classify_solvable_brackets():
    assert classify_lie(StructureConstants.zero_algebra(3)) == LieClass(LieTag.ABELIAN)
    assert classify_lie(N3) == LieClass(LieTag.HEISENBERG)
    assert classify_lie(R2C) == LieClass(LieTag.R2_PLUS_C)
    assert classify_lie(R3) == LieClass(LieTag.R3)
    assert classify_lie(R3_TWO) == LieClass.r3_lambda(2)
    assert classify_lie(R3_ONE) == LieClass.r3_lambda(1)


def test_r3_lambda_identifies_lambda_and_its_inverse():
    assert LieClass.r3_lambda(2) == LieClass.r3_lambda(Fraction(1, 2))
    assert LieClass.r3_lambda(2) != LieClass.r3_lambda(3)
    assert LieClass.r3_lambda(2).lam_pair == frozenset({Scalar(2), Scalar(Fraction(1, 2))})
    assert str(LieClass.r3_lambda(2)) == "r3,{1/2,2}"
    assert LieClass.r3_lambda(1).is_r3_one


def test_r3_lambda_rejects_zero():
    with pytest.raises(ValueError):
        LieClass.r3_lambda(0)
    with pytest.raises(ValueError):
        LieClass(LieTag.R3_LAMBDA)


def test_non_lie_products():
    not_antisymmetric = StructureConstants.from_products(3, {(1, 1): {1: 1}})
    assert check_lie(not_antisymmetric)
    with pytest.raises(NotLie):
        classify_lie(not_antisymmetric)
    assert check_lie(N3) == []


@pytest.mark.parametrize("src, dst, expected", [
    (LieClass(LieTag.R2_PLUS_C), LieClass(LieTag.HEISENBERG), True),
    (LieClass(LieTag.HEISENBERG), LieClass(LieTag.R2_PLUS_C), False),
    (LieClass(LieTag.R3), LieClass.r3_lambda(1), True),
    (LieClass.r3_lambda(1), LieClass(LieTag.HEISENBERG), False),
    (LieClass.r3_lambda(2), LieClass(LieTag.HEISENBERG), True),
    (LieClass.r3_lambda(2), LieClass.r3_lambda(3), False),
    (LieClass(LieTag.HEISENBERG), LieClass(LieTag.ABELIAN), True),
    (LieClass(LieTag.ABELIAN), LieClass(LieTag.HEISENBERG), False),
    (LieClass(LieTag.R3), LieClass(LieTag.R3), True),
])
def test_lie_degeneration_order(src, dst, expected):
    assert lie_degenerates(src, dst) is expected
