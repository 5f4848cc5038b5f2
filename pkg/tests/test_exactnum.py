import pickle
from fractions import Fraction

import pytest
from sympy.polys.domains import QQ, QQ_I

from novikov.errors import DivisionByZero
from novikov.exactnum import I, ONE, ZERO, Scalar


def test_field_operations():
    assert Scalar.of("1/2") + Scalar.of("1/3") == Scalar.of("5/6")
    assert I * I == Scalar(-1)
    assert Scalar(1, 1) * Scalar(1, -1) == Scalar(2)
    assert Scalar(1, 1).inv() == Scalar(Fraction(1, 2), Fraction(-1, 2))
    assert 3 - Scalar(1) == Scalar(2)
    assert 1 / Scalar(4) == Scalar(Fraction(1, 4))
    assert Scalar(2) ** -2 == Scalar(Fraction(1, 4))
    assert Scalar(0, 2) ** 0 == ONE


def test_inverse_of_zero_raises():
    with pytest.raises(DivisionByZero):
        ZERO.inv()
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_of_accepts_text_and_numbers():
    assert Scalar.of("i") == I
    assert Scalar.of("-3/4") == Scalar(Fraction(-3, 4))
    assert Scalar.of(Fraction(2, 3)) == Scalar(Fraction(2, 3))
    assert Scalar.of(5) == Scalar(5)
    assert Scalar.of("1 + 2*i") == Scalar(1, 2)


@pytest.mark.parametrize("value, text", [
    (Scalar(Fraction(1, 2)), "1/2"),
    (I, "i"),
    (-I, "-i"),
    (Scalar(1, -1), "1-i"),
    (Scalar(-1, 2), "-1+2*i"),
    (ZERO, "0"),
])
def test_str(value, text):
    assert str(value) == text


def test_sqrt_inside_gaussian_rationals():
    assert Scalar(-1).sqrt() == I
    assert Scalar(-4).sqrt() == Scalar(0, 2)
    assert Scalar(Fraction(9, 4)).sqrt() == Scalar(Fraction(3, 2))
    assert Scalar(0, 2).sqrt() == Scalar(1, 1)
    assert Scalar(2).sqrt() is None
    assert ZERO.sqrt() == ZERO


def test_real_scalars_hash_like_fractions():
    assert hash(Scalar(3)) == hash(Fraction(3))
    assert Scalar(3) == 3
    assert len({Scalar(1, 1), Scalar(1, 1), Scalar(1)}) == 2


def test_immutable_and_picklable():
    s = Scalar(Fraction(1, 3), -2)
    with pytest.raises(AttributeError):
        s.re = Fraction(0)
    assert pickle.loads(pickle.dumps(s)) == s


def test_sort_key_orders_by_real_then_imaginary():
    values = [Scalar(1), Scalar(0, 1), Scalar(-1), Scalar(0, -1)]
    assert sorted(values, key=Scalar.sort_key) == [Scalar(-1), Scalar(0, -1), Scalar(0, 1), Scalar(1)]


def test_scalars_live_in_the_gaussian_rational_domain():
    s = Scalar.of("3/4-2*i")
    assert s.rep == QQ_I(QQ(3, 4), QQ(-2))
    assert (s.re, s.im) == (Fraction(3, 4), Fraction(-2))
    assert Scalar.of(QQ_I(1, 2)) == Scalar(1, 2)
    assert Scalar.of("-3/4+i").sqrt() ** 2 == Scalar.of("-3/4+i")
