import pytest

from novikov.errors import Singular
from novikov.exactnum import Scalar
from novikov.linalg import Matrix
from novikov.symring import MPoly, RatFun, parse_ratfun


def M(rows) -> Matrix:
    return Matrix([[Scalar.of(x) for x in r] for r in rows])


def test_rank_and_nullspace():
    assert M([[1, 2], [2, 4]]).rank() == 1
    assert M([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).rank() == 3
    assert M([[1, 1]]).nullspace() == [[Scalar(-1), Scalar(1)]]
    assert M([[0, 0], [0, 0]]).rank() == 0


def test_invert():
    m = M([[1, 2], [3, 4]])
    assert m @ m.invert() == Matrix.identity(2)
    assert m.invert() == M([["-2", "1"], ["3/2", "-1/2"]])


def test_invert_singular():
    with pytest.raises(Singular):
        M([[1, 2], [2, 4]]).invert()
    with pytest.raises(Singular):
        M([[1, 2, 3]]).invert()


def test_det_small_and_large():
    assert M([[2, 0, 1], [1, 3, 2], [1, 1, 2]]).det() == Scalar(6)
    assert M([[1, "i"], ["i", 1]]).det() == Scalar(2)
    swap = [[0, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
    assert M(swap).det() == Scalar(-1)
    upper = [[1, 7, 0, 0, 0], [0, 2, 0, 0, 0], [0, 0, 3, 5, 0], [0, 0, 0, 4, 0], [0, 0, 0, 0, 5]]
    assert M(upper).det() == Scalar(120)


def test_power_and_trace():
    n = M([[0, 1], [0, 0]])
    assert n.power(2).is_zero()
    assert M([[1, 1], [0, 1]]).power(3) == M([[1, 3], [0, 1]])
    assert M([[1, 2], [3, 4]]).trace() == Scalar(5)


def test_polynomial_entries():
    xs = ("x", "y")
    x, y = MPoly.var(xs, "x"), MPoly.var(xs, "y")
    m = Matrix([[x, y], [y, x]], MPoly.zero(xs), MPoly.constant(xs, 1))
    assert m.det() == x * x - y * y
    assert m.trace() == 2 * x


def test_rational_function_entries():
    zero, one, t = RatFun.const(0), RatFun.const(1), RatFun.t()
    m = Matrix([[t, one], [zero, one]], zero, one)
    inv = m.invert()
    assert m @ inv == Matrix.identity(2, zero, one)
    assert inv[0, 0] == parse_ratfun("1/t")
    assert inv[0, 1] == parse_ratfun("-1/t")


def test_elimination_over_rational_functions():
    zero, one, t = RatFun.const(0), RatFun.const(1), RatFun.t()
    m = Matrix([[t, t * t], [one, t]], zero, one)
    assert m.rank() == 1
    assert m.det() == zero
    assert m.nullspace() == [[-t, one]]
    with pytest.raises(Singular):
        m.invert()


def test_empty_and_mixed_matrices():
    assert Matrix([]).rank() == 0
    assert Matrix([]).rref() == ([], [])
    zero, one = RatFun.const(0), RatFun.const(1)
    mixed = Matrix([[Scalar(2), RatFun.t()], [Scalar(0), Scalar(1)]], zero, one)
    assert mixed.invert()[0, 1] == parse_ratfun("-t/2")
