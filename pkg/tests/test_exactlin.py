from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from filippov.exactlin import (
    GF,
    QQ,
    Echelon,
    FpElement,
    Subspace,
    det,
    field_from_tag,
    mat_mul,
    nullspace,
    rank,
    rref,
    solve_linear,
    sparse_nullspace,
)

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def square(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m).rank()


@given(matrices())
def test_rref_matches_sympy(m):
    rows, pivots = rref(m)
    ref, ref_pivots = sympy.Matrix(m).rref()
    assert pivots == list(ref_pivots)
    assert [[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows] == ref.tolist()


@given(matrices())
def test_nullspace_vectors_are_killed(m):
    basis = nullspace(m)
    assert len(basis) == len(m[0]) - rank(m)
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    assert rank(basis or [[0] * len(m[0])]) == len(basis)


@given(square())
def test_det_matches_sympy(m):
    assert det(m) == sympy.Matrix(m).det()


@given(matrices(), st.data())
def test_solve_linear_roundtrip(m, data):
    x = data.draw(st.lists(small, min_size=len(m[0]), max_size=len(m[0])))
    rhs = [sum(a * b for a, b in zip(row, x)) for row in m]
    sol = solve_linear(m, rhs)
    assert sol is not None
    assert [sum(a * b for a, b in zip(row, sol)) for row in m] == rhs


def test_solve_linear_inconsistent_and_shape():
    assert solve_linear([[1, 1], [2, 2]], [1, 3]) is None
    with pytest.raises(ValueError):
        solve_linear([[1, 2]], [1, 2])


def test_exact_arithmetic_never_floats():
    rows, _ = rref([[2, 3], [4, 7]])
    assert all(isinstance(x, Fraction) for r in rows for x in r)
    assert det([[2, 1], [1, 2]]) == 3
    with pytest.raises(TypeError):
        QQ(0.5)


def test_rational_parse():
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert QQ.parse("7") == 7
    with pytest.raises(ValueError):
        QQ.parse("1.5")


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_fp_arithmetic_matches_integers_mod_p(a, b):
    F = GF(7)
    x, y = F(a), F(b)
    assert (x + y) == F((a + b) % 7)
    assert (x * y) == F((a * b) % 7)
    assert (x - y) == F((a - b) % 7)
    if b % 7:
        assert (x / y) * y == x


def test_fp_fields():
    F = field_from_tag("Fp:5")
    assert F == GF(5)
    assert field_from_tag("Q") is QQ
    with pytest.raises(ValueError):
        GF(6)
    assert rank([[F(1), F(2)], [F(3), F(1)]]) == 1  # 3 * (1, 2) = (3, 6) = (3, 1) mod 5
    assert isinstance(F(3), FpElement)


def test_subspace_membership_and_quotient():
    S = Subspace([[1, 1, 0], [0, 1, 1]], 3)
    assert S.dim() == 2
    assert S.member([1, 2, 1])
    assert not S.member([1, 0, 0])
    assert S == Subspace([[1, 2, 1], [1, 0, -1]], 3)
    assert len(S.quotient_basis()) == 1
    assert (S + Subspace([[1, 0, 0]], 3)).dim() == 3


@given(matrices(4, 4))
def test_subspace_reduce_is_idempotent_and_kills_members(m):
    S = Subspace(m, len(m[0]))
    for v in m:
        assert not S.reduce(v)
    probe = [1] * len(m[0])
    r = S.reduce(probe)
    assert S.reduce(r) == r


def test_sparse_nullspace_and_echelon():
    basis = sparse_nullspace([{0: 1, 1: -1}], 3)
    assert len(basis) == 2
    ech = Echelon(3)
    assert ech.add({0: 2, 2: 4})
    assert not ech.add({0: 1, 2: 2})
    assert len(ech) == 1


@settings(max_examples=30)
@given(square(4), square(4))
def test_mat_mul_matches_sympy(a, b):
    if len(a) != len(b):
        return
    assert mat_mul(a, b) == (sympy.Matrix(a) * sympy.Matrix(b)).tolist()
