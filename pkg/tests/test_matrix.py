from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cma import MatrixF, Permutation, Poly, PrimeField, Rationals, elementary_divisors, permutation_matrix
from cma import linalg
from cma.errors import DivisionByZero, FieldMismatch
from cma.matrix import (
    ElementaryDivisorMultiset,
    characteristic_polynomial,
    companion,
    evaluate_poly_at_matrix,
    kernel_basis,
    minimal_polynomial,
    random_invertible,
    random_matrix,
    smith_invariant_factors,
)

from conftest import jordan_sum


def test_kernel_examples(F2, F3):
    assert len(kernel_basis(MatrixF.zero(F2, 2))) == 2
    assert kernel_basis(MatrixF.identity(F3, 3)) == []
    # det [[1,2],[2,1]] = -3 = 0 in F_3, so the kernel is a line
    m = MatrixF.from_rows(F3, [[1, 2], [2, 1]])
    ker = kernel_basis(m)
    assert m.rank() == 1 and len(ker) == 1
    v = np.array(ker[0]).reshape(-1, 1)
    assert not np.any((m.array() @ v) % 3)


def test_minimal_polynomial_examples(Q, F5):
    x = Poly.x(Q)
    assert minimal_polynomial(jordan_sum(Q, (3, 0), (1, 0), (1, 1))) == x**3 * (x - 1)
    assert minimal_polynomial(MatrixF.identity(Q, 4)) == x - 1
    y = Poly.x(F5)
    c = permutation_matrix(Permutation.from_cycle_type((6,)), F5)
    assert minimal_polynomial(c) == y**6 - 1


def test_smith_examples(F2, Q):
    x = Poly.x(F2)
    assert smith_invariant_factors(jordan_sum(F2, (2, 0), (1, 0))) == [x, x**2]
    xq = Poly.x(Q)
    assert smith_invariant_factors(MatrixF.identity(Q, 2)) == [xq - 1, xq - 1]
    assert smith_invariant_factors(companion(x**2 + x + 1)) == [x**2 + x + 1]


def test_elementary_divisor_examples(jt_pair, F5):
    c, d = jt_pair
    F = c.field
    x = Poly.x(F)
    Ec, Ed = elementary_divisors(c), elementary_divisors(d)
    assert dict(Ec.groups) == {x: (3, 1), x - 1: (1,)}
    assert dict(Ed.groups) == {x - 1: (3, 2)}
    assert Ec.size == 5 and Ed.size == 5
    I3 = elementary_divisors(MatrixF.identity(F5, 3))
    assert dict(I3.groups) == {Poly.x(F5) - 1: (1, 1, 1)}


def test_divisor_json_round_trip(jt_pair):
    c, _ = jt_pair
    E = elementary_divisors(c)
    assert ElementaryDivisorMultiset.from_json(E.field, E.to_json()) == E


def test_matrix_json_round_trip(Q):
    m = MatrixF.from_rows(Q, [["1/2", 0], [3, "-2/3"]])
    assert MatrixF.from_json(m.to_json()) == m


def test_linalg_inverse(F5):
    rng = random.Random(0)
    g = random_invertible(F5, 5, rng)
    assert g @ g.inverse() == MatrixF.identity(F5, 5)
    with pytest.raises(DivisionByZero):
        MatrixF.zero(F5, 2).inverse()


def test_field_mismatch(F3, F5):
    with pytest.raises(FieldMismatch):
        MatrixF.identity(F3, 2) @ MatrixF.identity(F5, 2)


def test_nullspace_and_rank_agree(F3):
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = rng.integers(0, 3, size=(4, 6))
        ker = linalg.nullspace(a, F3)
        assert linalg.rank(a, F3) + ker.shape[0] == 6
        assert not np.any(linalg.matmul(a, ker.T, F3))


@settings(max_examples=60, deadline=None)
@given(p=st.sampled_from([2, 3, 5]), n=st.integers(1, 6), seed=st.integers(0, 10**6))
def test_canonical_form_round_trip(p, n, seed):
    """charpoly(c) = prod of divisors, minpoly(c) = lcm, and c is similar to its rational form."""
    F = PrimeField(p)
    c = random_matrix(F, n, random.Random(seed))
    E = elementary_divisors(c)
    assert E.size == n
    assert characteristic_polynomial(c) == E.characteristic_polynomial()
    assert minimal_polynomial(c) == E.minimal_polynomial()
    assert not np.any(evaluate_poly_at_matrix(minimal_polynomial(c), c).array())
    assert elementary_divisors(E.rational_canonical_form()) == E


def test_rational_smith_on_jordan_data(Q):
    c = jordan_sum(Q, (3, 2), (1, 2), (2, -1))
    x = Poly.x(Q)
    assert dict(elementary_divisors(c).groups) == {x - 2: (3, 1), x + 1: (2,)}
    g = MatrixF.from_rows(Q, [[1, 2, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0], [0, 0, 1, 3, 0, 0],
                              [0, 0, 0, 1, 0, 0], [1, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])
    assert elementary_divisors(g @ c @ g.inverse()) == elementary_divisors(c)
    assert Rationals() == Q
