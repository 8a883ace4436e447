from __future__ import annotations

import random

import pytest

from cma import (
    MatrixF,
    Permutation,
    Poly,
    PrimeField,
    brute_force_centralizer_dim,
    count_nonprojective_simples,
    decompose,
    permutation_matrix,
    report_from_divisors,
)
from cma.centralizer import min_sum
from cma.errors import SizeCapExceeded
from cma.matrix import random_invertible
from cma.oracles import random_test_matrix

from conftest import jordan_sum


def _blocks(report):
    return {b.irr.display(compact=True): (b.n_i, b.exps) for b in report.blocks}


def test_jt_pair_reports(jt_pair):
    c, d = jt_pair
    rc, rd = decompose(c), decompose(d)
    assert _blocks(rc) == {"x": (3, (3, 1)), "x-1": (1, (1,))}
    assert _blocks(rd) == {"x-1": (3, (3, 2))}
    assert count_nonprojective_simples(rc) == count_nonprojective_simples(rd) == 2
    assert rc.num_simples == 3 and rd.num_simples == 2


def test_identity_report(F5):
    r = decompose(MatrixF.identity(F5, 4))
    (b,) = r.blocks
    assert b.is_semisimple and not b.has_nodes
    assert r.total_dim == 16 and r.num_nonproj_simples == 0


def test_example_permutation_count(F3):
    r = decompose(permutation_matrix(Permutation.from_cycle_type((6, 1)), F3))
    assert _blocks(r) == {"x+1": (3, (3,)), "x-1": (3, (3, 1))}
    assert count_nonprojective_simples(r) == 3


def test_squarefree_minimal_polynomial_gives_zero(F5):
    g = random_invertible(F5, 4, random.Random(1))
    c = g @ jordan_sum(F5, (1, 1), (1, 2), (1, 2), (1, 4)) @ g.inverse()
    assert count_nonprojective_simples(decompose(c)) == 0


def test_brute_force_examples(F2, F5, Q):
    assert brute_force_centralizer_dim(jordan_sum(F2, (2, 0), (1, 0))) == 5 == min_sum((2, 1))
    assert brute_force_centralizer_dim(MatrixF.identity(F5, 3)) == 9
    assert brute_force_centralizer_dim(jordan_sum(Q, (3, 0))) == 3
    with pytest.raises(SizeCapExceeded):
        brute_force_centralizer_dim(MatrixF.identity(F2, 13))
    assert brute_force_centralizer_dim(MatrixF.identity(F2, 13), cap=13) == 169


def test_block_invariants_random():
    rng = random.Random(7)
    for _ in range(60):
        F = PrimeField(rng.choice([2, 3, 5]))
        c = random_test_matrix(F, rng.randint(1, 7), rng)
        r = decompose(c, oracle=True)
        assert r.oracle_dim == r.total_dim
        assert r.total_dim == sum(b.dim_block for b in r.blocks)
        for b in r.blocks:
            assert max(b.exps) == b.n_i
            assert b.is_semisimple == (b.n_i == 1) and b.has_nodes == (b.n_i == 2)
            assert b.dim_block == b.irr.deg * min_sum(b.exps)
        assert brute_force_centralizer_dim(c.transpose()) == r.total_dim


def test_jordan_type_inputs_over_rationals(Q):
    for blocks in [((3, 0), (2, 0)), ((2, 1), (2, 1), (1, 0)), ((4, 2), (1, 2), (2, -1))]:
        c = jordan_sum(Q, *blocks)
        assert decompose(c).total_dim == brute_force_centralizer_dim(c)


def test_similarity_invariance(F3):
    rng = random.Random(4)
    for _ in range(20):
        c = random_test_matrix(F3, 5, rng)
        g = random_invertible(F3, 5, rng)
        assert decompose(g @ c @ g.inverse()).to_json() == decompose(c).to_json()


def test_report_json_and_table(jt_pair):
    c, _ = jt_pair
    r = decompose(c, oracle=True)
    data = r.to_json()
    assert data["total_dim"] == 7 and data["oracle_agrees"]
    assert {b["irr"] for b in data["blocks"]} == {"x", "x-1"}
    assert "non-projective simples 2" in r.to_table()


def test_report_from_divisors_matches_decompose(F5):
    c = jordan_sum(F5, (3, 0), (3, 0), (1, 0), (2, 4))
    from cma import elementary_divisors

    assert report_from_divisors(elementary_divisors(c)) == decompose(c)
    x = Poly.x(F5)
    assert x in elementary_divisors(c).irreducibles()
