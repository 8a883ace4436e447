"""Acceptance criteria, each timed and reported as one PASS/FAIL line."""

from __future__ import annotations

import random
import time
from contextlib import contextmanager

import pytest

from cma import (
    GeneratorModule,
    NakayamaData,
    Poly,
    PrimeField,
    Rationals,
    count_nonprojective_simples,
    decompose,
    elementary_divisors,
    hom_dim_report,
    j_transform,
    maximal_reducible,
    perm_elementary_divisors,
    power_index_set,
    s_equivalent,
    strict_s_equivalent,
)
from cma.homlab import DetectedInfinite, Finite, Infinite, block_hom_reports
from cma.matrix import PrimePower
from cma.oracles import (
    suite_arc_invariant,
    suite_commutant_dim,
    suite_equivalence_relation,
    suite_formula_vs_snf,
    suite_j_involution,
    suite_omega_pairing,
    suite_p_power_constraint,
    suite_realization,
    suite_similarity,
    suite_singular_parts,
)
from cma.sequiv import J_TRANSFORM

from conftest import ACCEPTANCE_LINES, jordan_sum


@contextmanager
def criterion(name: str, limit: float | None = None):
    """Time the body; record one PASS/FAIL line whatever the outcome."""
    start = time.perf_counter()
    ok, detail = False, ""
    try:
        yield
        ok = True
    except AssertionError as exc:
        detail = f" ({exc})" if str(exc) else ""
        raise
    finally:
        elapsed = time.perf_counter() - start
        if ok and limit is not None and elapsed >= limit:
            ok, detail = False, f" (time limit {limit:g} s exceeded)"
        line = f"{'PASS' if ok else 'FAIL'} {name} [{elapsed:.2f} s]{detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert limit is None or elapsed < limit, f"{name}: {elapsed:.2f} s >= {limit} s"


def _jt_pair(F):
    return jordan_sum(F, (3, 0), (1, 0), (1, 1)), jordan_sum(F, (3, 1), (2, 1))


def _suite_ok(res, minimum=0):
    assert res.ok, res.to_json()
    assert res.passed >= minimum, f"only {res.passed} checks"


@pytest.mark.parametrize("field", [Rationals(), PrimeField(5)], ids=["Q", "F5"])
def test_jtransform_pair_reproduction(field):
    with criterion(f"J-transform pair over {field!r}: divisors, power sets, verdict", limit=1.0):
        c, d = _jt_pair(field)
        x = Poly.x(field)
        Ec, Ed = elementary_divisors(c), elementary_divisors(d)
        assert set(Ec.distinct()) == {PrimePower(x, 3), PrimePower(x, 1), PrimePower(x - 1, 1)}
        assert set(Ed.distinct()) == {PrimePower(x - 1, 3), PrimePower(x - 1, 2)}
        assert maximal_reducible(Ec) == [PrimePower(x, 3)]
        assert maximal_reducible(Ed) == [PrimePower(x - 1, 3)]
        Pc = power_index_set(Ec, PrimePower(x, 3))
        Pd = power_index_set(Ed, PrimePower(x - 1, 3))
        assert Pc == {1, 3} and Pd == {2, 3} and j_transform(Pd) == {1, 3}
        v = s_equivalent(Ec, Ed)
        assert v.equivalent
        assert [pr.mode for pr in v.certificate.pairs] == [J_TRANSFORM]


def test_power_set_obstruction_reproduction():
    with criterion("non-equivalent pair: Hall obstruction names {1,4,5} vs {1,2,5}", limit=1.0):
        Q = Rationals()
        c = jordan_sum(Q, (5, 0), (4, 0), (1, 0))
        d = jordan_sum(Q, (5, 0), (2, 0), (1, 0))
        v = s_equivalent(elementary_divisors(c), elementary_divisors(d))
        assert not v.equivalent
        obs = v.obstruction
        assert obs["kind"] == "HallViolation"
        assert [e["P"] for e in obs["subset"]] == [[1, 4, 5]]
        assert [e["P"] for e in obs["candidates"]] == [[1, 2, 5]]
        assert [e["J"] for e in obs["candidates"]] == [[3, 4, 5]]


def test_permutation_pair_reproduction():
    with criterion("permutations (6,2) vs (6,1) over F3 and their singular parts", limit=1.0):
        F = PrimeField(3)
        x = Poly.x(F)
        Es, Et = perm_elementary_divisors((6, 2), 3, F), perm_elementary_divisors((6, 1), 3, F)
        assert set(Es.distinct()) == {PrimePower(x - 1, 3), PrimePower(x + 1, 3), PrimePower(x - 1, 1), PrimePower(x + 1, 1)}
        assert set(Et.distinct()) == {PrimePower(x - 1, 3), PrimePower(x + 1, 3), PrimePower(x - 1, 1)}
        assert not s_equivalent(Es, Et).equivalent
        Ss, St = perm_elementary_divisors((6, 1, 1), 3, F), perm_elementary_divisors((6, 1), 3, F)
        assert s_equivalent(Ss, St).equivalent
        assert strict_s_equivalent(Ss, St).equivalent


def test_formula_vs_smith_form():
    with criterion("closed-form permutation divisors vs Smith form, n <= 7, p in {2,3,5}", limit=60.0):
        res = suite_formula_vs_snf(max_n=7, primes=(2, 3, 5))
        _suite_ok(res, minimum=3 * 39)


def test_commutant_dimension_oracle():
    with criterion("centralizer dimension formula vs commutation kernel, 500 matrices", limit=120.0):
        _suite_ok(suite_commutant_dim(500, random.Random("acceptance:commutant"), max_n=7), 500)


def test_nonprojective_simple_counts():
    with criterion("non-projective simple count on 200 S-equivalent pairs"):
        _suite_ok(suite_arc_invariant(200, random.Random("acceptance:arc")), 200)
        for F in (Rationals(), PrimeField(5)):
            c, d = _jt_pair(F)
            assert count_nonprojective_simples(decompose(c)) == 2
            assert count_nonprojective_simples(decompose(d)) == 2


def test_equivalence_relation_and_similarity():
    with criterion("equivalence relation, 200 similarity trials, 1000 J-involution trials"):
        _suite_ok(suite_equivalence_relation(200, random.Random("acceptance:relation")), 200)
        _suite_ok(suite_similarity(200, random.Random("acceptance:similarity")), 200)
        _suite_ok(suite_j_involution(1000, random.Random("acceptance:involution")), 1000)


def test_p_power_classification():
    with criterion("p-power sets related by J, exhaustive for p in {2,3,5}", limit=10.0):
        _suite_ok(suite_p_power_constraint(primes=(2, 3, 5), max_size=4, max_power=4))


def test_singular_parts_property():
    with criterion("S-equivalent permutations have S-equivalent singular parts, 300 pairs"):
        res = suite_singular_parts(300, random.Random("acceptance:singular"), primes=(2, 3), max_n=10)
        _suite_ok(res, 300)


def test_homological_invariants():
    with criterion("gl.dim and dom.dim agree on matched blocks and 50 Omega pairs", limit=120.0):
        for F in (Rationals(), PrimeField(5)):
            c, d = _jt_pair(F)
            rc, rd = dict(block_hom_reports(c)), dict(block_hom_reports(d))
            assert rc["x"].invariants() == rd["x-1"].invariants()
        _suite_ok(suite_omega_pairing(50, random.Random("acceptance:omega"), max_n=6), 50)
        r = hom_dim_report(NakayamaData(2, 1, 2), GeneratorModule.of(2, {1, 2}))
        assert r.gl_dim == Finite(2) and r.dom_dim == Finite(2)
        for n in range(2, 7):
            r = hom_dim_report(NakayamaData(n, 1, 2), GeneratorModule.of(n, {n}))
            assert r.gl_dim == DetectedInfinite() and r.dom_dim == Infinite()


def test_realization_sanity():
    with criterion("structure-constant realizations for all n <= 5", limit=60.0):
        _suite_ok(suite_realization(max_n=5), 31)
