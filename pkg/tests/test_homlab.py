from __future__ import annotations

import itertools

import pytest

from cma import ExtensionField, PrimeField, Rationals, j_transform, linalg
from cma.errors import MissingTopExponent, OutOfRange, ProjectiveInput
from cma.homlab import (
    DetectedInfinite,
    ExceededCap,
    Finite,
    GeneratorModule,
    Infinite,
    NakayamaData,
    block_hom_reports,
    cokernel,
    direct_sum,
    dominant_dimension,
    dominant_dimension_by_injectives,
    ext_dim,
    find_isomorphism,
    global_dimension,
    hom_dim_bruteforce,
    hom_dim_report,
    hom_space,
    injective,
    injective_envelope,
    is_projective,
    min_projective_resolution,
    omega_set,
    projective,
    projective_cover,
    realize_block,
    regular,
    simple,
    syzygy,
    syzygy_exponent,
)


def block(n, E, p=2, u=1, field=None):
    return realize_block(NakayamaData(n, u, p), GeneratorModule.of(n, E), field=field)


def auslander():
    return block(2, {1, 2})


def test_realization_dimensions():
    assert auslander().dim == 5
    assert block(1, {1}).dim == 1
    assert block(3, {3}).dim == 3
    with pytest.raises(MissingTopExponent):
        GeneratorModule.of(3, {1, 2})
    with pytest.raises(OutOfRange):
        GeneratorModule.of(3, {0, 3})


def test_hom_dimensions_against_brute_force():
    F = PrimeField(3)
    for a, b in itertools.product(range(1, 6), repeat=2):
        assert hom_dim_bruteforce(a, b, F) == min(a, b)


def test_radical_examples():
    assert block(1, {1}).radical == ()
    A = auslander()
    assert len(A.radical) == 3
    assert len(A.radical_power(2)) == 1
    assert A.radical_power(3) == ()
    assert A.loewy_length() == 3


def test_radical_is_nilpotent_and_quotient_is_split():
    for n in range(1, 6):
        A = block(n, set(range(1, n + 1)))
        assert A.dim - len(A.radical) == len(A.exps)  # Lambda / rad = K^|E|
        assert A.radical_power(2 * n) == ()


def test_syzygy_exponent_examples():
    assert syzygy_exponent(1, 3) == 2
    assert syzygy_exponent(2, 4) == 2
    with pytest.raises(ProjectiveInput):
        syzygy_exponent(4, 4)


def test_omega_set_is_j_transform():
    for n in range(1, 9):
        for r in range(n):
            for sub in itertools.combinations(range(1, n), r):
                E = frozenset(sub) | {n}
                assert omega_set(E, n) == j_transform(E)


def test_ext_examples():
    assert ext_dim(1, 1, 1, 2) == 1
    for n in range(1, 6):
        for b in range(1, n + 1):
            assert all(ext_dim(n, b, i, n) == 0 for i in range(1, 5))
    for n, a, b, i in itertools.product(range(2, 6), range(1, 6), range(1, 6), range(1, 4)):
        if a <= n and b <= n:
            assert ext_dim(a, b, i + 2, n) == ext_dim(a, b, i, n)
    assert ext_dim(2, 2, 1, 4) == 2
    with pytest.raises(OutOfRange):
        ext_dim(0, 1, 1, 2)
    with pytest.raises(OutOfRange):
        ext_dim(1, 1, 0, 2)


def test_ext_closed_form():
    """Cohomology of the periodic complex: min(k', b) - max(b - k, 0)."""
    for n in range(2, 7):
        for a in range(1, n):
            for b in range(1, n + 1):
                odd = min(n - a, b) - max(b - a, 0)
                even = min(a, b) - max(b - n + a, 0)
                assert ext_dim(a, b, 1, n) == odd and ext_dim(a, b, 2, n) == even


def test_dominant_dimension_examples():
    assert dominant_dimension(NakayamaData(2), GeneratorModule.of(2, {1, 2})) == Finite(2)
    for n in range(1, 6):
        assert dominant_dimension(NakayamaData(n), GeneratorModule.of(n, {n})) == Infinite()
    assert dominant_dimension(NakayamaData(4), GeneratorModule.of(4, {2, 4})) == Finite(2)


def test_dominant_dimension_two_routes_agree():
    for n in range(1, 6):
        for r in range(n):
            for sub in itertools.combinations(range(1, n), r):
                E = set(sub) | {n}
                A = block(n, E, p=3)
                assert dominant_dimension(NakayamaData(n), GeneratorModule.of(n, E)) == dominant_dimension_by_injectives(A)


def test_modules_satisfy_the_table():
    A = block(3, {1, 2, 3})
    mods = [regular(A)] + [f(A, a) for a in A.exps for f in (projective, simple, injective)]
    for m in mods:
        assert m.check()
    X = simple(A, 1)
    for _ in range(3):
        X = syzygy(X)
        assert X.check()


def test_projective_and_injective_recognition():
    A = auslander()
    assert all(is_projective(projective(A, a)) for a in A.exps)
    assert not is_projective(simple(A, 1))
    # the projective-injective is P(2) = I(2); I(1) is not projective
    assert is_projective(injective(A, 2)) and not is_projective(injective(A, 1))
    assert find_isomorphism(projective(A, 2), injective(A, 2))[0] is True


def test_projective_cover_is_surjective():
    A = block(4, {1, 3, 4})
    X = direct_sum(A, [simple(A, 3), injective(A, 1)])
    P, pi = projective_cover(X)
    assert linalg.rank(pi, A.field) == X.dim
    assert P.dim - X.dim == syzygy(X).dim


def test_resolution_examples():
    A = auslander()
    assert min_projective_resolution(A, projective(A, 1)).outcome == Finite(0)
    trace = min_projective_resolution(A, simple(A, 1))
    assert trace.outcome == Finite(2)
    assert trace.covers == ((1, 0), (0, 1), (1, 0))
    for n in range(2, 6):
        U = block(n, {n})
        t = min_projective_resolution(U, simple(U, n))
        assert t.outcome == DetectedInfinite()
        assert t.period == ((0, 1) if n == 2 else (0, 2))  # Omega(M(1)) = M(n - 1)


def test_resolution_cap():
    U = block(3, {3})
    assert min_projective_resolution(U, simple(U, 3), cap=1).outcome == ExceededCap(1)


def test_global_dimension_examples():
    assert global_dimension(block(1, {1})) == Finite(0)
    assert global_dimension(auslander()) == Finite(2)
    for n in range(2, 6):
        assert global_dimension(block(n, {n})) == DetectedInfinite()
    for n in range(1, 6):
        assert global_dimension(block(n, set(range(1, n + 1)))) == Finite(2 if n > 1 else 0)


def test_isomorphism_search():
    A = block(3, {1, 2, 3})
    P = projective(A, 2)
    assert find_isomorphism(P, P)[0] is True
    assert find_isomorphism(P, projective(A, 3))[0] is False
    ok, phi = find_isomorphism(direct_sum(A, [simple(A, 1), P]), direct_sum(A, [P, simple(A, 1)]))
    assert ok and phi is not None
    assert len(hom_space(simple(A, 1), simple(A, 2))) == 0


def test_injective_coresolution_step():
    A = auslander()
    X = regular(A)
    I, iota, labels = injective_envelope(X)
    assert I.dim == X.dim + cokernel(I, iota).dim
    assert sorted(labels) == [2, 2]


def test_cartan_and_anti_automorphism():
    for n in range(1, 6):
        for r in range(n):
            for sub in itertools.combinations(range(1, n), r):
                A = block(n, set(sub) | {n})
                C = A.cartan()
                assert all(C[i, j] == min(a, b) for i, a in enumerate(A.exps) for j, b in enumerate(A.exps))
                assert A.check_anti_automorphism()


def test_extension_field_agrees_with_prime_field():
    K = ExtensionField.of_degree(2, 2)
    for n, E in [(2, {1, 2}), (3, {1, 3}), (3, {3})]:
        A_K = block(n, E, field=K)
        A_p = block(n, E)
        assert global_dimension(A_K) == global_dimension(A_p)
        assert dominant_dimension_by_injectives(A_K) == dominant_dimension_by_injectives(A_p)


def test_rational_blocks(Q):
    A = block(2, {1, 2}, p=0)
    assert A.field == Rationals()
    assert global_dimension(A) == Finite(2)


def test_omega_pairs_have_equal_reports():
    for n in range(1, 6):
        for r in range(n):
            for sub in itertools.combinations(range(1, n), r):
                E = set(sub) | {n}
                U = NakayamaData(n, 1, 3)
                a = hom_dim_report(U, GeneratorModule.of(n, E))
                b = hom_dim_report(U, GeneratorModule.of(n, omega_set(E, n)))
                assert a.invariants() == b.invariants()


def test_block_reports_of_the_jt_pair(jt_pair):
    c, d = jt_pair
    rc = dict(block_hom_reports(c))
    rd = dict(block_hom_reports(d))
    assert rc["x"].invariants() == rd["x-1"].invariants()
    assert rc["x-1"].gl_dim == Finite(0) and rc["x-1"].dom_dim == Infinite()
    data = rc["x"].to_json()
    assert data["E"] == [1, 3] and data["cartan"] == [[1, 1], [1, 3]]


def test_report_uses_residue_degree(F2):
    from cma.matrix import companion, block_diag
    from cma import Poly

    x = Poly.x(F2)
    f = x**2 + x + 1
    c = block_diag(companion(f**2), companion(f))
    ((name, rep),) = block_hom_reports(c)
    assert rep.u == 2 and rep.n == 2 and rep.exps == (1, 2)
    assert rep.to_json()["dim_over_prime_field"] == 10
