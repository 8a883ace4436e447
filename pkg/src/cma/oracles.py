"""Randomized and exhaustive property suites.

Each suite returns a :class:`SuiteResult` with pass/fail counts and the first
few failing cases.  The command line ``oracle`` runner and the acceptance
tests both call these.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable

from .centralizer import brute_force_centralizer_dim, count_nonprojective_simples, decompose, report_from_divisors
from .fields import PrimeField
from .homlab import GeneratorModule, NakayamaData, hom_dim_report, omega_set, realize_block
from .matrix import ElementaryDivisorMultiset, MatrixF, elementary_divisors, random_invertible, random_matrix
from .perm import (
    Permutation,
    cycle_type,
    p_power_j_constraint,
    perm_elementary_divisors,
    permutation_matrix,
    regular_singular_parts,
)
from .poly import Poly, is_irreducible
from .sequiv import j_transform, power_index_set, s_equivalent

MAX_RECORDED_FAILURES = 5


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = dc_field(default_factory=list)

    def record(self, ok: bool, case=None) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < MAX_RECORDED_FAILURES:
                self.failures.append(case)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "failed": self.failed,
                "failures": [str(f) for f in self.failures]}

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.passed} passed, {self.failed} failed"


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

_IRR_CACHE: dict = {}


def monic_irreducibles(F: PrimeField, degree: int) -> list[Poly]:
    key = (F.p, degree)
    if key not in _IRR_CACHE:
        out = []
        for k in range(F.p**degree):
            low = [(k // F.p**i) % F.p for i in range(degree)]
            f = Poly(F, low + [1])
            if is_irreducible(f):
                out.append(f)
        _IRR_CACHE[key] = out
    return _IRR_CACHE[key]


def partitions(n: int, largest: int | None = None):
    """Partitions of ``n`` as descending tuples."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def random_divisor_data(F: PrimeField, rng: random.Random, max_groups: int = 3, max_exp: int = 6,
                        max_degree: int = 2) -> ElementaryDivisorMultiset:
    """Random groups ``irr -> exps`` with distinct irreducibles of degree <= ``max_degree``."""
    pool = [f for d in range(1, max_degree + 1) for f in monic_irreducibles(F, d)]
    irrs = rng.sample(pool, rng.randint(1, min(max_groups, len(pool))))
    pairs = []
    for irr in irrs:
        top = rng.randint(1, max_exp)
        exps = {top} | {rng.randint(1, top) for _ in range(rng.randint(0, 3))}
        for e in exps:
            pairs.extend([(irr, e)] * rng.randint(1, 2))
    return ElementaryDivisorMultiset.from_pairs(F, pairs)


def s_equivalent_partner(E: ElementaryDivisorMultiset, rng: random.Random,
                         j_prob: float = 0.5) -> ElementaryDivisorMultiset:
    """A divisor multiset S-equivalent to ``E`` by construction.

    Irreducibles are renamed within each degree (the residue fields agree over
    a prime field), power-index sets are replaced by their J-transform with
    probability ``j_prob`` under fresh multiplicities, and semisimple groups
    are resampled freely.
    """
    F = E.field
    by_degree: dict[int, list[Poly]] = {}
    for irr, _ in E.groups:
        by_degree.setdefault(irr.deg, [])
    rename = {}
    for d in by_degree:
        pool = monic_irreducibles(F, d)
        mine = [irr for irr, _ in E.groups if irr.deg == d]
        for irr, new in zip(mine, rng.sample(pool, len(mine))):
            rename[irr] = new
    pairs = []
    for irr, es in E.groups:
        new = rename[irr]
        P = frozenset(es)
        if es[0] >= 2:
            if rng.random() < j_prob:
                P = j_transform(P)
            for e in P:
                pairs.extend([(new, e)] * rng.randint(1, 2))
        else:
            pairs.extend([(new, 1)] * rng.randint(1, 3))
    return ElementaryDivisorMultiset.from_pairs(F, pairs)


def random_structured_matrix(F: PrimeField, n: int, rng: random.Random) -> MatrixF:
    """A random conjugate of a random primary rational form of size ``n``."""
    pool = [f for d in (1, 2) for f in monic_irreducibles(F, d)]
    pairs, size = [], 0
    while size < n:
        irr = rng.choice([f for f in pool if f.deg <= n - size])
        e = rng.randint(1, max(1, (n - size) // irr.deg))
        pairs.append((irr, e))
        size += irr.deg * e
    c = ElementaryDivisorMultiset.from_pairs(F, pairs).rational_canonical_form()
    g = random_invertible(F, n, rng)
    return g @ c @ g.inverse()


def random_test_matrix(F: PrimeField, n: int, rng: random.Random) -> MatrixF:
    return random_matrix(F, n, rng) if rng.random() < 0.3 else random_structured_matrix(F, n, rng)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_formula_vs_snf(max_n: int = 7, primes=(2, 3, 5)) -> SuiteResult:
    """Closed-form permutation divisors against Smith normal form, over all cycle types."""
    res = SuiteResult("permutation divisors: closed form vs Smith form")
    for p in primes:
        F = PrimeField(p)
        for n in range(1, max_n + 1):
            for parts in partitions(n):
                c = permutation_matrix(Permutation.from_cycle_type(parts), F)
                ok = perm_elementary_divisors(parts, p, F) == elementary_divisors(c)
                res.record(ok, (p, parts))
    return res


def suite_commutant_dim(trials: int, rng: random.Random, primes=(2, 3, 5), max_n: int = 7) -> SuiteResult:
    res = SuiteResult("centralizer dimension: block formula vs commutation kernel")
    for _ in range(trials):
        F = PrimeField(rng.choice(primes))
        c = random_test_matrix(F, rng.randint(1, max_n), rng)
        formula = decompose(c).total_dim
        brute = brute_force_centralizer_dim(c)
        res.record(formula == brute, (F.p, c.to_json()["matrix"], formula, brute))
    return res


def suite_transpose_invariance(trials: int, rng: random.Random, primes=(2, 3, 5), max_n: int = 6) -> SuiteResult:
    res = SuiteResult("centralizer dimension: transpose invariance")
    for _ in range(trials):
        F = PrimeField(rng.choice(primes))
        c = random_test_matrix(F, rng.randint(1, max_n), rng)
        res.record(brute_force_centralizer_dim(c) == brute_force_centralizer_dim(c.transpose()), c)
    return res


def suite_arc_invariant(trials: int, rng: random.Random, primes=(2, 3, 5)) -> SuiteResult:
    """S-equivalent divisor data have equally many non-projective simples."""
    res = SuiteResult("non-projective simple count on S-equivalent pairs")
    for _ in range(trials):
        F = PrimeField(rng.choice(primes))
        Ec = random_divisor_data(F, rng)
        Ed = s_equivalent_partner(Ec, rng)
        verdict = s_equivalent(Ec, Ed)
        counts = (count_nonprojective_simples(report_from_divisors(Ec)),
                  count_nonprojective_simples(report_from_divisors(Ed)))
        res.record(verdict.equivalent and counts[0] == counts[1], (str(Ec), str(Ed), counts))
    return res


def suite_equivalence_relation(trials: int, rng: random.Random, primes=(2, 3, 5)) -> SuiteResult:
    """Reflexivity, symmetry and transitivity on chains and on unrelated triples."""
    res = SuiteResult("S-equivalence is an equivalence relation")
    for k in range(trials):
        F = PrimeField(rng.choice(primes))
        a = random_divisor_data(F, rng)
        if k % 2:
            b = s_equivalent_partner(a, rng)
            c = s_equivalent_partner(b, rng)
        else:
            b, c = random_divisor_data(F, rng), random_divisor_data(F, rng)
        eq = {(x, y): s_equivalent(u, v).equivalent
              for (x, u), (y, v) in itertools.product(enumerate((a, b, c)), repeat=2)}
        ok = all(eq[(i, i)] for i in range(3))
        ok &= all(eq[(i, j)] == eq[(j, i)] for i in range(3) for j in range(3))
        ok &= all(not (eq[(i, j)] and eq[(j, l)]) or eq[(i, l)]
                  for i in range(3) for j in range(3) for l in range(3))
        res.record(ok, (str(a), str(b), str(c)))
    return res


def suite_similarity(trials: int, rng: random.Random, primes=(2, 3, 5), max_n: int = 7) -> SuiteResult:
    res = SuiteResult("similarity invariance of divisors and verdicts")
    for _ in range(trials):
        F = PrimeField(rng.choice(primes))
        n = rng.randint(1, max_n)
        c = random_test_matrix(F, n, rng)
        g = random_invertible(F, n, rng)
        Ec, Eg = elementary_divisors(c), elementary_divisors(g @ c @ g.inverse())
        res.record(Ec == Eg and s_equivalent(Ec, Eg).equivalent, c)
    return res


def suite_j_involution(trials: int, rng: random.Random, max_value: int = 30) -> SuiteResult:
    res = SuiteResult("J-transform is an involution")
    for _ in range(trials):
        T = frozenset(rng.sample(range(1, max_value + 1), rng.randint(1, 8)))
        res.record(j_transform(j_transform(T)) == T, sorted(T))
    return res


def p_power_sets(p: int, max_size: int = 4, max_power: int = 4) -> list[frozenset]:
    powers = [p**k for k in range(max_power + 1)]
    return [frozenset(s) for r in range(1, max_size + 1) for s in itertools.combinations(powers, r)]


def suite_p_power_constraint(primes=(2, 3, 5), max_size: int = 4, max_power: int = 4) -> SuiteResult:
    """Exhaustive: when ``S = J(T)`` for p-power sets, only the two admissible shapes occur."""
    res = SuiteResult("p-power sets related by J")
    for p in primes:
        sets = p_power_sets(p, max_size, max_power)
        for S, T in itertools.product(sets, repeat=2):
            try:
                kind = p_power_j_constraint(S, T, p)
            except AssertionError:
                res.record(False, (p, sorted(S), sorted(T)))
                continue
            expected = "Violation" if S != j_transform(T) else ("Equal" if len(S) == 1 else "TwoPowerLadder")
            res.record(kind == expected and (kind != "TwoPowerLadder" or p == 2), (p, sorted(S), sorted(T), kind))
    return res


def _random_cycle_type(rng: random.Random, n: int, p: int) -> tuple:
    """Partition of ``n`` biased towards parts divisible by ``p``."""
    parts, left = [], n
    while left:
        if left >= p and rng.random() < 0.5:
            part = p * rng.randint(1, left // p)
        else:
            part = rng.randint(1, left)
        parts.append(part)
        left -= part
    return tuple(sorted(parts, reverse=True))


def _related_cycle_type(parts: tuple, rng: random.Random, p: int, max_n: int) -> tuple:
    """A nearby cycle type: add or drop fixed points, or change one p-regular cycle."""
    parts = list(parts)
    move = rng.randrange(3)
    if move == 0 and sum(parts) < max_n:
        parts += [1] * rng.randint(1, max_n - sum(parts))
    elif move == 1 and 1 in parts and len(parts) > 1:
        parts.remove(1)
    else:
        regular = [i for i, x in enumerate(parts) if x % p]
        if regular:
            i = rng.choice(regular)
            room = max_n - sum(parts) + parts[i]
            choices = [x for x in range(1, room + 1) if x % p]
            parts[i] = rng.choice(choices)
    return tuple(sorted(parts, reverse=True))


def _perm_divisors(parts: tuple, F: PrimeField) -> ElementaryDivisorMultiset:
    return elementary_divisors(permutation_matrix(Permutation.from_cycle_type(parts), F))


def suite_singular_parts(trials: int, rng: random.Random, primes=(2, 3), max_n: int = 10) -> SuiteResult:
    """S-equivalent permutation matrices have S-equivalent p-singular parts."""
    res = SuiteResult("S-equivalent permutations have S-equivalent singular parts")
    positives = 0
    for _ in range(trials):
        p = rng.choice(primes)
        F = PrimeField(p)
        a = _random_cycle_type(rng, rng.randint(1, max_n), p)
        b = _related_cycle_type(a, rng, p, max_n) if rng.random() < 0.7 else _random_cycle_type(rng, rng.randint(1, max_n), p)
        sa, sb = (Permutation.from_cycle_type(x) for x in (a, b))
        if not s_equivalent(_perm_divisors(a, F), _perm_divisors(b, F)).equivalent:
            res.record(True)
            continue
        positives += 1
        ra, sa_sing = regular_singular_parts(sa, p)
        rb, sb_sing = regular_singular_parts(sb, p)
        ok = s_equivalent(
            elementary_divisors(permutation_matrix(sa_sing, F)),
            elementary_divisors(permutation_matrix(sb_sing, F)),
        ).equivalent
        res.record(ok, (p, a, b, cycle_type(sa_sing), cycle_type(sb_sing)))
    res.name += f" ({positives} equivalent pairs)"
    return res


def suite_omega_pairing(trials: int, rng: random.Random, max_n: int = 6, primes=(2, 3)) -> SuiteResult:
    """``(n, E)`` and ``(n, Omega E)`` have equal homological dimensions; ``Omega E = J(E)``."""
    res = SuiteResult("homological dimensions agree on Omega-paired blocks")
    for _ in range(trials):
        n = rng.randint(1, max_n)
        E = frozenset({n} | {e for e in range(1, n) if rng.random() < 0.5})
        OE = omega_set(E, n)
        U = NakayamaData(n, 1, rng.choice(primes))
        r1 = hom_dim_report(U, GeneratorModule.of(n, E))
        r2 = hom_dim_report(U, GeneratorModule.of(n, OE))
        ok = OE == j_transform(E) and r1.invariants() == r2.invariants()
        res.record(ok, (n, sorted(E), str(r1.gl_dim), str(r2.gl_dim), str(r1.dom_dim), str(r2.dom_dim)))
    return res


def suite_certificate_homdims(trials: int, rng: random.Random, primes=(2, 3)) -> SuiteResult:
    """Blocks matched by an S-equivalence certificate have equal homological dimensions."""
    res = SuiteResult("homological dimensions agree across certificate pairs")
    for _ in range(trials):
        F = PrimeField(rng.choice(primes))
        Ec = random_divisor_data(F, rng, max_exp=5)
        Ed = s_equivalent_partner(Ec, rng)
        verdict = s_equivalent(Ec, Ed)
        if not verdict.equivalent:
            res.record(False, ("partner not equivalent", str(Ec), str(Ed)))
            continue
        for pr in verdict.certificate.pairs:
            reports = []
            for E, f in ((Ec, pr.src), (Ed, pr.dst)):
                U = NakayamaData(f.exp, f.irr.deg, F.p)
                reports.append(hom_dim_report(U, GeneratorModule.of(f.exp, power_index_set(E, f))))
            res.record(reports[0].invariants() == reports[1].invariants(), (str(pr.src), str(pr.dst)))
    return res


def suite_realization(max_n: int = 5, p: int = 2) -> SuiteResult:
    """Every generator realization: associativity, dimension, Cartan matrix, anti-automorphism."""
    res = SuiteResult("structure-constant realizations")
    for n in range(1, max_n + 1):
        for r in range(n):
            for sub in itertools.combinations(range(1, n), r):
                E = tuple(sorted(set(sub) | {n}))
                alg = realize_block(NakayamaData(n, 1, p), GeneratorModule(E))
                C = alg.cartan()
                ok = alg.check_associativity() and alg.check_unit()
                ok &= alg.dim == sum(min(a, b) for a in E for b in E)
                ok &= all(C[i, j] == min(a, b) for i, a in enumerate(E) for j, b in enumerate(E))
                ok &= alg.check_anti_automorphism()
                res.record(bool(ok), (n, E))
    return res


SUITES: dict[str, Callable[[int, random.Random], SuiteResult]] = {
    "formula_vs_snf": lambda t, rng: suite_formula_vs_snf(),
    "commutant_dim": suite_commutant_dim,
    "transpose": suite_transpose_invariance,
    "arc_invariant": suite_arc_invariant,
    "equivalence_relation": suite_equivalence_relation,
    "similarity": suite_similarity,
    "j_involution": lambda t, rng: suite_j_involution(5 * t, rng),
    "p_power_constraint": lambda t, rng: suite_p_power_constraint(),
    "singular_parts": suite_singular_parts,
    "omega_pairing": lambda t, rng: suite_omega_pairing(max(1, t // 4), rng),
    "certificate_homdims": lambda t, rng: suite_certificate_homdims(max(1, t // 4), rng),
    "realization": lambda t, rng: suite_realization(),
}


def run_suites(seed: int = 0, trials: int = 50, names=None) -> list[SuiteResult]:
    """Run the named suites (all by default), each with its own seeded generator."""
    out = []
    for name in names or SUITES:
        rng = random.Random(f"{seed}:{name}")
        out.append(SUITES[name](trials, rng))
    return out
