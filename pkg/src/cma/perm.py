"""Permutation matrices: cycle types, p-regular/p-singular parts and their divisors."""

from __future__ import annotations

from random import Random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    InvalidCertificate,
    NoDividedCycle,
    NotPermutationSpectrum,
    NotPPowers,
)
from .fields import Field, Rationals, field_for_characteristic
from .matrix import ElementaryDivisorMultiset, MatrixF, PrimePower
from .poly import Poly, factor
from .sequiv import (
    EQUAL_SETS,
    CertificatePair,
    SEquivCertificate,
    check_certificate,
    j_transform,
)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} in one-line notation: ``images[i-1] = sigma(i)``."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        img = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= n or a in seen:
                    raise ValueError(f"bad cycle {cyc} for n={n}")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b
        return cls(tuple(img))

    @classmethod
    def from_cycle_type(cls, parts: Sequence[int]) -> "Permutation":
        """Consecutive cycles ``(1..l1)(l1+1..l1+l2)...``."""
        cycles, start = [], 1
        for length in parts:
            cycles.append(list(range(start, start + length)))
            start += length
        return cls.from_cycles(cycles, start - 1)

    @classmethod
    def random(cls, n: int, rng: Random) -> "Permutation":
        img = list(range(1, n + 1))
        rng.shuffle(img)
        return cls(tuple(img))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition ``(self * other)(i) = self(other(i))``."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def cycles(self, include_fixed: bool = True) -> list[list[int]]:
        seen, out = set(), []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc, a = [], start
            while a not in seen:
                seen.add(a)
                cyc.append(a)
                a = self(a)
            if include_fixed or len(cyc) > 1:
                out.append(cyc)
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if self.n else 1


def cycle_type(sigma: Permutation) -> tuple:
    return tuple(sorted((len(c) for c in sigma.cycles()), reverse=True))


def normalize_cycle_type(parts: Iterable[int]) -> tuple:
    parts = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x < 1 for x in parts):
        raise ValueError("cycle lengths must be positive")
    return parts


def pad_cycle_type(parts: Iterable[int], n: int) -> tuple:
    parts = normalize_cycle_type(parts)
    if sum(parts) > n:
        raise ValueError(f"cycle type {parts} does not fit on {n} points")
    return parts + (1,) * (n - sum(parts))


def nu(p: int, m: int) -> int:
    """p-adic valuation; 0 when ``p == 0``."""
    if p == 0:
        return 0
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def permutation_matrix(sigma: Permutation, field: Field) -> MatrixF:
    """``c_sigma``: a 1 in position ``(i, sigma(i))``."""
    n = sigma.n
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        rows[i - 1][sigma(i) - 1] = 1
    return MatrixF.from_rows(field, rows)


def regular_singular_parts(sigma: Permutation, p: int) -> tuple[Permutation, Permutation]:
    """``(r(sigma), s(sigma))``; for ``p == 0`` this is ``(sigma, id)``."""
    if p == 0:
        return sigma, Permutation.identity(sigma.n)
    cycles = sigma.cycles(include_fixed=False)
    reg = [c for c in cycles if len(c) % p]
    sing = [c for c in cycles if len(c) % p == 0]
    return Permutation.from_cycles(reg, sigma.n), Permutation.from_cycles(sing, sigma.n)


def regular_part_type(parts: Sequence[int], p: int) -> tuple:
    n = sum(parts)
    if p == 0:
        return normalize_cycle_type(parts)
    return pad_cycle_type([x for x in parts if x % p], n)


def singular_part_type(parts: Sequence[int], p: int) -> tuple:
    n = sum(parts)
    if p == 0:
        return (1,) * n
    return pad_cycle_type([x for x in parts if x % p == 0], n)


def _cyclotomic_factors(m: int) -> list[Poly]:
    """Irreducible factors of ``x^m - 1`` over Q: the cyclotomic polynomials."""
    Q = Rationals()
    x = Poly.x(Q)
    cyclo: dict[int, Poly] = {}
    for d in range(1, m + 1):
        if m % d == 0:
            acc = x**d - 1
            for e, phi in cyclo.items():
                if d % e == 0:
                    acc = acc // phi
            cyclo[d] = acc
    return [cyclo[d] for d in sorted(cyclo)]


def x_power_minus_one_factors(m: int, field: Field, seed: int = 0) -> list[Poly]:
    """Distinct irreducible factors of ``x^m - 1``; the p-part is peeled first."""
    p = field.characteristic
    m_reg = m // p ** nu(p, m) if p else m
    if isinstance(field, Rationals):
        return _cyclotomic_factors(m_reg)
    x = Poly.x(field)
    return [g for g, _ in factor(x**m_reg - 1, seed=seed)]


def perm_elementary_divisors(parts: Sequence[int], p: int, field: Field | None = None) -> ElementaryDivisorMultiset:
    """Closed form: ``g^(p^nu_p(l))`` for each cycle length ``l`` and irreducible ``g | x^l - 1``."""
    field = field or field_for_characteristic(p)
    if field.characteristic != p:
        raise ValueError(f"field {field!r} does not have characteristic {p}")
    pairs = []
    cache: dict[int, list[Poly]] = {}
    for lam in normalize_cycle_type(parts):
        v = nu(p, lam)
        mult = p**v if p else 1
        if lam not in cache:
            cache[lam] = x_power_minus_one_factors(lam, field)
        pairs.extend((g, mult) for g in cache[lam])
    return ElementaryDivisorMultiset.from_pairs(field, pairs)


def _x_minus_one(field: Field) -> Poly:
    return Poly(field, [field.neg(field.one), field.one], canonical=True)


def exceptional_divisor(E: ElementaryDivisorMultiset, p: int) -> int:
    """The ``a`` with ``(x-1)^(p^a)`` the maximal (x-1)-power divisor."""
    top = E.max_exp(_x_minus_one(E.field))
    if top == 0:
        raise NotPermutationSpectrum("no power of x-1 among the elementary divisors")
    if p == 0:
        if top != 1:
            raise NotPermutationSpectrum(f"(x-1)^{top} in characteristic 0")
        return 0
    a = nu(p, top)
    if p**a != top:
        raise NotPermutationSpectrum(f"(x-1)^{top} is not a p-power exponent for p={p}")
    return a


def q_value(g: Poly, parts: Sequence[int], p: int) -> int:
    """``max nu_p(l)`` over cycle lengths ``l`` with ``g | x^l - 1``."""
    x = Poly.x(g.field)
    vals = [nu(p, lam) for lam in parts if not ((x**lam - 1) % g)]
    if not vals:
        raise NoDividedCycle(f"{g} divides no x^l - 1 for l in {tuple(parts)}")
    return max(vals)


def _is_p_power(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def p_power_j_constraint(S: Iterable[int], T: Iterable[int], p: int) -> str:
    """Classify a pair of p-power sets: ``Equal``, ``TwoPowerLadder`` or ``Violation``.

    ``Violation`` means ``S != J(T)``.  When ``S == J(T)`` only the singleton
    case and, for p = 2, ``{2^u, 2^(u+1)}`` can occur.
    """
    S, T = frozenset(S), frozenset(T)
    if not S or not T or not all(_is_p_power(m, p) for m in S | T):
        raise NotPPowers(f"{sorted(S)} / {sorted(T)} are not nonempty sets of {p}-powers")
    if S != j_transform(T):
        return "Violation"
    if S == T and len(S) == 1:
        return "Equal"
    if p == 2 and S == T and len(S) == 2 and max(S) == 2 * min(S):
        return "TwoPowerLadder"
    raise AssertionError(f"unclassified p-power pair S={sorted(S)}, T={sorted(T)}, p={p}")


def normalize_certificate(
    cert: SEquivCertificate,
    p: int,
    a: int,
    b: int,
    Ec: ElementaryDivisorMultiset | None = None,
    Ed: ElementaryDivisorMultiset | None = None,
) -> SEquivCertificate:
    """Re-route ``cert`` so the exceptional divisor of c maps to that of d.

    Two-swap construction: if ``(x-1)^(p^a) -> j`` and ``k -> (x-1)^(p^b)``,
    send ``(x-1)^(p^a) -> (x-1)^(p^b)`` and ``k -> j``.  All modes are set to
    ``EqualSets``.  When ``Ec``/``Ed`` are given, input and output are
    re-validated against them.
    """
    if Ec is not None and Ed is not None:
        check_certificate(cert, Ec, Ed)
    if not cert.pairs:
        return cert
    field = cert.pairs[0].src.irr.field
    one = _x_minus_one(field)
    exc_c, exc_d = PrimePower(one, p**a), PrimePower(one, p**b)
    fwd = cert.mapping()
    back = {pr.dst: pr.src for pr in cert.pairs}
    if len(fwd) != len(cert.pairs) or len(back) != len(cert.pairs):
        raise InvalidCertificate("certificate is not a bijection")
    if exc_c not in fwd or exc_d not in back:
        raise InvalidCertificate("exceptional divisors are missing from the certificate")
    if fwd[exc_c] != exc_d:
        if a != b:
            raise InvalidCertificate("exceptional exponents differ, no realignment exists")
        j, k = fwd[exc_c], back[exc_d]
        fwd[exc_c], fwd[k] = exc_d, j
    out = SEquivCertificate(
        tuple(CertificatePair(pr.src, fwd[pr.src], EQUAL_SETS) for pr in cert.pairs)
    )
    if Ec is not None and Ed is not None:
        check_certificate(out, Ec, Ed)
    return out


@dataclass(frozen=True)
class PermClassData:
    p: int
    cycle_type: tuple
    regular_part_type: tuple
    singular_part_type: tuple
    exceptional: int | None

    @classmethod
    def of(cls, parts: Sequence[int], p: int) -> "PermClassData":
        parts = normalize_cycle_type(parts)
        exc = None
        if p > 0:
            exc = max(nu(p, lam) for lam in parts)
        return cls(p, parts, regular_part_type(parts, p), singular_part_type(parts, p), exc)

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "cycle_type": list(self.cycle_type),
            "regular_part_type": list(self.regular_part_type),
            "singular_part_type": list(self.singular_part_type),
        }
        if self.exceptional is not None:
            out["exceptional"] = {"a": self.exceptional, "divisor": f"(x-1)^{self.p ** self.exceptional}"}
        return out
