"""S-equivalence of square matrices, decided from elementary divisor data.

For each matrix the maximal reducible elementary divisors are matched by a
bijection that preserves the residue algebra ``R[x]/(f)`` and matches the
power-index sets either directly or through the J-transform.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import (
    ConstantPolynomial,
    EmptySet,
    FieldMismatch,
    InvalidCertificate,
    NotMaximalReducible,
    UnsupportedRationalIsoTest,
)
from .fields import Field, PrimeField, Rationals
from .matrix import ElementaryDivisorMultiset, PrimePower
from .poly import Poly, is_separable

EQUAL_SETS = "EqualSets"
J_TRANSFORM = "JTransform"


def maximal_reducible(E: ElementaryDivisorMultiset) -> list[PrimePower]:
    """One ``irr^max`` per irreducible whose largest exponent is at least 2."""
    return [PrimePower(irr, es[0]) for irr, es in E.groups if es[0] >= 2]


def power_index_set(E: ElementaryDivisorMultiset, f: PrimePower) -> frozenset:
    if f.exp < 2 or E.max_exp(f.irr) != f.exp:
        raise NotMaximalReducible(f"{f} is not a maximal reducible elementary divisor")
    return frozenset(E.exps(f.irr))


def j_transform(T: Iterable[int]) -> frozenset:
    """``{m1} | {m1 - m : m in T, m != m1}`` where ``m1 = max T``."""
    T = frozenset(T)
    if not T:
        raise EmptySet("J-transform of the empty set")
    if any((not isinstance(m, int)) or m < 1 for m in T):
        raise ValueError("J-transform is defined on sets of positive integers")
    top = max(T)
    return frozenset({top} | {top - m for m in T if m != top})


def _squarefree_rational_class(disc: Fraction) -> tuple[int, int]:
    """Representative of ``disc`` modulo nonzero rational squares."""
    num = disc.numerator * disc.denominator  # same class, now an integer
    sign = -1 if num < 0 else 1
    num = abs(num)
    core, d = 1, 2
    while d * d <= num:
        while num % (d * d) == 0:
            num //= d * d
        if num % d == 0:
            core *= d
            num //= d
        d += 1
    return sign, core * num


def residue_iso(f: PrimePower, g: PrimePower, field: Field) -> bool:
    """Decide ``R[x]/(f.irr^f.exp) ~= R[x]/(g.irr^g.exp)`` as R-algebras."""
    if f.irr.field != field or g.irr.field != field:
        raise FieldMismatch("divisors over a different field")
    if f.exp != g.exp or f.irr.deg != g.irr.deg:
        return False
    if isinstance(field, PrimeField):
        return True
    if f.irr == g.irr or f.irr.deg == 1:
        return True
    if isinstance(field, Rationals) and f.irr.deg == 2:
        def disc(q: Poly) -> Fraction:
            c, b, _ = q.coeffs
            return b * b - 4 * c

        return _squarefree_rational_class(disc(f.irr)) == _squarefree_rational_class(disc(g.irr))
    raise UnsupportedRationalIsoTest(
        f"isomorphism of the residue fields of {f.irr} and {g.irr} (degree {f.irr.deg}) is not decidable here"
    )


# ---------------------------------------------------------------------------
# certificates and verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertificatePair:
    src: PrimePower
    dst: PrimePower
    mode: str

    def to_json(self) -> dict:
        return {"src": self.src.to_json(), "dst": self.dst.to_json(), "mode": self.mode}


@dataclass(frozen=True)
class SEquivCertificate:
    pairs: tuple = ()

    def mapping(self) -> dict:
        return {pr.src: pr.dst for pr in self.pairs}

    def to_json(self) -> list:
        return [pr.to_json() for pr in self.pairs]

    @classmethod
    def from_json(cls, field: Field, data: list) -> "SEquivCertificate":
        def pp(d):
            return PrimePower(Poly.from_json(field, d["irr"]), int(d["exp"]))

        return cls(tuple(CertificatePair(pp(d["src"]), pp(d["dst"]), d["mode"]) for d in data))


@dataclass(frozen=True)
class SEquivVerdict:
    equivalent: bool
    certificate: SEquivCertificate | None
    obstruction: dict | None
    theorem_applicable: bool
    strict: bool = False

    def to_json(self) -> dict:
        out: dict = {"equivalent": self.equivalent}
        if self.equivalent:
            out["certificate"] = self.certificate.to_json()
        else:
            out["obstruction"] = self.obstruction
        out["theorem_applicable"] = self.theorem_applicable
        if self.strict:
            out["strict"] = True
        return out


def _set_json(s: frozenset) -> list[int]:
    return sorted(s)


def _pair_mode(Pc: frozenset, Pd: frozenset, strict: bool) -> str | None:
    if Pc == Pd:
        return EQUAL_SETS
    if not strict and Pc == j_transform(Pd):
        return J_TRANSFORM
    return None


def _min_separable(E: ElementaryDivisorMultiset) -> bool:
    try:
        return is_separable(E.minimal_polynomial())
    except ConstantPolynomial:
        return True


def _hopcroft_karp(adj: list[list[int]], n_right: int) -> list[int | None]:
    """Maximum matching; returns ``match_left[u] = v`` or ``None``."""
    INF = math.inf
    n_left = len(adj)
    match_l: list[int | None] = [None] * n_left
    match_r: list[int | None] = [None] * n_right
    dist = [0.0] * n_left

    def bfs() -> bool:
        q = deque()
        for u in range(n_left):
            if match_l[u] is None:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_r[v]
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u], match_r[v] = v, u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] is None:
                dfs(u)
    return match_l


def _hall_violator(adj: list[list[int]], match_l: list[int | None], n_right: int) -> list[int]:
    """A set S of left vertices with ``|N(S)| < |S|`` (smallest when feasible)."""
    n = len(adj)
    if n <= 16:
        for size in range(1, n + 1):
            for subset in combinations(range(n), size):
                if len({v for u in subset for v in adj[u]}) < size:
                    return list(subset)
    # alternating-path closure from an unmatched left vertex (Konig)
    match_r: list[int | None] = [None] * n_right
    for u, v in enumerate(match_l):
        if v is not None:
            match_r[v] = u
    start = next(u for u in range(n) if match_l[u] is None)
    seen_l, seen_r, stack = {start}, set(), [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen_r:
                seen_r.add(v)
                w = match_r[v]
                if w is not None and w not in seen_l:
                    seen_l.add(w)
                    stack.append(w)
    return sorted(seen_l)


def s_equivalent(
    Ec: ElementaryDivisorMultiset, Ed: ElementaryDivisorMultiset, strict: bool = False
) -> SEquivVerdict:
    """Decide S-equivalence; ``strict`` admits only equal power-index sets."""
    if Ec.field != Ed.field:
        raise FieldMismatch(f"{Ec.field!r} vs {Ed.field!r}")
    F = Ec.field
    applicable = _min_separable(Ec) or _min_separable(Ed)
    Rc, Rd = maximal_reducible(Ec), maximal_reducible(Ed)
    Pc = [power_index_set(Ec, f) for f in Rc]
    Pd = [power_index_set(Ed, g) for g in Rd]

    def describe(items, sets):
        return [
            {"divisor": f.label(), "P": _set_json(P), "J": _set_json(j_transform(P))}
            for f, P in zip(items, sets)
        ]

    if len(Rc) != len(Rd):
        obstruction = {
            "kind": "SizeMismatch",
            "R_c": describe(Rc, Pc),
            "R_d": describe(Rd, Pd),
        }
        return SEquivVerdict(False, None, obstruction, applicable, strict)

    modes: list[dict[int, str]] = []
    for i, f in enumerate(Rc):
        row = {}
        for j, g in enumerate(Rd):
            if residue_iso(f, g, F):
                mode = _pair_mode(Pc[i], Pd[j], strict)
                if mode is not None:
                    row[j] = mode
        modes.append(row)
    adj = [sorted(row) for row in modes]

    match = _hopcroft_karp(adj, len(Rd))
    if any(v is None for v in match):
        subset = _hall_violator(adj, match, len(Rd))
        nbrs = sorted({v for u in subset for v in adj[u]})
        obstruction = {
            "kind": "HallViolation",
            "subset": describe([Rc[u] for u in subset], [Pc[u] for u in subset]),
            "neighbors": describe([Rd[v] for v in nbrs], [Pd[v] for v in nbrs]),
            "candidates": describe(Rd, Pd),
        }
        return SEquivVerdict(False, None, obstruction, applicable, strict)

    # lexicographically first perfect matching for a canonical certificate
    used = [False] * len(Rd)
    chosen: list[int] = []

    def backtrack(i: int) -> bool:
        if i == len(Rc):
            return True
        for j in adj[i]:
            if not used[j]:
                used[j] = True
                chosen.append(j)
                if backtrack(i + 1):
                    return True
                chosen.pop()
                used[j] = False
        return False

    found = backtrack(0)
    assert found, "Hopcroft-Karp found a perfect matching that backtracking missed"
    cert = SEquivCertificate(
        tuple(CertificatePair(Rc[i], Rd[j], modes[i][j]) for i, j in enumerate(chosen))
    )
    return SEquivVerdict(True, cert, None, applicable, strict)


def strict_s_equivalent(Ec: ElementaryDivisorMultiset, Ed: ElementaryDivisorMultiset) -> SEquivVerdict:
    return s_equivalent(Ec, Ed, strict=True)


def check_certificate(
    cert: SEquivCertificate,
    Ec: ElementaryDivisorMultiset,
    Ed: ElementaryDivisorMultiset,
    strict: bool = False,
) -> None:
    """Re-validate ``cert`` from scratch; raises :class:`InvalidCertificate`."""
    F = Ec.field
    Rc, Rd = maximal_reducible(Ec), maximal_reducible(Ed)
    srcs = [pr.src for pr in cert.pairs]
    dsts = [pr.dst for pr in cert.pairs]
    if sorted(srcs, key=PrimePower.sort_key) != sorted(Rc, key=PrimePower.sort_key):
        raise InvalidCertificate("sources are not exactly the maximal reducible divisors of c")
    if sorted(dsts, key=PrimePower.sort_key) != sorted(Rd, key=PrimePower.sort_key):
        raise InvalidCertificate("targets are not exactly the maximal reducible divisors of d")
    for pr in cert.pairs:
        if not residue_iso(pr.src, pr.dst, F):
            raise InvalidCertificate(f"residue algebras of {pr.src} and {pr.dst} differ")
        Pc, Pd = power_index_set(Ec, pr.src), power_index_set(Ed, pr.dst)
        if pr.mode == EQUAL_SETS:
            ok = Pc == Pd
        elif pr.mode == J_TRANSFORM and not strict:
            ok = Pc == j_transform(Pd)
        else:
            ok = False
        if not ok:
            raise InvalidCertificate(f"mode {pr.mode} does not hold for {pr.src} -> {pr.dst}")


def certificate_is_valid(cert, Ec, Ed, strict: bool = False) -> bool:
    try:
        check_certificate(cert, Ec, Ed, strict)
    except InvalidCertificate:
        return False
    return True
