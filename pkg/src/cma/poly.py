"""Dense univariate polynomials over an exact field.

Factorisation over F_p is complete (squarefree decomposition, distinct-degree
splitting, Cantor-Zassenhaus equal-degree splitting).  Over Q only products of
linear factors and squarefree parts of degree <= 4 without rational roots are
handled; anything else raises :class:`UnsupportedRationalFactorization`.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import (
    ConstantPolynomial,
    DivisionByZero,
    FieldMismatch,
    UnsupportedRationalFactorization,
)
from .fields import Field, PrimeField, Rationals


class Poly:
    """Immutable polynomial with coefficients stored low-to-high.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: Field, coeffs: Iterable = (), *, canonical: bool = False):
        cs = list(coeffs) if canonical else [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (field.zero, field.one), canonical=True)

    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        return cls(field, [c])

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls(field, (field.one,), canonical=True)

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, (), canonical=True)

    @classmethod
    def monomial(cls, field: Field, k: int, c=1) -> "Poly":
        return cls(field, [0] * k + [c])

    @classmethod
    def from_roots(cls, field: Field, roots: Iterable) -> "Poly":
        x = cls.x(field)
        return reduce(lambda acc, r: acc * (x - cls.const(field, r)), roots, cls.one(field))

    # -- basic properties ------------------------------------------------
    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def _canon(self, cs: list) -> "Poly":
        F = self.field
        if isinstance(F, PrimeField):
            p = F.p
            cs = [c % p for c in cs]
        return Poly(F, cs, canonical=True)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        return Poly(self.field, [other])

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "Poly":
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] = cs[i] + c
        return self._canon(cs)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return self._canon([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return Poly.zero(self.field)
        a, b = self.coeffs, o.coeffs
        cs = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    cs[i + j] += x * y
        return self._canon(cs)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = self.field(c)
        return self._canon([c * a for a in self.coeffs])

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = Poly.one(self.field), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        b = self._coerce(other)
        if b.is_zero():
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = b.deg
        if len(rem) - 1 < db:
            return Poly.zero(F), self
        inv_lead = F.inv(b.lead)
        bc = b.coeffs
        q = [0] * (len(rem) - db)
        prime = F.p if isinstance(F, PrimeField) else None
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if prime is not None:
                c %= prime
            if not c:
                continue
            c = c * inv_lead
            if prime is not None:
                c %= prime
            q[k - db] = c
            off = k - db
            for i in range(db + 1):
                rem[off + i] -= c * bc[i]
        return self._canon(q), self._canon(rem[:db])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        return not (other % self)

    def monic(self) -> "Poly":
        if not self.coeffs or self.is_monic():
            return self
        return self.scale(self.field.inv(self.lead))

    def derivative(self) -> "Poly":
        return self._canon([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, a):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return self.field(acc) if isinstance(self.field, PrimeField) else acc

    def powmod(self, e: int, mod: "Poly") -> "Poly":
        result, base = Poly.one(self.field) % mod, self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    # -- comparison --------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly(self.field, [other])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def sort_key(self) -> tuple:
        return (self.deg, self.coeffs)

    # -- display / serialisation --------------------------------------------
    def __str__(self) -> str:
        return self.display()

    def __repr__(self) -> str:
        return f"Poly({self.field!r}, {self.display()!r})"

    def display(self, compact: bool = False) -> str:
        if not self.coeffs:
            return "0"
        F = self.field
        parts: list[tuple[str, str]] = []
        for k in range(self.deg, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "+"
            if isinstance(F, Rationals) and c < 0:
                sign, c = "-", -c
            elif isinstance(F, PrimeField) and 2 * c > F.p:
                sign, c = "-", F.p - c  # signed residues: x-1 rather than x+2 over F_3
            if k == 0:
                body = F.scalar_str(c)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                if c == F.one:
                    body = mono
                else:
                    cs = F.scalar_str(c)
                    body = (f"({cs})" if "/" in cs else cs) + mono
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        sep = "{}" if compact else " {} "
        for sign, body in parts[1:]:
            out += sep.format(sign) + body
        return out

    def to_json(self) -> dict:
        return {"coeffs": [self.field.scalar_to_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, field: Field, obj) -> "Poly":
        if isinstance(obj, str):
            return parse_poly(field, obj)
        return cls(field, [field.scalar_from_json(c) for c in obj["coeffs"]])


_TERM = re.compile(r"^(?:\(?(?P<coef>\d+(?:/\d+)?)\)?\*?)?(?P<x>x(?:\^(?P<exp>\d+))?)?$")


def parse_poly(field: Field, text: str) -> Poly:
    """Parse display strings such as ``"x^3 + 2x + 1"`` or ``"x-1"``."""
    s = text.replace(" ", "")
    if s.startswith("(") and s.endswith(")") and s.count("(") == 1:
        s = s[1:-1]
    if not s:
        raise ValueError("empty polynomial string")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    coeffs: dict[int, Fraction] = {}
    for term in terms:
        sign = -1 if term[0] == "-" else 1
        body = term.lstrip("+-")
        m = _TERM.match(body)
        if not m or (m.group("coef") is None and m.group("x") is None):
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("x") is None:
            k = 0
        else:
            k = int(m.group("exp")) if m.group("exp") else 1
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * coef
    top = max(coeffs)
    return Poly(field, [coeffs.get(k, 0) for k in range(top + 1)])


# ---------------------------------------------------------------------------
# gcd
# ---------------------------------------------------------------------------

def _int_content(cs: Sequence[int]) -> int:
    return reduce(math.gcd, cs, 0)


def _to_primitive_int(f: Poly) -> list[int]:
    den = reduce(lambda a, c: a * c.denominator // math.gcd(a, c.denominator), f.coeffs, 1)
    ints = [int(c * den) for c in f.coeffs]
    g = _int_content(ints)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (low-to-high)."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and r:
        c, k = r[-1], len(r) - 1 - db
        r = [x * lb for x in r]
        for i, y in enumerate(b):
            r[k + i] -= c * y
        while r and r[-1] == 0:
            r.pop()
    return r


def _gcd_rational(a: Poly, b: Poly) -> Poly:
    F = a.field
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    x, y = _to_primitive_int(a), _to_primitive_int(b)
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _int_prem(x, y)
        if r:
            g = _int_content(r)
            r = [c // g for c in r]
        x, y = y, r
    return Poly(F, x).monic()


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    a._coerce(b)
    if isinstance(a.field, Rationals):
        return _gcd_rational(a, b)
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b`` and ``g`` monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = F.inv(r0.lead)
    return r0.scale(c), s0.scale(c), t0.scale(c)


def poly_arith(op: str, a: Poly, b: Poly):
    """Dispatch for ``add``, ``mul``, ``divrem`` and ``gcd``."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "divrem":
        return divmod(a, b)
    if op == "gcd":
        return gcd(a, b)
    raise ValueError(f"unknown polynomial operation {op!r}")


# ---------------------------------------------------------------------------
# factorisation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    unit: object
    factors: tuple  # ((irreducible monic Poly, multiplicity), ...)

    def expand(self, field: Field | None = None) -> Poly:
        if field is None:
            if not self.factors:
                raise ValueError("field needed to expand a factorization without factors")
            field = self.factors[0][0].field
        acc = Poly.const(field, self.unit)
        for g, m in self.factors:
            acc = acc * g**m
        return acc

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def _pth_root(f: Poly) -> Poly:
    p = f.field.p
    return Poly(f.field, f.coeffs[::p], canonical=True)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Write monic ``f`` as ``prod g_i^i`` with each ``g_i`` squarefree.

    Returns ``[(g, i), ...]`` for the nontrivial ``g``; the ``g`` are pairwise
    coprime.
    """
    f = f.monic()
    if f.deg < 1:
        return []
    F = f.field
    if isinstance(F, Rationals) or F.characteristic == 0:
        out, i = [], 1
        fp = f.derivative()
        a = gcd(f, fp)
        b, c = f // a, fp // a
        d = c - b.derivative()
        while b.deg > 0:
            g = gcd(b, d)
            if g.deg > 0:
                out.append((g, i))
            b = b // g
            c = d // g
            d = c - b.derivative()
            i += 1
        return out
    p = F.p
    out: list[tuple[Poly, int]] = []
    fp = f.derivative()
    if fp.is_zero():
        return [(g, m * p) for g, m in squarefree_decomposition(_pth_root(f))]
    c = gcd(f, fp)
    w = f // c
    i = 1
    while w.deg > 0:
        y = gcd(w, c)
        fac = w // y
        if fac.deg > 0:
            out.append((fac, i))
        w, c = y, c // y
        i += 1
    if c.deg > 0:
        out.extend((g, m * p) for g, m in squarefree_decomposition(_pth_root(c)))
    return out


def _ddf(f: Poly) -> list[tuple[Poly, int]]:
    F = f.field
    x = Poly.x(F)
    out = []
    h = x % f
    d = 0
    while f.deg >= 2 * (d + 1):
        d += 1
        h = h.powmod(F.p, f)
        g = gcd(h - x, f)
        if g.deg > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.deg > 0:
        out.append((f, f.deg))
    return out


def _random_poly(F: PrimeField, deg_bound: int, rng: random.Random) -> Poly:
    while True:
        g = Poly(F, [rng.randrange(F.p) for _ in range(deg_bound)], canonical=True)
        if g.deg >= 1:
            return g


def _edf(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    if f.deg == d:
        return [f]
    F = f.field
    p = F.p
    while True:
        a = _random_poly(F, f.deg, rng)
        if p == 2:
            t, b = a % f, a % f
            for _ in range(d - 1):
                t = (t * t) % f
                b = b + t
        else:
            b = a.powmod((p**d - 1) // 2, f) - Poly.one(F)
        g = gcd(b, f)
        if 0 < g.deg < f.deg:
            return _edf(g, d, rng) + _edf(f // g, d, rng)


def _sorted_factors(pairs: dict) -> tuple:
    return tuple(sorted(pairs.items(), key=lambda gm: gm[0].sort_key()))


def _factor_fp(f: Poly, rng: random.Random) -> dict:
    found: dict[Poly, int] = {}
    for g, m in squarefree_decomposition(f):
        for h, d in _ddf(g):
            for q in _edf(h, d, rng):
                found[q] = found.get(q, 0) + m
    return found


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(f: Poly) -> list[Fraction]:
    ints = _to_primitive_int(f)
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
    lo = next(c for c in ints if c != 0)
    cand = set()
    for a in _divisors(lo):
        for b in _divisors(ints[-1]):
            cand.add(Fraction(a, b))
            cand.add(Fraction(-a, b))
    roots.extend(r for r in sorted(cand) if r != 0 and f(r) == 0)
    return roots


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _split_quartic(f: Poly) -> list[Poly]:
    """Split a monic rational quartic without rational roots into irreducibles."""
    F = f.field
    den = reduce(lambda a, c: a * c.denominator // math.gcd(a, c.denominator), f.coeffs, 1)
    # h(y) = den^4 f(y / den) is monic with integer coefficients
    h = [int(f.coeffs[i] * den ** (4 - i)) for i in range(5)]
    d, c, b, a = h[0], h[1], h[2], h[3]
    for m in _divisors(d):
        for q in (m, -m):
            s = d // q
            if s != q:
                if (c - a * q) % (s - q):
                    continue
                p = (c - a * q) // (s - q)
                r = a - p
                if b != q + s + p * r:
                    continue
            else:
                if c != a * q:
                    continue
                disc = a * a - 4 * (b - 2 * q)
                if not _is_square(disc) or (a + math.isqrt(disc)) % 2:
                    continue
                p = (a + math.isqrt(disc)) // 2
                r = a - p
            g1 = Poly(F, [Fraction(q, den * den), Fraction(p, den), 1])
            g2 = Poly(F, [Fraction(s, den * den), Fraction(r, den), 1])
            return sorted([g1, g2], key=Poly.sort_key)
    return [f]


def _factor_q(f: Poly) -> dict:
    x = Poly.x(f.field)
    found: dict[Poly, int] = {}
    for g, m in squarefree_decomposition(f):
        rest = g
        for r in _rational_roots(g):
            lin = x - r
            rest = rest // lin
            found[lin] = found.get(lin, 0) + m
        if rest.deg <= 0:
            continue
        if rest.deg <= 3:
            pieces = [rest]
        elif rest.deg == 4:
            pieces = _split_quartic(rest)
        else:
            raise UnsupportedRationalFactorization(
                f"cannot factor {f} over Q: squarefree part {rest} of degree {rest.deg} "
                "has no rational roots and degree > 4"
            )
        for q in pieces:
            found[q] = found.get(q, 0) + m
    return found


def factor(f: Poly, seed: int = 0) -> Factorization:
    """Complete factorisation into monic irreducibles, canonically sorted.

    Randomised splitting uses a generator seeded with ``seed``; the sorted
    output does not depend on it.
    """
    if f.deg < 1:
        raise ConstantPolynomial(f"cannot factor constant {f}")
    unit = f.lead
    g = f.monic()
    if isinstance(f.field, Rationals):
        found = _factor_q(g)
    elif isinstance(f.field, PrimeField):
        found = _factor_fp(g, random.Random(seed))
    else:
        raise FieldMismatch(f"factorisation over {f.field!r} is not supported")
    return Factorization(unit, _sorted_factors(found))


def is_separable(f: Poly) -> bool:
    """True iff every irreducible factor of ``f`` has only simple roots."""
    if f.deg < 1:
        raise ConstantPolynomial(f"{f} is constant")
    if f.field.characteristic == 0:
        return True
    return all(gcd(q, q.derivative()).is_one() for q, _ in factor(f))


def squarefree_part(f: Poly) -> Poly:
    return reduce(lambda acc, gm: acc * gm[0], squarefree_decomposition(f), Poly.one(f.field))


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin's test over F_p; over Q decided through :func:`factor`."""
    if f.deg < 1:
        return False
    if f.deg == 1:
        return True
    F = f.field
    if isinstance(F, Rationals):
        fac = factor(f)
        return len(fac) == 1 and fac.factors[0][1] == 1
    f = f.monic()
    n, p = f.deg, F.p
    x = Poly.x(F)
    if x.powmod(p**n, f) != x % f:
        return False
    for r in _prime_divisors(n):
        if not gcd(x.powmod(p ** (n // r), f) - x, f).is_one():
            return False
    return True
