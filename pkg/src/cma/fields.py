"""Exact scalar arithmetic over prime fields and the rationals.

Scalars are plain Python values in canonical form:

* ``PrimeField(p)`` -- ``int`` residues in ``[0, p)``
* ``Rationals()`` -- :class:`fractions.Fraction` (always reduced, positive
  denominator)
* ``ExtensionField(p, u)`` -- :class:`GFElement`, used only by the
  homological module to realise ``F_{p^u}``.

Canonical forms are unique, so equality of scalars is plain ``==``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

import numpy as np

from .errors import DivisionByZero, FieldMismatch, InvalidField

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p, p < 2**31."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise InvalidField(f"characteristic must be an int, got {self.p!r}")
        if not 2 <= self.p < MAX_PRIME or not is_prime(self.p):
            raise InvalidField(f"{self.p} is not a prime below 2^31")

    zero = 0
    one = 1

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    def __call__(self, x: Any) -> int:
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self(Fraction(x))
        if isinstance(x, np.integer):
            return int(x) % self.p
        raise FieldMismatch(f"cannot coerce {x!r} into F_{self.p}")

    def contains(self, a: Any) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise DivisionByZero(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def to_json(self) -> dict:
        return {"type": "Fp", "p": self.p}

    def scalar_to_json(self, a: int) -> int:
        return int(a)

    def scalar_from_json(self, v: Any) -> int:
        return self(v)

    def scalar_str(self, a: int) -> str:
        return str(a)

    # numpy support for the dense linear algebra kernels
    dtype = np.int64

    def asarray(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        return np.vectorize(self, otypes=[np.int64])(arr) if arr.size else arr.astype(np.int64)

    def __repr__(self) -> str:
        return f"F_{self.p}"


@dataclass(frozen=True)
class Rationals:
    """The field Q with arbitrary-precision fractions."""

    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0
    order = None

    def __call__(self, x: Any) -> Fraction:
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, (int, Fraction, str)):
            return Fraction(x)
        if isinstance(x, np.integer):
            return Fraction(int(x))
        raise FieldMismatch(f"cannot coerce {x!r} into Q")

    def contains(self, a: Any) -> bool:
        return isinstance(a, Fraction)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("0 has no inverse in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in Q")
        return Fraction(a) / b

    def random_element(self, rng: random.Random, bound: int = 5) -> Fraction:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, 2))

    def to_json(self) -> dict:
        return {"type": "Q"}

    def scalar_to_json(self, a: Fraction) -> str:
        a = Fraction(a)
        return f"{a.numerator}/{a.denominator}"

    def scalar_from_json(self, v: Any) -> Fraction:
        return self(v)

    def scalar_str(self, a: Fraction) -> str:
        return str(a)

    dtype = object

    def asarray(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        return np.vectorize(self, otypes=[object])(arr) if arr.size else arr

    def __repr__(self) -> str:
        return "Q"


@dataclass(frozen=True, eq=False)
class GFElement:
    """An element of F_{p^u}, stored as coefficients in F_p[y]/(modulus)."""

    field: "ExtensionField" = field(repr=False)
    coeffs: tuple

    def _lift(self, other):
        if isinstance(other, GFElement):
            if other.field != self.field:
                raise FieldMismatch("elements of different extension fields")
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._lift(other)
        p = self.field.p
        return GFElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return GFElement(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return self.field._mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self.field.inv(self._lift(other))

    def __rtruediv__(self, other):
        return self._lift(other) * self.field.inv(self)

    def __pow__(self, e: int):
        return self.field.pow(self, e)

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"GF({self.field.p}^{self.field.u}){list(self.coeffs)}"


@dataclass(frozen=True)
class ExtensionField:
    """F_{p^u} as F_p[y]/(modulus) for a monic irreducible ``modulus``.

    ``modulus`` is given low-to-high and has length ``u + 1``.
    """

    p: int
    modulus: tuple

    def __post_init__(self):
        PrimeField(self.p)
        if len(self.modulus) < 2 or self.modulus[-1] != 1:
            raise InvalidField("modulus must be monic of degree >= 1")

    @classmethod
    def of_degree(cls, p: int, u: int) -> "ExtensionField":
        """Lexicographically first monic irreducible of degree ``u`` as modulus."""
        from .poly import Poly, is_irreducible

        F = PrimeField(p)
        for k in range(p**u):
            low = [(k // p**i) % p for i in range(u)]
            f = Poly(F, low + [1])
            if is_irreducible(f):
                return cls(p, tuple(low + [1]))
        raise InvalidField(f"no irreducible of degree {u} over F_{p}")  # pragma: no cover

    @property
    def u(self) -> int:
        return len(self.modulus) - 1

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p**self.u

    @property
    def zero(self) -> GFElement:
        return GFElement(self, (0,) * self.u)

    @property
    def one(self) -> GFElement:
        return GFElement(self, (1,) + (0,) * (self.u - 1))

    def __call__(self, x: Any) -> GFElement:
        if isinstance(x, GFElement):
            if x.field != self:
                raise FieldMismatch("element of a different extension field")
            return x
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            return GFElement(self, (int(x) % self.p,) + (0,) * (self.u - 1))
        if isinstance(x, (list, tuple)) and len(x) == self.u:
            return GFElement(self, tuple(int(c) % self.p for c in x))
        raise FieldMismatch(f"cannot coerce {x!r} into GF({self.p}^{self.u})")

    def contains(self, a: Any) -> bool:
        return isinstance(a, GFElement) and a.field == self

    def _mul(self, a: GFElement, b: GFElement) -> GFElement:
        p, u, m = self.p, self.u, self.modulus
        prod = [0] * (2 * u - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        for k in range(len(prod) - 1, u - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(u + 1):
                    prod[k - u + i] -= c * m[i]
        return GFElement(self, tuple(c % p for c in prod[:u]))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def pow(self, a: GFElement, e: int) -> GFElement:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def inv(self, a: GFElement) -> GFElement:
        if not a:
            raise DivisionByZero("0 has no inverse")
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return a * self.inv(b)

    def random_element(self, rng: random.Random) -> GFElement:
        return GFElement(self, tuple(rng.randrange(self.p) for _ in range(self.u)))

    def to_json(self) -> dict:
        return {"type": "GF", "p": self.p, "modulus": list(self.modulus)}

    def scalar_to_json(self, a: GFElement) -> list:
        return list(a.coeffs)

    def scalar_from_json(self, v: Any) -> GFElement:
        return self(v)

    def scalar_str(self, a: GFElement) -> str:
        return str(list(a.coeffs))

    dtype = object

    def asarray(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for idx in np.ndindex(arr.shape):
            out[idx] = self(arr[idx])
        return out

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.u})"


Field = Union[PrimeField, Rationals, ExtensionField]
Scalar = Union[int, Fraction, GFElement]


def field_from_json(obj: dict) -> Field:
    kind = obj.get("type")
    if kind == "Fp":
        return PrimeField(int(obj["p"]))
    if kind == "Q":
        return Rationals()
    if kind == "GF":
        return ExtensionField(int(obj["p"]), tuple(int(c) for c in obj["modulus"]))
    raise InvalidField(f"unknown field description {obj!r}")


def field_for_characteristic(p: int) -> Field:
    return Rationals() if p == 0 else PrimeField(p)


def field_arith(op: str, a: Scalar, b: Scalar | None, F: Field) -> Scalar:
    """Apply ``op`` in {add, sub, mul, div, neg, inv} to canonical scalars of ``F``."""
    operands = (a,) if op in ("neg", "inv") else (a, b)
    for x in operands:
        if not F.contains(x):
            raise FieldMismatch(f"{x!r} is not a canonical element of {F!r}")
    if op in ("neg", "inv"):
        return getattr(F, op)(a)
    if op in ("add", "sub", "mul", "div"):
        return getattr(F, op)(a, b)
    raise ValueError(f"unknown field operation {op!r}")
