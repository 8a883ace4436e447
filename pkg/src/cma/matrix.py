"""Exact square matrices, Smith normal form of ``xI - c`` and elementary divisors."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce as _fold
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import FieldMismatch, ShapeError
from .fields import Field, field_from_json
from .poly import Poly, factor


@dataclass(frozen=True)
class MatrixF:
    """A rows x cols matrix over an exact field, entries in canonical form."""

    field: Field
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ShapeError("ragged matrix rows")

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable]) -> "MatrixF":
        return cls(field, tuple(tuple(field(v) for v in row) for row in rows))

    @classmethod
    def from_array(cls, field: Field, arr: np.ndarray) -> "MatrixF":
        return cls.from_rows(field, arr.tolist())

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatrixF":
        return cls.from_rows(field, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int | None = None) -> "MatrixF":
        cols = rows if cols is None else cols
        return cls.from_rows(field, [[0] * cols for _ in range(rows)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def n(self) -> int:
        if self.rows != self.cols:
            raise ShapeError(f"{self.rows}x{self.cols} matrix is not square")
        return self.rows

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def array(self) -> np.ndarray:
        if not self.entries:
            return linalg.zeros((0, 0), self.field)
        return linalg.asarray([list(r) for r in self.entries], self.field)

    def __matmul__(self, other: "MatrixF") -> "MatrixF":
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if self.cols != other.rows:
            raise ShapeError("inner dimensions differ")
        return MatrixF.from_array(self.field, linalg.matmul(self.array(), other.array(), self.field))

    def transpose(self) -> "MatrixF":
        return MatrixF(self.field, tuple(zip(*self.entries)))

    def inverse(self) -> "MatrixF":
        return MatrixF.from_array(self.field, linalg.inverse(self.array(), self.field))

    def rank(self) -> int:
        return linalg.rank(self.array(), self.field)

    def to_json(self) -> dict:
        F = self.field
        return {"field": F.to_json(), "matrix": [[F.scalar_to_json(v) for v in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "MatrixF":
        F = field_from_json(obj["field"])
        return cls.from_rows(F, [[F.scalar_from_json(v) for v in r] for r in obj["matrix"]])

    def __str__(self) -> str:
        F = self.field
        return "\n".join(" ".join(F.scalar_str(v) for v in r) for r in self.entries)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def block_diag(*blocks: MatrixF) -> MatrixF:
    F = blocks[0].field
    n = sum(b.rows for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        if b.field != F:
            raise FieldMismatch("blocks over different fields")
        for i in range(b.rows):
            for j in range(b.cols):
                out[off + i][off + j] = b[i, j]
        off += b.rows
    return MatrixF.from_rows(F, out)


def jordan_block(field: Field, size: int, eigenvalue=0) -> MatrixF:
    """``J_size(eigenvalue)``: eigenvalue on the diagonal, ones above it."""
    return MatrixF.from_rows(
        field,
        [[eigenvalue if i == j else (1 if j == i + 1 else 0) for j in range(size)] for i in range(size)],
    )


def companion(f: Poly) -> MatrixF:
    """Companion matrix of monic ``f``: ones on the subdiagonal, ``-coeffs`` in the last column."""
    f = f.monic()
    d = f.deg
    F = f.field
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = F.neg(f.coeffs[i])
    return MatrixF.from_rows(F, rows)


def random_matrix(field: Field, n: int, rng: random.Random) -> MatrixF:
    return MatrixF.from_rows(field, [[field.random_element(rng) for _ in range(n)] for _ in range(n)])


def random_invertible(field: Field, n: int, rng: random.Random) -> MatrixF:
    while True:
        g = random_matrix(field, n, rng)
        if g.rank() == n:
            return g


# ---------------------------------------------------------------------------
# elementary linear algebra
# ---------------------------------------------------------------------------

def kernel_basis(m: MatrixF) -> list[tuple]:
    """Basis of the right null space ``{v : m v = 0}``."""
    if m.rows == 0:
        return [tuple(r) for r in linalg.eye(m.cols, m.field).tolist()]
    return [tuple(r) for r in linalg.nullspace(m.array(), m.field).tolist()]


def minimal_polynomial(c: MatrixF) -> Poly:
    """Monic minimal polynomial from the first linear dependence among I, c, c^2, ..."""
    F, n = c.field, c.n
    a = c.array()
    power = linalg.eye(n, F)
    cols = [power.reshape(-1)]
    for k in range(1, n + 1):
        power = linalg.matmul(power, a, F)
        cols.append(power.reshape(-1))
        krylov = np.stack(cols, axis=1)
        null = linalg.nullspace(krylov, F)
        if len(null):
            v = null[0]
            return Poly(F, v.tolist()).monic()
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover


def characteristic_polynomial(c: MatrixF) -> Poly:
    """``det(xI - c)`` via reduction to Hessenberg form (valid over any field)."""
    F, n = c.field, c.n
    H = [list(r) for r in c.entries]
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1] != F.zero), None)
        if i is None:
            continue
        t = H[i][m - 1]
        if i > m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        for j in range(m + 1, n):
            u = F.div(H[j][m - 1], t)
            if u == F.zero:
                continue
            for k in range(n):
                H[j][k] = F.sub(H[j][k], F.mul(u, H[m][k]))
            for k in range(n):
                H[k][m] = F.add(H[k][m], F.mul(u, H[k][j]))
    x = Poly.x(F)
    ps = [Poly.one(F)]
    for m in range(1, n + 1):
        pm = (x - H[m - 1][m - 1]) * ps[m - 1]
        t = F.one
        for i in range(1, m):
            t = F.mul(t, H[m - i][m - i - 1])
            pm = pm - ps[m - i - 1].scale(F.mul(t, H[m - i - 1][m - 1]))
        ps.append(pm)
    return ps[n]


def evaluate_poly_at_matrix(f: Poly, c: MatrixF) -> MatrixF:
    F, n = c.field, c.n
    a = c.array()
    acc = linalg.zeros((n, n), F)
    for coef in reversed(f.coeffs):
        acc = linalg.reduce(linalg.matmul(acc, a, F) + linalg.eye(n, F) * coef, F)
    return MatrixF.from_array(F, acc)


# ---------------------------------------------------------------------------
# Smith normal form over R[x]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyMatrix:
    field: Field
    entries: tuple  # tuple of row tuples of Poly

    @classmethod
    def characteristic_matrix(cls, c: MatrixF) -> "PolyMatrix":
        F, n = c.field, c.n
        x = Poly.x(F)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                entry = Poly(F, [F.neg(c[i, j])], canonical=True)
                row.append(x + entry if i == j else entry)
            rows.append(tuple(row))
        return cls(F, tuple(rows))


def smith_diagonal(pm: PolyMatrix) -> list[Poly]:
    """Diagonal of the Smith normal form (monic, or zero), in divisibility order.

    Pivot rule: nonzero entry of least degree in the trailing submatrix, ties
    broken by lowest (row, column).
    """
    A = [list(r) for r in pm.entries]
    n = len(A)
    m = len(A[0]) if A else 0
    diag: list[Poly] = []
    for k in range(min(n, m)):
        while True:
            best, bdeg = None, None
            for i in range(k, n):
                for j in range(k, m):
                    e = A[i][j]
                    if e and (bdeg is None or e.deg < bdeg):
                        best, bdeg = (i, j), e.deg
            if best is None:
                break
            i, j = best
            if i != k:
                A[i], A[k] = A[k], A[i]
            if j != k:
                for row in A:
                    row[j], row[k] = row[k], row[j]
            piv = A[k][k]
            clean = True
            for i in range(k + 1, n):
                if A[i][k]:
                    q, r = divmod(A[i][k], piv)
                    if q:
                        A[i] = A[i][:k] + [A[i][t] - q * A[k][t] for t in range(k, m)]
                    clean = clean and not r
            for j in range(k + 1, m):
                if A[k][j]:
                    q, r = divmod(A[k][j], piv)
                    if q:
                        for i in range(k, n):
                            A[i][j] = A[i][j] - q * A[i][k]
                    clean = clean and not r
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, n) for j in range(k + 1, m) if A[i][j] % piv),
                None,
            )
            if bad is not None:
                A[k] = A[k][:k] + [A[k][t] + A[bad][t] for t in range(k, m)]
                continue
            break
        diag.append(A[k][k].monic())
    return diag


def smith_invariant_factors(c: MatrixF) -> list[Poly]:
    """Nonconstant invariant factors ``d_1 | d_2 | ...`` of ``xI - c``."""
    diag = smith_diagonal(PolyMatrix.characteristic_matrix(c))
    return [d for d in diag if d.deg >= 1]


# ---------------------------------------------------------------------------
# elementary divisors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimePower:
    """``irr ** exp`` with ``irr`` monic irreducible."""

    irr: Poly
    exp: int

    @property
    def poly(self) -> Poly:
        return self.irr**self.exp

    def sort_key(self) -> tuple:
        return (self.irr.sort_key(), self.exp)

    def label(self, compact: bool = True) -> str:
        base = self.irr.display(compact=compact)
        if self.exp == 1:
            return base
        if self.irr.deg > 1 or self.irr.coeffs[0]:
            base = f"({base})"
        return f"{base}^{self.exp}"

    def __str__(self) -> str:
        return self.label(compact=False)

    def to_json(self) -> dict:
        return {"irr": self.irr.display(compact=True), "exp": self.exp}


@dataclass(frozen=True)
class ElementaryDivisorMultiset:
    """Elementary divisors grouped by irreducible.

    ``groups`` is a tuple of ``(irr, exps)`` sorted canonically by ``irr``;
    each ``exps`` is a nonempty tuple sorted descending, repeated entries
    recording multiplicity.
    """

    field: Field
    groups: tuple

    @classmethod
    def from_pairs(cls, field: Field, pairs: Iterable[tuple[Poly, int]]) -> "ElementaryDivisorMultiset":
        by_irr: dict[Poly, list[int]] = {}
        for irr, e in pairs:
            if irr.field != field:
                raise FieldMismatch("divisor over a different field")
            if e < 1:
                raise ValueError("exponents must be positive")
            by_irr.setdefault(irr.monic(), []).append(int(e))
        groups = tuple(
            (irr, tuple(sorted(es, reverse=True)))
            for irr, es in sorted(by_irr.items(), key=lambda kv: kv[0].sort_key())
        )
        return cls(field, groups)

    @property
    def size(self) -> int:
        return sum(irr.deg * sum(es) for irr, es in self.groups)

    def irreducibles(self) -> list[Poly]:
        return [irr for irr, _ in self.groups]

    def exps(self, irr: Poly) -> tuple:
        for g, es in self.groups:
            if g == irr:
                return es
        return ()

    def max_exp(self, irr: Poly) -> int:
        es = self.exps(irr)
        return es[0] if es else 0

    def items(self) -> list[PrimePower]:
        """All divisors with multiplicity."""
        return [PrimePower(irr, e) for irr, es in self.groups for e in es]

    def distinct(self) -> list[PrimePower]:
        """The set E_c (duplicates removed), canonically ordered."""
        return [PrimePower(irr, e) for irr, es in self.groups for e in sorted(set(es), reverse=True)]

    def minimal_polynomial(self) -> Poly:
        return _fold(lambda acc, g: acc * g[0] ** g[1][0], self.groups, Poly.one(self.field))

    def characteristic_polynomial(self) -> Poly:
        return _fold(lambda acc, g: acc * g[0] ** sum(g[1]), self.groups, Poly.one(self.field))

    def rational_canonical_form(self) -> MatrixF:
        """A matrix with exactly these elementary divisors (primary rational form)."""
        if not self.groups:
            raise ValueError("empty divisor multiset")
        return block_diag(*(companion(d.poly) for d in self.items()))

    def to_json(self) -> list:
        return [{"irr": irr.display(compact=True), "exps": list(es)} for irr, es in self.groups]

    @classmethod
    def from_json(cls, field: Field, data: Sequence[dict]) -> "ElementaryDivisorMultiset":
        pairs = []
        for item in data:
            irr = Poly.from_json(field, item["irr"])
            pairs.extend((irr, int(e)) for e in item["exps"])
        return cls.from_pairs(field, pairs)

    def __str__(self) -> str:
        return "{" + ", ".join(str(d) for d in self.items()) + "}"


def elementary_divisors(c: MatrixF, seed: int = 0) -> ElementaryDivisorMultiset:
    """Factor each invariant factor of ``xI - c`` and group the prime powers."""
    pairs = []
    for d in smith_invariant_factors(c):
        pairs.extend(factor(d, seed=seed).factors)
    return ElementaryDivisorMultiset.from_pairs(c.field, pairs)
