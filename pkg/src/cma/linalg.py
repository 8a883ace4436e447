"""Dense exact linear algebra on numpy arrays.

Over F_p arrays are ``int64`` holding canonical residues and every row
operation is vectorised.  Over Q and F_{p^u} arrays have ``object`` dtype and
rely on the scalars' own operators.
"""

from __future__ import annotations

import numpy as np

from .errors import DivisionByZero, ShapeError
from .fields import Field, PrimeField

_DIRECT_MATMUL_PRIME = 2**20


def is_prime_field(F: Field) -> bool:
    return isinstance(F, PrimeField)


def asarray(data, F: Field) -> np.ndarray:
    if isinstance(data, np.ndarray) and data.dtype == F.dtype:
        return data
    return F.asarray(data)


def zeros(shape, F: Field) -> np.ndarray:
    if is_prime_field(F):
        return np.zeros(shape, dtype=np.int64)
    return np.full(shape, F.zero, dtype=object)


def eye(n: int, F: Field) -> np.ndarray:
    a = zeros((n, n), F)
    for i in range(n):
        a[i, i] = F.one
    return a


def reduce(a: np.ndarray, F: Field) -> np.ndarray:
    return a % F.p if is_prime_field(F) else a


def matmul(a: np.ndarray, b: np.ndarray, F: Field) -> np.ndarray:
    if a.shape[-1] == 0:
        return zeros(a.shape[:-1] + b.shape[-1:], F)
    if is_prime_field(F):
        if F.p < _DIRECT_MATMUL_PRIME:
            return (a @ b) % F.p
        return ((a.astype(object) @ b.astype(object)) % F.p).astype(np.int64)
    return a @ b


def rref(a: np.ndarray, F: Field, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; pivots searched in the first ``ncols`` columns."""
    R = np.array(a, dtype=F.dtype, copy=True)
    if R.ndim != 2:
        raise ShapeError("rref expects a 2-D array")
    m, n = R.shape
    ncols = n if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    prime = F.p if is_prime_field(F) else None
    if prime is not None:
        R %= prime
    for col in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, col] != 0)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        if prime is not None:
            R[r] = R[r] * pow(int(R[r, col]), -1, prime) % prime
        else:
            R[r] = R[r] * F.inv(R[r, col])
        rows = np.flatnonzero(R[:, col] != 0)
        rows = rows[rows != r]
        if rows.size:
            if prime is not None:
                R[rows] = (R[rows] - np.outer(R[rows, col], R[r])) % prime
            else:
                R[rows] = R[rows] - np.outer(R[rows, col], R[r])
        pivots.append(col)
        r += 1
    return R, pivots


def rank(a: np.ndarray, F: Field) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, F)[1])


def nullspace(a: np.ndarray, F: Field) -> np.ndarray:
    """Rows form a basis of ``{v : a @ v = 0}``."""
    m, n = a.shape
    if m == 0:
        return eye(n, F)
    R, pivots = rref(a, F)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = zeros((len(free), n), F)
    for k, j in enumerate(free):
        basis[k, j] = F.one
        for i, pc in enumerate(pivots):
            basis[k, pc] = -R[i, j]
    return reduce(basis, F)


def row_space(a: np.ndarray, F: Field) -> np.ndarray:
    """Basis (rows, reduced echelon form) of the row space."""
    if a.shape[0] == 0:
        return a
    R, pivots = rref(a, F)
    return R[: len(pivots)]


def inverse(a: np.ndarray, F: Field) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ShapeError("inverse of a non-square matrix")
    aug = np.concatenate([asarray(a, F), eye(n, F)], axis=1)
    R, pivots = rref(aug, F, ncols=n)
    if len(pivots) < n:
        raise DivisionByZero("matrix is singular")
    return R[:, n:]


def is_invertible(a: np.ndarray, F: Field) -> bool:
    n = a.shape[0]
    return a.shape == (n, n) and rank(a, F) == n


def coordinates(basis: np.ndarray, vecs: np.ndarray, F: Field) -> np.ndarray:
    """Solve ``basis @ X = vecs`` for ``basis`` of full column rank.

    ``basis`` is d x k (columns are basis vectors), ``vecs`` is d x m.
    Raises ``ValueError`` if some column of ``vecs`` is outside the span.
    """
    d, k = basis.shape
    m = vecs.shape[1]
    if k == 0:
        if np.any(vecs != 0):
            raise ValueError("vectors outside the (zero) span")
        return zeros((0, m), F)
    aug = np.concatenate([basis, vecs], axis=1)
    R, pivots = rref(aug, F, ncols=k)
    if len(pivots) < k:
        raise ShapeError("basis is not of full column rank")
    if np.any(R[k:, k:] != 0):
        raise ValueError("vectors outside the span")
    return R[:k, k:]


def complement_columns(basis: np.ndarray, F: Field) -> list[int]:
    """Indices of standard basis vectors completing the column span of ``basis``."""
    d, k = basis.shape
    aug = np.concatenate([basis, eye(d, F)], axis=1)
    _, pivots = rref(aug, F)
    return [p - k for p in pivots if p >= k]
