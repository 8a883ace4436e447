"""Explicit realizations of non-semisimple blocks and their homological data.

A block of a centralizer algebra is Morita equivalent to ``End_U(M)`` with
``U = K[x]/(x^n)`` and ``M = (+)_{e in E} M(e)``, ``M(e) = K[x]/(x^e)``.  Its
basis is ``h(a, b, t): M(a) -> M(b), 1 -> x^t`` for
``max(0, b - a) <= t <= b - 1``, and maps compose left to right::

    h(a, b, t) * h(b, c, s) = h(a, c, t + s)   if t + s < c, else 0

All structure constants are 0 or 1, so the algebra is defined over the prime
field and every rank computed here is unchanged by extending scalars to
``F_{p^u}``.  Left modules are stored with a basis adapted to the primitive
idempotents: each basis vector lies in exactly one ``e_a X``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .errors import MissingTopExponent, OutOfRange, ProjectiveInput
from .fields import Field, PrimeField, Rationals

DEFAULT_RESOLUTION_CAP = 64
ISO_RANDOM_DRAWS = 64


# ---------------------------------------------------------------------------
# dimension outcomes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Finite:
    value: int

    def __str__(self) -> str:
        return f"Finite({self.value})"

    def to_json(self) -> dict:
        return {"kind": "Finite", "value": self.value}


@dataclass(frozen=True)
class DetectedInfinite:
    def __str__(self) -> str:
        return "DetectedInfinite"

    def to_json(self) -> dict:
        return {"kind": "DetectedInfinite"}


@dataclass(frozen=True)
class ExceededCap:
    cap: int

    def __str__(self) -> str:
        return f"ExceededCap({self.cap})"

    def to_json(self) -> dict:
        return {"kind": "ExceededCap", "cap": self.cap}


@dataclass(frozen=True)
class Infinite:
    def __str__(self) -> str:
        return "Infinite"

    def to_json(self) -> dict:
        return {"kind": "Infinite"}


# ---------------------------------------------------------------------------
# block descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NakayamaData:
    """``U = K[x]/(x^n)`` with ``K`` of degree ``u`` over the prime field of characteristic ``p``.

    ``p = 0`` stands for the rationals (``K`` is then a number field of degree ``u``).
    """

    n: int
    u: int = 1
    p: int = 2

    def __post_init__(self):
        if self.n < 1 or self.u < 1 or self.p < 0:
            raise OutOfRange(f"bad block descriptor n={self.n}, u={self.u}, p={self.p}")

    def prime_field(self) -> Field:
        return Rationals() if self.p == 0 else PrimeField(self.p)


@dataclass(frozen=True)
class GeneratorModule:
    """The basic module ``(+)_{e in exps} M(e)``; ``exps`` is sorted ascending."""

    exps: tuple

    @classmethod
    def of(cls, n: int, exps) -> "GeneratorModule":
        E = tuple(sorted(set(int(e) for e in exps)))
        if any(e < 1 or e > n for e in E):
            raise OutOfRange(f"exponents {E} outside 1..{n}")
        if n not in E:
            raise MissingTopExponent(f"{n} is not among {E}, so M is not a generator")
        return cls(E)


def syzygy_exponent(e: int, n: int) -> int:
    """``Omega(M(e)) = M(n - e)`` over ``K[x]/(x^n)``."""
    if not 1 <= e <= n:
        raise OutOfRange(f"exponent {e} outside 1..{n}")
    if e == n:
        raise ProjectiveInput(f"M({n}) is projective and has zero syzygy")
    return n - e


def omega_set(exps, n: int) -> frozenset:
    """``{n} | {n - e : e != n}``: the exponents of ``U (+) Omega(M)``."""
    return frozenset({n} | {n - e for e in exps if e != n})


# ---------------------------------------------------------------------------
# the algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StructureConstantAlgebra:
    field: Field
    nakayama: NakayamaData
    exps: tuple
    labels: tuple  # (a, b, t) per basis element
    table: np.ndarray  # table[i, j] = index of basis_i * basis_j, or -1 for zero
    idempotents: tuple  # index of e_a for a in exps

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def h(self, a: int, b: int, t: int) -> int:
        return self.index[(a, b, t)]

    def source(self, i: int) -> int:
        return self.labels[i][0]

    def target(self, i: int) -> int:
        return self.labels[i][1]

    def exp_position(self, a: int) -> int:
        return self.exps.index(a)

    def check_associativity(self) -> bool:
        d = self.dim
        T = np.where(self.table < 0, d, self.table)
        T = np.pad(T, ((0, 1), (0, 1)), constant_values=d)
        idx = np.arange(d)
        left = T[T[:d, :d][:, :, None], idx[None, None, :]]
        right = T[idx[:, None, None], T[:d, :d][None, :, :]]
        return bool(np.array_equal(left, right))

    def check_unit(self) -> bool:
        """``sum e_a`` is a two-sided identity and the ``e_a`` are orthogonal idempotents."""
        for i, (a, b, _) in enumerate(self.labels):
            for c, e in zip(self.exps, self.idempotents):
                left = self.table[e, i]
                right = self.table[i, e]
                if left != (i if c == a else -1) or right != (i if c == b else -1):
                    return False
        return True

    @cached_property
    def radical(self) -> tuple:
        """Indices of non-invertible basis maps: ``a != b`` or ``t > 0``."""
        return tuple(i for i, (a, b, t) in enumerate(self.labels) if a != b or t > 0)

    def radical_power(self, k: int) -> tuple:
        """Basis of ``rad^k``; products of basis elements are basis elements or zero."""
        if k == 0:
            return tuple(range(self.dim))
        current = set(self.radical)
        for _ in range(k - 1):
            current = {int(self.table[i, j]) for i in current for j in self.radical} - {-1}
        return tuple(sorted(current))

    @cached_property
    def arrows(self) -> tuple:
        """Radical basis elements outside ``rad^2``; they generate the radical."""
        sq = set(self.radical_power(2))
        return tuple(i for i in self.radical if i not in sq)

    def loewy_length(self) -> int:
        k = 0
        while self.radical_power(k):
            k += 1
        return k

    def cartan(self) -> np.ndarray:
        """``cartan[a][b] = dim e_a Lambda e_b``."""
        m = len(self.exps)
        C = np.zeros((m, m), dtype=np.int64)
        for a, b, _ in self.labels:
            C[self.exp_position(a), self.exp_position(b)] += 1
        return C

    def anti_automorphism(self) -> np.ndarray:
        """Index map of ``h(a, b, t) -> h(b, a, t + a - b)``."""
        return np.array([self.h(b, a, t + a - b) for a, b, t in self.labels], dtype=np.int64)

    def check_anti_automorphism(self) -> bool:
        """``phi(xy) = phi(y) phi(x)`` on all basis pairs, ``phi`` bijective and fixing idempotents."""
        phi = self.anti_automorphism()
        if sorted(phi.tolist()) != list(range(self.dim)):
            return False
        if any(phi[e] != e for e in self.idempotents):
            return False
        ext = np.append(phi, -1)
        lhs = ext[self.table]  # phi(x_i x_j), -1 stays -1
        rhs = self.table[phi[None, :], phi[:, None]]  # phi(x_j) phi(x_i)
        return bool(np.array_equal(lhs, rhs))


def _basis_labels(exps: tuple) -> list[tuple]:
    return [(a, b, t) for a in exps for b in exps for t in range(max(0, b - a), b)]


def realize_block(U: NakayamaData, M: GeneratorModule, field: Field | None = None) -> StructureConstantAlgebra:
    """``End_U(M)`` with its multiplication table, validated on construction."""
    n = U.n
    exps = tuple(sorted(M.exps))
    if n not in exps:
        raise MissingTopExponent(f"{n} is not among {exps}")
    if any(e < 1 or e > n for e in exps):
        raise OutOfRange(f"exponents {exps} outside 1..{n}")
    field = field or U.prime_field()
    labels = _basis_labels(exps)
    index = {lab: i for i, lab in enumerate(labels)}
    d = len(labels)
    table = np.full((d, d), -1, dtype=np.int64)
    for i, (a, b, t) in enumerate(labels):
        for j, (b2, c, s) in enumerate(labels):
            if b2 == b and t + s < c:
                table[i, j] = index[(a, c, t + s)]
    alg = StructureConstantAlgebra(
        field=field,
        nakayama=U,
        exps=exps,
        labels=tuple(labels),
        table=table,
        idempotents=tuple(index[(a, a, 0)] for a in exps),
    )
    if not alg.check_associativity():
        raise AssertionError(f"multiplication table of End(M) for E={exps} is not associative")
    if not alg.check_unit():
        raise AssertionError("idempotents do not sum to the identity")
    return alg


def hom_dim_bruteforce(a: int, b: int, field: Field) -> int:
    """``dim Hom_U(M(a), M(b))`` by solving ``phi X_a = X_b phi`` for the shift matrices."""
    def shift(m: int) -> np.ndarray:
        S = linalg.zeros((m, m), field)
        for i in range(m - 1):
            S[i + 1, i] = field.one
        return S

    Xa, Xb = shift(a), shift(b)
    eq = np.kron(Xb, linalg.eye(a, field)) - np.kron(linalg.eye(b, field), Xa.T)
    return a * b - linalg.rank(linalg.reduce(eq, field), field)


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LambdaModule:
    """A left module: ``actions[i]`` is the d x d matrix of basis element ``i``."""

    alg: StructureConstantAlgebra
    actions: np.ndarray  # shape (dim alg, d, d)
    comps: tuple  # idempotent label (an exponent in alg.exps) of each basis vector

    @property
    def dim(self) -> int:
        return len(self.comps)

    @property
    def field(self) -> Field:
        return self.alg.field

    def component(self, a: int) -> list[int]:
        return [i for i, c in enumerate(self.comps) if c == a]

    def dim_vector(self) -> tuple:
        return tuple(sum(1 for c in self.comps if c == a) for a in self.alg.exps)

    def check(self) -> bool:
        """Actions respect the multiplication table and ``sum e_a`` acts as 1."""
        F, alg, d = self.field, self.alg, self.dim
        if d == 0:
            return True
        acc = linalg.zeros((d, d), F)
        for e in alg.idempotents:
            acc = acc + self.actions[e]
        if not np.array_equal(linalg.reduce(acc, F), linalg.eye(d, F)):
            return False
        zero = linalg.zeros((d, d), F)
        for i in range(alg.dim):
            for j in range(alg.dim):
                k = alg.table[i, j]
                expect = zero if k < 0 else self.actions[k]
                if not np.array_equal(linalg.matmul(self.actions[i], self.actions[j], F), expect):
                    return False
        return True

    def span_under(self, elements) -> dict:
        """Per component ``a``, a basis (columns, component coordinates) of ``e_a span{x v}``."""
        F = self.field
        out = {}
        for a in self.alg.exps:
            rows = self.component(a)
            # h(a, b, t) lands in e_a X under the left action
            pieces = [self.actions[x][rows, :] for x in elements if self.alg.source(x) == a]
            if not rows or not pieces:
                out[a] = linalg.zeros((len(rows), 0), F)
                continue
            stacked = np.concatenate(pieces, axis=1)
            out[a] = linalg.row_space(stacked.T.copy(), F).T
        return out

    def radical_layers(self) -> tuple:
        """Dimension vectors of ``rad^k X`` for k = 1, 2, ... until zero."""
        layers = []
        k = 1
        while True:
            basis = self.alg.radical_power(k)
            if not basis:
                break
            sub = self.span_under(basis)
            vec = tuple(sub[a].shape[1] for a in self.alg.exps)
            layers.append(vec)
            if not any(vec):
                break
            k += 1
        return tuple(layers)

    def fingerprint(self) -> tuple:
        return (self.dim_vector(), self.radical_layers())

    def socle(self) -> dict:
        """Per component, columns (component coordinates) spanning ``{v : rad v = 0}``."""
        F = self.field
        out = {}
        for a in self.alg.exps:
            cols = self.component(a)
            if not cols:
                out[a] = linalg.zeros((0, 0), F)
                continue
            eqs = [self.actions[x][:, cols] for x in self.alg.arrows if self.alg.target(x) == a]
            if not eqs:
                out[a] = linalg.eye(len(cols), F)
                continue
            out[a] = linalg.nullspace(np.concatenate(eqs, axis=0), F).T
        return out


def _module_from_basis(alg: StructureConstantAlgebra, basis: np.ndarray, comps: tuple,
                       ambient: LambdaModule) -> LambdaModule:
    """Submodule of ``ambient`` spanned by the (graded) columns of ``basis``."""
    F = alg.field
    k = basis.shape[1]
    if k == 0:
        return LambdaModule(alg, linalg.zeros((alg.dim, 0, 0), F), ())
    images = np.concatenate([linalg.matmul(ambient.actions[x], basis, F) for x in range(alg.dim)], axis=1)
    coords = linalg.coordinates(basis, images, F)  # k x (dim * k)
    actions = coords.reshape(k, alg.dim, k).transpose(1, 0, 2).copy()
    return LambdaModule(alg, actions, comps)


def projective(alg: StructureConstantAlgebra, a: int) -> LambdaModule:
    """``P(a) = Lambda e_a`` with basis ``h(c, a, t)``; ``h(c, a, t)`` lies in ``e_c P(a)``."""
    F = alg.field
    basis = [i for i in range(alg.dim) if alg.target(i) == a]
    pos = {b: k for k, b in enumerate(basis)}
    d = len(basis)
    actions = linalg.zeros((alg.dim, d, d), F)
    for x in range(alg.dim):
        for j, b in enumerate(basis):
            k = alg.table[x, b]
            if k >= 0:
                actions[x, pos[int(k)], j] = F.one
    return LambdaModule(alg, actions, tuple(alg.source(b) for b in basis))


def simple(alg: StructureConstantAlgebra, a: int) -> LambdaModule:
    F = alg.field
    actions = linalg.zeros((alg.dim, 1, 1), F)
    actions[alg.idempotents[alg.exp_position(a)], 0, 0] = F.one
    return LambdaModule(alg, actions, (a,))


def injective(alg: StructureConstantAlgebra, c: int) -> LambdaModule:
    """``I(c) = D(e_c Lambda)``: dual basis ``delta_mu`` for ``mu = h(c, d, t)``.

    ``(lambda . delta_mu)(m) = delta_mu(m lambda)``; ``delta_{h(c, d, t)}`` lies in ``e_d I(c)``.
    """
    F = alg.field
    basis = [i for i in range(alg.dim) if alg.source(i) == c]
    pos = {b: k for k, b in enumerate(basis)}
    d = len(basis)
    actions = linalg.zeros((alg.dim, d, d), F)
    for lam in range(alg.dim):
        for m in basis:
            k = alg.table[m, lam]
            if k >= 0:
                actions[lam, pos[m], pos[int(k)]] = F.one
    return LambdaModule(alg, actions, tuple(alg.target(b) for b in basis))


def regular(alg: StructureConstantAlgebra) -> LambdaModule:
    return direct_sum(alg, [projective(alg, a) for a in alg.exps])


def zero_module(alg: StructureConstantAlgebra) -> LambdaModule:
    return LambdaModule(alg, linalg.zeros((alg.dim, 0, 0), alg.field), ())


def direct_sum(alg: StructureConstantAlgebra, modules: list[LambdaModule]) -> LambdaModule:
    F = alg.field
    modules = [m for m in modules if m.dim]
    if not modules:
        return zero_module(alg)
    d = sum(m.dim for m in modules)
    actions = linalg.zeros((alg.dim, d, d), F)
    off = 0
    for m in modules:
        actions[:, off:off + m.dim, off:off + m.dim] = m.actions
        off += m.dim
    return LambdaModule(alg, actions, tuple(c for m in modules for c in m.comps))


def _graded_radical(X: LambdaModule) -> dict:
    """Per component ``a``: columns in full coordinates spanning ``e_a rad X``."""
    F, alg = X.field, X.alg
    out = {}
    for a in alg.exps:
        rows = X.component(a)
        pieces = [X.actions[x][rows, :] for x in alg.radical if alg.source(x) == a]
        if not rows or not pieces:
            out[a] = linalg.zeros((len(rows), 0), F)
            continue
        out[a] = linalg.row_space(np.concatenate(pieces, axis=1).T.copy(), F).T
    return out


def top_generators(X: LambdaModule) -> list[tuple[int, np.ndarray]]:
    """``(a, v)`` pairs: vectors ``v in e_a X`` whose classes form a basis of ``X / rad X``."""
    F = X.field
    rad = _graded_radical(X)
    gens = []
    for a in X.alg.exps:
        rows = X.component(a)
        if not rows:
            continue
        for j in linalg.complement_columns(rad[a], F):
            v = linalg.zeros((X.dim,), F)
            v[rows[j]] = F.one
            gens.append((a, v))
    return gens


def projective_cover(X: LambdaModule) -> tuple[LambdaModule, np.ndarray]:
    """``(P, pi)`` with ``pi: P -> X`` (d_X x d_P matrix) a projective cover."""
    alg, F = X.alg, X.field
    gens = top_generators(X)
    summands = [projective(alg, a) for a, _ in gens]
    P = direct_sum(alg, summands)
    cols = []
    for (a, v), Pa in zip(gens, summands):
        basis = [i for i in range(alg.dim) if alg.target(i) == a]
        for b in basis:
            cols.append(linalg.matmul(X.actions[b], v.reshape(-1, 1), F))
    pi = np.concatenate(cols, axis=1) if cols else linalg.zeros((X.dim, 0), F)
    return P, pi


def _graded_kernel(P: LambdaModule, pi: np.ndarray) -> tuple[np.ndarray, tuple]:
    F = P.field
    cols, comps = [], []
    for a in P.alg.exps:
        idx = P.component(a)
        if not idx:
            continue
        ker = linalg.nullspace(pi[:, idx], F)  # rows
        for row in ker:
            v = linalg.zeros((P.dim,), F)
            v[idx] = row
            cols.append(v)
            comps.append(a)
    if not cols:
        return linalg.zeros((P.dim, 0), F), ()
    return np.stack(cols, axis=1), tuple(comps)


def syzygy(X: LambdaModule) -> LambdaModule:
    P, pi = projective_cover(X)
    basis, comps = _graded_kernel(P, pi)
    return _module_from_basis(X.alg, basis, comps, P)


def is_projective(X: LambdaModule) -> bool:
    P, _ = projective_cover(X)
    return P.dim == X.dim


# ---------------------------------------------------------------------------
# homomorphisms and isomorphism testing
# ---------------------------------------------------------------------------

def hom_space(X: LambdaModule, Y: LambdaModule) -> list[np.ndarray]:
    """Basis of ``Hom_Lambda(X, Y)`` as d_Y x d_X matrices.

    Unknowns are restricted to blocks ``e_a X -> e_a Y``; intertwining with the
    arrows then gives every module map.
    """
    F, alg = X.field, X.alg
    dx, dy = X.dim, Y.dim
    if dx == 0 or dy == 0:
        return []
    unknowns = [(i, j) for i in range(dy) for j in range(dx) if Y.comps[i] == X.comps[j]]
    if not unknowns:
        return []
    flat = [i * dx + j for i, j in unknowns]
    system = linalg.zeros((0, len(flat)), F)
    eye_x, eye_y = linalg.eye(dx, F), linalg.eye(dy, F)
    for x in alg.arrows:
        A, B = Y.actions[x], X.actions[x]
        if not (np.any(A != 0) or np.any(B != 0)):
            continue
        eq = np.kron(A, eye_x) - np.kron(eye_y, B.T)
        eq = linalg.reduce(eq[:, flat], F)
        system = linalg.row_space(np.concatenate([system, eq], axis=0), F)
    ker = linalg.nullspace(system, F) if system.shape[0] else linalg.eye(len(flat), F)
    out = []
    for row in ker:
        phi = linalg.zeros((dy, dx), F)
        for (i, j), val in zip(unknowns, row):
            phi[i, j] = val
        out.append(phi)
    return out


def find_isomorphism(X: LambdaModule, Y: LambdaModule, seed: int = 0,
                     draws: int = ISO_RANDOM_DRAWS) -> tuple[bool | None, np.ndarray | None]:
    """``(True, phi)``, ``(False, None)`` or ``(None, None)`` when undecided.

    A negative answer is only given on a differing invariant (dimension vector,
    radical layers or ``dim Hom``); a positive one comes with an invertible map.
    """
    if X.dim != Y.dim or X.fingerprint() != Y.fingerprint():
        return False, None
    if X.dim == 0:
        return True, linalg.zeros((0, 0), X.field)
    F = X.field
    H = hom_space(X, Y)
    if len(H) != len(hom_space(X, X)):
        return False, None
    for phi in H:
        if linalg.is_invertible(phi, F):
            return True, phi
    if not H:
        return False, None
    rng = random.Random(seed)
    for _ in range(draws):
        acc = linalg.zeros((Y.dim, X.dim), F)
        for phi in H:
            c = F.random_element(rng)
            acc = acc + linalg.reduce(phi * c, F) if linalg.is_prime_field(F) else acc + phi * c
        acc = linalg.reduce(acc, F)
        if linalg.is_invertible(acc, F):
            return True, acc
    return None, None


def is_isomorphic(X: LambdaModule, Y: LambdaModule, seed: int = 0) -> bool | None:
    return find_isomorphism(X, Y, seed)[0]


# ---------------------------------------------------------------------------
# resolutions and dimensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResolutionTrace:
    covers: tuple  # dimension vector of each projective term P_0, P_1, ...
    syzygy_dims: tuple  # dim Omega^k X for k = 0, 1, ...
    outcome: object  # Finite | DetectedInfinite | ExceededCap
    period: tuple | None = None  # (j, k) with Omega^k X ~= Omega^j X

    def to_json(self) -> dict:
        out = {
            "covers": [list(c) for c in self.covers],
            "syzygy_dims": list(self.syzygy_dims),
            "pd": self.outcome.to_json(),
        }
        if self.period:
            out["period"] = list(self.period)
        return out


def _cover_vector(X: LambdaModule) -> tuple:
    counts = {a: 0 for a in X.alg.exps}
    for a, _ in top_generators(X):
        counts[a] += 1
    return tuple(counts[a] for a in X.alg.exps)


def min_projective_resolution(alg: StructureConstantAlgebra, X: LambdaModule,
                              cap: int = DEFAULT_RESOLUTION_CAP, seed: int = 0) -> ResolutionTrace:
    """Minimal projective resolution up to ``cap`` syzygy steps."""
    if cap < 1:
        raise OutOfRange("resolution cap must be at least 1")
    syz = [X]
    covers = []
    if X.dim == 0:
        return ResolutionTrace((), (0,), Finite(0))
    for k in range(cap):
        covers.append(_cover_vector(syz[-1]))
        nxt = syzygy(syz[-1])
        if nxt.dim == 0:
            return ResolutionTrace(tuple(covers), tuple(m.dim for m in syz), Finite(k))
        for j, earlier in enumerate(syz):
            if is_isomorphic(nxt, earlier, seed) is True:
                syz.append(nxt)
                return ResolutionTrace(tuple(covers), tuple(m.dim for m in syz), DetectedInfinite(), (j, k + 1))
        syz.append(nxt)
    return ResolutionTrace(tuple(covers), tuple(m.dim for m in syz), ExceededCap(cap))


def global_dimension(alg: StructureConstantAlgebra, cap: int = DEFAULT_RESOLUTION_CAP, seed: int = 0):
    """Maximum projective dimension of the simple modules."""
    outcomes = [min_projective_resolution(alg, simple(alg, a), cap, seed).outcome for a in alg.exps]
    if any(isinstance(o, DetectedInfinite) for o in outcomes):
        return DetectedInfinite()
    if any(isinstance(o, ExceededCap) for o in outcomes):
        return ExceededCap(cap)
    return Finite(max(o.value for o in outcomes))


def _shift_power_rank(b: int, k: int, field: Field) -> int:
    """Rank of multiplication by ``x^k`` on ``M(b)``."""
    S = linalg.zeros((b, b), field)
    for i in range(b - 1):
        S[i + 1, i] = field.one
    P = linalg.eye(b, field)
    for _ in range(min(k, b)):
        P = linalg.matmul(S, P, field)
    return linalg.rank(P, field)


def ext_dim(a: int, b: int, i: int, n: int, field: Field | None = None) -> int:
    """``dim Ext^i_U(M(a), M(b))`` from the 2-periodic resolution of ``M(a)``.

    The differentials are ``d_j = x^a`` (j odd) and ``x^(n-a)`` (j even); after
    ``Hom(-, M(b))`` they become the same multiplications on ``M(b)``.
    """
    if not (1 <= a <= n and 1 <= b <= n) or i < 1:
        raise OutOfRange(f"ext_dim needs 1 <= a, b <= n and i >= 1 (got a={a}, b={b}, i={i}, n={n})")
    if a == n:
        return 0
    field = field or PrimeField(2)

    def power(j: int) -> int:
        return a if j % 2 else n - a

    kernel = b - _shift_power_rank(b, power(i + 1), field)
    image = _shift_power_rank(b, power(i), field)
    return kernel - image


def ext_total(exps, i: int, n: int) -> int:
    return sum(ext_dim(a, b, i, n) for a in exps for b in exps)


def dominant_dimension(U: NakayamaData, M: GeneratorModule):
    """``1 + min{i >= 1 : Ext^i_U(M, M) != 0}``, or ``Infinite`` if none.

    Ext is 2-periodic in ``i``, so ``i = 1, 2`` decide.
    """
    exps = M.exps
    if U.n not in exps:
        raise MissingTopExponent(f"{U.n} is not among {exps}")
    for i in (1, 2):
        if ext_total(exps, i, U.n):
            return Finite(1 + i)
    return Infinite()


def injective_envelope(X: LambdaModule) -> tuple[LambdaModule, np.ndarray, list[int]]:
    """``(I, iota, labels)``: minimal injective envelope, the embedding and the summand labels."""
    alg, F = X.alg, X.field
    soc = X.socle()
    summands, blocks, labels = [], [], []
    for c in alg.exps:
        rows = X.component(c)
        S = soc[c]
        if not rows or S.shape[1] == 0:
            continue
        _, pivots = linalg.rref(S.T.copy(), F)  # S[pivots, :] is invertible
        mus = [i for i in range(alg.dim) if alg.source(i) == c]
        for r in pivots:
            # Phi(v) = sum_mu phi(mu v) delta_mu with phi the coordinate at rows[r]
            blocks.append(np.stack([X.actions[mu][rows[r], :] for mu in mus], axis=0))
            summands.append(injective(alg, c))
            labels.append(c)
    I = direct_sum(alg, summands)
    iota = np.concatenate(blocks, axis=0) if blocks else linalg.zeros((0, X.dim), F)
    return I, linalg.reduce(iota, F), labels


def cokernel(Y: LambdaModule, f: np.ndarray) -> LambdaModule:
    """``Y / im f`` for a module map ``f`` (d_Y x d_X), with a graded basis."""
    alg, F = Y.alg, Y.field
    img_cols, comp_cols, comps = [], [], []
    for a in alg.exps:
        rows = Y.component(a)
        if not rows:
            continue
        sub = f[rows, :]
        span = linalg.row_space(sub.T.copy(), F).T if sub.shape[1] else linalg.zeros((len(rows), 0), F)
        for col in span.T:
            v = linalg.zeros((Y.dim,), F)
            v[rows] = col
            img_cols.append(v)
        for j in linalg.complement_columns(span, F):
            v = linalg.zeros((Y.dim,), F)
            v[rows[j]] = F.one
            comp_cols.append(v)
            comps.append(a)
    k = len(comp_cols)
    if k == 0:
        return zero_module(alg)
    full = np.stack(img_cols + comp_cols, axis=1)
    comp = np.stack(comp_cols, axis=1)
    images = np.concatenate([linalg.matmul(Y.actions[x], comp, F) for x in range(alg.dim)], axis=1)
    coords = linalg.coordinates(full, images, F)[len(img_cols):]
    actions = coords.reshape(k, alg.dim, k).transpose(1, 0, 2).copy()
    return LambdaModule(alg, actions, tuple(comps))


def dominant_dimension_by_injectives(alg: StructureConstantAlgebra, cap: int = 16):
    """Count projective terms at the start of a minimal injective coresolution of ``Lambda``.

    Independent of the Ext criterion; ``None`` when ``cap`` terms were all projective.
    """
    proj_inj = {c: is_projective(injective(alg, c)) for c in alg.exps}
    X = regular(alg)
    for k in range(cap):
        if X.dim == 0:
            return Infinite()
        I, iota, labels = injective_envelope(X)
        if not all(proj_inj[c] for c in labels):
            return Finite(k)
        X = cokernel(I, iota)
    return None


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomDimReport:
    n: int
    exps: tuple
    u: int
    p: int
    dim: int
    gl_dim: object
    dom_dim: object
    cartan: tuple

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "E": list(self.exps),
            "u": self.u,
            "p": self.p,
            "dim_over_K": self.dim,
            "dim_over_prime_field": self.dim * self.u,
            "gl_dim": self.gl_dim.to_json(),
            "dom_dim": self.dom_dim.to_json(),
            "cartan": [list(r) for r in self.cartan],
        }

    def invariants(self) -> tuple:
        """The data that must agree across stably equivalent blocks."""
        return (self.gl_dim, self.dom_dim)


def hom_dim_report(U: NakayamaData, M: GeneratorModule, cap: int = DEFAULT_RESOLUTION_CAP,
                   seed: int = 0) -> HomDimReport:
    alg = realize_block(U, M)
    return HomDimReport(
        n=U.n,
        exps=alg.exps,
        u=U.u,
        p=U.p,
        dim=alg.dim,
        gl_dim=global_dimension(alg, cap, seed),
        dom_dim=dominant_dimension(U, M),
        cartan=tuple(tuple(int(v) for v in row) for row in alg.cartan()),
    )


def block_hom_reports(c, cap: int = DEFAULT_RESOLUTION_CAP, seed: int = 0) -> list[tuple[str, HomDimReport]]:
    """One report per block of the centralizer of the matrix ``c``."""
    from .centralizer import decompose

    rep = decompose(c)
    p = c.field.characteristic
    out = []
    for b in rep.blocks:
        U = NakayamaData(n=b.n_i, u=b.irr.deg, p=p)
        M = GeneratorModule.of(b.n_i, b.distinct_exps)
        out.append((b.irr.display(compact=True), hom_dim_report(U, M, cap, seed)))
    return out
