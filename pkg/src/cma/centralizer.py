"""Block structure of the centralizer algebra of a single matrix.

The algebra of matrices commuting with ``c`` splits into one block per
irreducible factor ``f`` of the minimal polynomial.  A block is the
endomorphism algebra of ``(+)_j R[x]/(f^e_j)`` over ``R[x]/(f^n)`` with ``n``
the largest exponent, and its dimension is ``deg f * sum_{a,b} min(a, b)``
over the exponent multiset.  That formula is always cross-checked against
the kernel of ``a -> ca - ac`` in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .errors import SizeCapExceeded
from .fields import Field
from .matrix import ElementaryDivisorMultiset, MatrixF, elementary_divisors
from .poly import Poly

DEFAULT_ORACLE_CAP = 12


@dataclass(frozen=True)
class BlockReport:
    irr: Poly
    n_i: int
    exps: tuple
    distinct_exps: tuple
    dim_block: int
    is_semisimple: bool
    has_nodes: bool
    frobenius_class: tuple  # (irr label, n_i): Morita class of R[x]/(irr^n_i)

    @property
    def num_simples(self) -> int:
        return len(self.distinct_exps)

    @property
    def num_nonprojective_simples(self) -> int:
        return 0 if self.n_i < 2 else len(self.distinct_exps)

    def to_json(self) -> dict:
        return {
            "irr": self.irr.display(compact=True),
            "n_i": self.n_i,
            "exps": list(self.exps),
            "distinct_exps": list(self.distinct_exps),
            "dim_block": self.dim_block,
            "is_semisimple": self.is_semisimple,
            "has_nodes": self.has_nodes,
            "frobenius_class": {"irr": self.frobenius_class[0], "n": self.frobenius_class[1]},
        }


@dataclass(frozen=True)
class CentralizerReport:
    n: int
    field: Field
    blocks: tuple
    total_dim: int
    num_simples: int
    num_nonproj_simples: int
    oracle_dim: int | None = dc_field(default=None, compare=False)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "field": self.field.to_json(),
            "blocks": [b.to_json() for b in self.blocks],
            "total_dim": self.total_dim,
            "num_simples": self.num_simples,
            "num_nonproj_simples": self.num_nonproj_simples,
        }
        if self.oracle_dim is not None:
            out["oracle_dim"] = self.oracle_dim
            out["oracle_agrees"] = self.oracle_dim == self.total_dim
        return out

    def to_table(self) -> str:
        head = f"{'block':<18}{'n_i':>4}  {'exps':<16}{'dim':>6}  flags"
        lines = [f"centralizer of a {self.n}x{self.n} matrix over {self.field!r}", head, "-" * len(head)]
        for b in self.blocks:
            flags = []
            if b.is_semisimple:
                flags.append("semisimple")
            if b.has_nodes:
                flags.append("nodes")
            exps = ",".join(map(str, b.exps))
            lines.append(f"{b.irr.display(compact=True):<18}{b.n_i:>4}  {exps:<16}{b.dim_block:>6}  {' '.join(flags)}")
        lines.append(
            f"total dim {self.total_dim}; simples {self.num_simples}; "
            f"non-projective simples {self.num_nonproj_simples}"
        )
        if self.oracle_dim is not None:
            lines.append(f"brute-force dim {self.oracle_dim} ({'agrees' if self.oracle_dim == self.total_dim else 'MISMATCH'})")
        return "\n".join(lines)


def min_sum(exps) -> int:
    return sum(min(a, b) for a in exps for b in exps)


def block_report(irr: Poly, exps: tuple) -> BlockReport:
    n_i = max(exps)
    distinct = tuple(sorted(set(exps)))
    return BlockReport(
        irr=irr,
        n_i=n_i,
        exps=tuple(sorted(exps, reverse=True)),
        distinct_exps=distinct,
        dim_block=irr.deg * min_sum(exps),
        is_semisimple=n_i == 1,
        has_nodes=n_i == 2,
        frobenius_class=(irr.display(compact=True), n_i),
    )


def report_from_divisors(E: ElementaryDivisorMultiset) -> CentralizerReport:
    blocks = tuple(block_report(irr, es) for irr, es in E.groups)
    return CentralizerReport(
        n=E.size,
        field=E.field,
        blocks=blocks,
        total_dim=sum(b.dim_block for b in blocks),
        num_simples=sum(b.num_simples for b in blocks),
        num_nonproj_simples=sum(b.num_nonprojective_simples for b in blocks),
    )


def decompose(c: MatrixF, oracle: bool = False, cap: int = DEFAULT_ORACLE_CAP) -> CentralizerReport:
    """Block-by-block report for the centralizer of ``c``.

    With ``oracle=True`` the brute-force commutant dimension is attached.
    """
    rep = report_from_divisors(elementary_divisors(c))
    if oracle:
        return CentralizerReport(**{**rep.__dict__, "oracle_dim": brute_force_centralizer_dim(c, cap)})
    return rep


def commutation_operator(c: MatrixF) -> np.ndarray:
    """The n^2 x n^2 matrix of ``a -> ca - ac`` on row-major ``vec(a)``."""
    F, n = c.field, c.n
    C = c.array()
    eye = linalg.eye(n, F)
    return linalg.reduce(np.kron(C, eye) - np.kron(eye, C.T), F)


def brute_force_centralizer_dim(c: MatrixF, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """``dim {a : ca = ac}`` from the kernel of the commutation operator."""
    n = c.n
    if n > cap:
        raise SizeCapExceeded(f"n = {n} exceeds the brute-force cap {cap}")
    if n == 0:
        return 0
    return n * n - linalg.rank(commutation_operator(c), c.field)


def count_nonprojective_simples(report: CentralizerReport) -> int:
    return sum(b.num_nonprojective_simples for b in report.blocks)
