"""Centralizer matrix algebras: elementary divisors, S-equivalence and block invariants."""

from .centralizer import (
    BlockReport,
    CentralizerReport,
    brute_force_centralizer_dim,
    count_nonprojective_simples,
    decompose,
    report_from_divisors,
)
from .errors import CMAError
from .fields import ExtensionField, PrimeField, Rationals, field_arith, field_from_json
from .homlab import (
    GeneratorModule,
    HomDimReport,
    NakayamaData,
    dominant_dimension,
    ext_dim,
    global_dimension,
    hom_dim_report,
    min_projective_resolution,
    omega_set,
    realize_block,
    syzygy_exponent,
)
from .matrix import ElementaryDivisorMultiset, MatrixF, PrimePower, elementary_divisors, jordan_block
from .perm import (
    Permutation,
    exceptional_divisor,
    normalize_certificate,
    p_power_j_constraint,
    perm_elementary_divisors,
    permutation_matrix,
    q_value,
    regular_singular_parts,
)
from .poly import Poly, factor, is_separable, parse_poly
from .sequiv import (
    SEquivVerdict,
    j_transform,
    maximal_reducible,
    power_index_set,
    residue_iso,
    s_equivalent,
    strict_s_equivalent,
)

__all__ = [
    "BlockReport",
    "CentralizerReport",
    "brute_force_centralizer_dim",
    "count_nonprojective_simples",
    "decompose",
    "report_from_divisors",
    "CMAError",
    "ExtensionField",
    "PrimeField",
    "Rationals",
    "field_arith",
    "field_from_json",
    "GeneratorModule",
    "HomDimReport",
    "NakayamaData",
    "dominant_dimension",
    "ext_dim",
    "global_dimension",
    "hom_dim_report",
    "min_projective_resolution",
    "omega_set",
    "realize_block",
    "syzygy_exponent",
    "ElementaryDivisorMultiset",
    "MatrixF",
    "PrimePower",
    "elementary_divisors",
    "jordan_block",
    "Permutation",
    "exceptional_divisor",
    "normalize_certificate",
    "p_power_j_constraint",
    "perm_elementary_divisors",
    "permutation_matrix",
    "q_value",
    "regular_singular_parts",
    "Poly",
    "factor",
    "is_separable",
    "parse_poly",
    "SEquivVerdict",
    "j_transform",
    "maximal_reducible",
    "power_index_set",
    "residue_iso",
    "s_equivalent",
    "strict_s_equivalent",
]
