"""Locally recoverable codes from generalized AG codes over GF(q)(x)."""

from .field import FieldElement, FieldSpec, ff_arith, ff_enumerate, field_create, gf
from .function_field import (
    Divisor,
    Place,
    Polynomial,
    enumerate_places,
    residue_at_place,
    riemann_roch_basis,
)
from .linear import (
    LinearCode,
    distance_bounds,
    encode,
    information_set_recover,
    min_distance_exhaustive,
    parity_check_code,
    rs_code,
)
from .lrc import (
    GagLrcCode,
    ParamReport,
    build_concatenated,
    build_gag_lrc,
    build_optimal_q_family,
    concatenated_params,
    gag_params,
    repair_symbol,
    verify_locality,
)

__all__ = [
    "Divisor",
    "FieldElement",
    "FieldSpec",
    "GagLrcCode",
    "LinearCode",
    "ParamReport",
    "Place",
    "Polynomial",
    "build_concatenated",
    "build_gag_lrc",
    "build_optimal_q_family",
    "concatenated_params",
    "gag_params",
    "distance_bounds",
    "encode",
    "enumerate_places",
    "ff_arith",
    "ff_enumerate",
    "field_create",
    "gf",
    "information_set_recover",
    "min_distance_exhaustive",
    "parity_check_code",
    "repair_symbol",
    "residue_at_place",
    "riemann_roch_basis",
    "rs_code",
    "verify_locality",
]
