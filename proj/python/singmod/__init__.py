"""Traces of singular moduli: exact series, congruence sweeps and numerical oracles."""

from ._core import (
    GENUS_ZERO_PRIMES,
    Error,
    class_representatives,
    hurwitz_sum,
    j_series,
    kronecker,
    oracle_level1,
    oracle_star,
    phi_coefficient,
    phi_table,
    trace_level1,
    trace_star,
    valid_discriminants,
    verify_level1,
    verify_star,
    zagier_g,
)

__all__ = [
    "GENUS_ZERO_PRIMES",
    "Error",
    "class_representatives",
    "hurwitz_sum",
    "j_series",
    "kronecker",
    "oracle_level1",
    "oracle_star",
    "phi_coefficient",
    "phi_table",
    "trace_level1",
    "trace_star",
    "valid_discriminants",
    "verify_level1",
    "verify_star",
    "zagier_g",
]
