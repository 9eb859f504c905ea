"""Eta quotients on Gamma_0(N).

Quotients are dicts {d: X_d}; see parse() for the text form.
"""

from ._core import (
    ConsistencyError,
    DomainError,
    Error,
    ParseError,
    apply_phi,
    cli,
    enumerate_holomorphic,
    format,
    involution_pairing,
    is_holomorphic,
    level,
    order_map,
    parse,
    quotient_series,
    verify_zagier,
    weight2,
    zagier_list,
)

__all__ = [
    "ConsistencyError",
    "DomainError",
    "Error",
    "ParseError",
    "apply_phi",
    "cli",
    "enumerate_holomorphic",
    "format",
    "involution_pairing",
    "is_holomorphic",
    "level",
    "order_map",
    "parse",
    "quotient_series",
    "verify_zagier",
    "weight2",
    "zagier_list",
]
