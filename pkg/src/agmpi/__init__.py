"""High-precision pi and elementary functions over a self-contained
fixed-point arithmetic core, with selectable big-integer multiplication."""

from .ntt import NTTCapacityError
from .bigfixed import (
    BigInt,
    ConvergenceError,
    DomainError,
    FixedReal,
    Natural,
    PrecisionContext,
    fx_div,
    fx_from_decimal,
    fx_mul,
    fx_recip,
    fx_sqr,
    fx_sqrt,
    fx_to_decimal,
    int_divmod,
    int_isqrt,
    nat_mul,
)

__all__ = [
    "BigInt",
    "ConvergenceError",
    "DomainError",
    "FixedReal",
    "NTTCapacityError",
    "Natural",
    "PrecisionContext",
    "fx_div",
    "fx_from_decimal",
    "fx_mul",
    "fx_recip",
    "fx_sqr",
    "fx_sqrt",
    "fx_to_decimal",
    "int_divmod",
    "int_isqrt",
    "nat_mul",
]
