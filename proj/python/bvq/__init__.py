from ._core import (
    BvqError,
    Signal,
    exponent_equation_solve,
    exponent_function,
    interval_stats,
    measure_extension_defect,
    ode_family_check,
    osc_derivative_rhs,
    phi,
    power_quotient,
    quotient_map,
    segment,
    verify,
)

__all__ = [
    "BvqError",
    "Signal",
    "exponent_equation_solve",
    "exponent_function",
    "interval_stats",
    "measure_extension_defect",
    "ode_family_check",
    "osc_derivative_rhs",
    "phi",
    "power_quotient",
    "quotient_map",
    "segment",
    "verify",
]
