"""Forward solver and optimal control for the Atangana-Baleanu-Caputo fractional diffusion equation."""

from ._core import (
    AccuracyError,
    ConfigurationError,
    DomainError,
    Error,
    GridError,
    NumericalError,
    ab_integral,
    abc_derivative,
    mlf,
    mlf_generalized,
    modal_constants,
    normalization,
    optimize,
    solve_forward,
    verify,
)

__all__ = [
    "AccuracyError",
    "ConfigurationError",
    "DomainError",
    "Error",
    "GridError",
    "NumericalError",
    "ab_integral",
    "abc_derivative",
    "mlf",
    "mlf_generalized",
    "modal_constants",
    "normalization",
    "optimize",
    "solve_forward",
    "verify",
]
