"""Exact homological algebra over finite-dimensional local algebras."""

from .algebra import (
    AlgebraSurjection,
    Element,
    Ideal,
    LocalAlgebra,
    annihilator,
    exact_zero_divisor_partner,
    is_exact_pair,
    principal_generator,
    principal_ideal,
    quotient_by_element,
)
from .linalg import DEFAULT_PRIME

__version__ = "0.1.0"

__all__ = [
    "AlgebraSurjection",
    "DEFAULT_PRIME",
    "Element",
    "Ideal",
    "LocalAlgebra",
    "annihilator",
    "exact_zero_divisor_partner",
    "is_exact_pair",
    "principal_generator",
    "principal_ideal",
    "quotient_by_element",
]
