"""Exact Laplacian reductions over prime fields."""

from ._zplap import (
    Circuit,
    DomainError,
    Error,
    ExtReduction,
    Reduction,
    TooLargeError,
    ZeroRowError,
    build_resistance,
    general_to_laplacian,
    general_to_walk,
    is_prime,
    laplacian_to_lowdegree,
    laplacian_to_normalized_walk,
    laplacian_to_unitweight,
    prev_prime,
    schur,
    solve,
    symdet,
)

__all__ = [
    "Circuit",
    "DomainError",
    "Error",
    "ExtReduction",
    "Reduction",
    "TooLargeError",
    "ZeroRowError",
    "build_resistance",
    "general_to_laplacian",
    "general_to_walk",
    "is_prime",
    "laplacian_to_lowdegree",
    "laplacian_to_normalized_walk",
    "laplacian_to_unitweight",
    "prev_prime",
    "schur",
    "solve",
    "symdet",
]
