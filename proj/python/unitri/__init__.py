"""Unitary tridiagonalization of complex matrices up to 4x4."""

from ._unitri import (
    Unsolved,
    classify,
    degree_of_C,
    degree_of_D,
    generate,
    parse_matrix,
    section_zero_count,
    tridiagonalize,
    verify,
)

__all__ = [
    "Unsolved",
    "classify",
    "degree_of_C",
    "degree_of_D",
    "generate",
    "parse_matrix",
    "section_zero_count",
    "tridiagonalize",
    "verify",
]
