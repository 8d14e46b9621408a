"""Quantum copying machines: circuits, reduced densities and diagrams of states."""
from .errors import (
    DimensionError,
    DomainError,
    InvalidGateError,
    NormalizationError,
    ParseError,
    QCloneError,
)

__all__ = [
    "DimensionError",
    "DomainError",
    "InvalidGateError",
    "NormalizationError",
    "ParseError",
    "QCloneError",
]
__version__ = "0.1.0"
