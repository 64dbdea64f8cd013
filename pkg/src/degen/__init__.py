"""Dynkin abelianisations of classical Lie algebras: cones, stretched root
systems, Weyl elements, Demazure characters and FFLV counts, checked exactly
at small rank."""

from degen.errors import (
    ConeMembershipError,
    DegenError,
    DomainError,
    InvalidRankError,
    InvariantViolation,
    PreconditionError,
    UnsupportedWeightError,
)
from degen.rootsys import Label, Root, RootSystem, RootSystemId, build_root_system

__version__ = "0.1.0"

__all__ = [
    "ConeMembershipError",
    "DegenError",
    "DomainError",
    "InvalidRankError",
    "InvariantViolation",
    "Label",
    "PreconditionError",
    "Root",
    "RootSystem",
    "RootSystemId",
    "UnsupportedWeightError",
    "build_root_system",
]
