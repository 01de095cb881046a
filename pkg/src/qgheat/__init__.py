"""Certified spectral and contractivity computations for the heat semigroups
on the free orthogonal and free permutation quantum groups."""

from .interval import CertifiedValue, ToleranceError
from .spectrum import Family, GroupKind, bound_report, eigenvalue, spectral_gap, spectral_line

__all__ = [
    "CertifiedValue",
    "Family",
    "GroupKind",
    "ToleranceError",
    "bound_report",
    "eigenvalue",
    "spectral_gap",
    "spectral_line",
]
