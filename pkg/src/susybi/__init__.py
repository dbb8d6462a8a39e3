"""Exact construction and verification of supersymmetric biorthogonal systems."""

from .builder import (
    BiorthogonalSystem,
    DualPolynomial,
    Eigenfunction,
    Inhomogeneity,
    SectorPair,
    Superpotential,
    build_dual_polynomials,
    build_eigenfunction,
    build_inhomogeneity,
    build_system,
)
from .errors import DegenerateParameterError, RingMismatchError, UndeterminedCoefficientError
from .estimator import BiorthogonalExpansion
from .partition import discontinuity_report, partition_z, theta
from .series import EXACT, FLOAT, MINUS, PLUS, RATIONAL, LaurentSeries, SectorSign, pairing
from .verify import VerificationReport, run_all

__version__ = "0.1.0"

__all__ = [
    "BiorthogonalExpansion",
    "BiorthogonalSystem",
    "DegenerateParameterError",
    "DualPolynomial",
    "EXACT",
    "Eigenfunction",
    "FLOAT",
    "Inhomogeneity",
    "LaurentSeries",
    "MINUS",
    "PLUS",
    "RATIONAL",
    "RingMismatchError",
    "SectorPair",
    "SectorSign",
    "Superpotential",
    "UndeterminedCoefficientError",
    "VerificationReport",
    "build_dual_polynomials",
    "build_eigenfunction",
    "build_inhomogeneity",
    "build_system",
    "discontinuity_report",
    "pairing",
    "partition_z",
    "run_all",
    "theta",
]
