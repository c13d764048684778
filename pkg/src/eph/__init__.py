"""Moebius-invariant geometry of cycles in the elliptic, parabolic and
hyperbolic planes, with the related sl2 ladder operators, jet spectra of
matrices and phase-space probability kernels."""
from .errors import DegenerateError, DomainError, InvalidInput, PrecisionWarning
from .hypercomplex import Hypercomplex, Mat2, Signature
from .moebius import INF, MoebiusMap
from .cycles import Cycle

__version__ = "0.1.0"

__all__ = [
    "Cycle", "DegenerateError", "DomainError", "Hypercomplex", "INF", "InvalidInput",
    "Mat2", "MoebiusMap", "PrecisionWarning", "Signature", "__version__",
]
