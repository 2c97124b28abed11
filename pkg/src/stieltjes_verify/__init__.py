"""Numerical verification of Catalan-constant integral identities.

Adaptive and double-exponential quadrature, stable divided-difference
kernels, accelerated alternating series, Stieltjes-transform duality and
Hadamard-product contour forms, tied together by a registry of identities.
"""

from .catalog import get_identity, list_identities, parity_extraction_check, verify_identity
from .report import VerificationRecord
from .specfun import CATALAN, polylog, zeta

__version__ = "0.1.0"

__all__ = ["CATALAN", "VerificationRecord", "get_identity", "list_identities",
           "parity_extraction_check", "polylog", "verify_identity", "zeta"]
