"""Combinatorics and Hodge polynomials of polydiagonal compactifications of configuration spaces."""

from polydiag.errors import DivisibilityError, IdentityError, ValidationError

__version__ = "0.1.0"

__all__ = ["ValidationError", "IdentityError", "DivisibilityError", "__version__"]
