"""Combinatorics of connected components of closed affine Deligne-Lusztig varieties."""

from .errors import DomainError, InternalConsistencyError, SchemaError
from .rootdatum import TwistedRootDatum

__version__ = "0.1.0"

__all__ = ["DomainError", "InternalConsistencyError", "SchemaError", "TwistedRootDatum", "__version__"]
