"""Exact linear algebra for generalized inverses and rank identities."""
from .errors import (ArithmeticFault, ConfigurationError, NoSolutionError, NotGroupInvertibleError,
                     PreconditionError, RanklabError, SingularMatrixError, UsageError)
from .scalar import QI, ExactScalar, FieldSpec
from .matrix import Matrix, block, hstack, vstack

__version__ = "0.1.0"
