"""Exact verification of finite-dimensional L-infinity algebras.

Rational numbers are passed as "num/den" strings.
"""

from ._linfty import *  # noqa: F401,F403
from ._linfty import ConsistencyError, TruncationError  # noqa: F401
