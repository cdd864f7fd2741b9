# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""
Exception hierarchy for graded-decomp.

Usage errors (bad input, unsupported parameters) map to CLI exit code 2.
Invariant violations mean a computed object contradicts the theory it is
built from, which is always an implementation bug; they map to exit code 3.
"""

from typing import Optional


class GradedDecompError(Exception):
    """Base class for all library errors"""


class UsageError(GradedDecompError):
    """Input is outside what the library accepts"""


class BoundExceeded(UsageError):
    """Requested size is above the configured bound"""

    def __init__(self, what: str, value: int, bound: int) -> None:
        super().__init__(f"{what} = {value} exceeds the configured bound {bound}")
        self.what = what
        self.value = value
        self.bound = bound


class SizeMismatch(UsageError):
    """Partitions being compared have different sizes"""


class ShapeMismatch(UsageError):
    """Tableaux combined in one element have different shapes"""


class NotRestricted(UsageError):
    """Operation requires an e-restricted partition"""


class PreconditionViolation(UsageError):
    """A documented precondition does not hold"""


class E2Unsupported(UsageError):
    """The graded presentation needs e >= 3"""

    def __init__(self, message: Optional[str] = None) -> None:
        super().__init__(message or "e = 2 is not supported by the graded presentation")


class InvariantViolation(GradedDecompError):
    """A computed object contradicts the theory"""


class AlgorithmInvariantError(InvariantViolation):
    """Canonical basis or decomposition matrix failed an assertion"""


class NonTermination(InvariantViolation):
    """Iteration cap reached in a loop that must terminate"""


class DivisionError(InvariantViolation):
    """Exact Laurent division left a remainder"""


class SpectrumError(InvariantViolation):
    """Matrix has an eigenvalue outside the allowed roots of unity"""


class SingularError(InvariantViolation):
    """Matrix that must be invertible is singular"""


class RankError(InvariantViolation):
    """Vectors that must be independent are dependent"""


class BasisError(InvariantViolation):
    """Graded basis vectors are dependent"""


class HomogeneityError(InvariantViolation):
    """Generator matrix entry breaks the grading"""


class GradednessError(InvariantViolation):
    """Radical does not split into homogeneous components"""


class MismatchError(InvariantViolation):
    """Two independent computations of the same data disagree"""


class SolveError(InvariantViolation):
    """Unitriangular character system is inconsistent"""
