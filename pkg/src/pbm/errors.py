"""Exception hierarchy for the pbm package.

Every error raised by this package derives from PbmError, so callers can
catch one type at the boundary.  Data errors carry a message that names the
first offending position in 1-based (row, column) coordinates.
"""

from __future__ import annotations


class PbmError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(PbmError):
    """A matrix or vector does not have the required shape."""


class BoundOrderViolation(PbmError):
    """A lower bound exceeds the matching upper bound."""


class IllegalInfinity(PbmError):
    """An infinity appears where only the other sign (or a finite value) is legal."""


class InfinityClash(PbmError):
    """Arithmetic tried to combine opposite infinities."""


class InstanceFormatError(PbmError):
    """A JSON document does not parse as an instance, matrix, or subset."""


class BoundViolation(PbmError):
    """A concrete matrix breaks an instance constraint; names the first one."""


class PrescriptionOutOfEntryBounds(PbmError):
    """A prescribed entry value falls outside the entry bounds at its cell."""


class NotKRegular(PbmError):
    """Input matrix fails the k-regularity check."""


class BadEntries(PbmError):
    """Matrix entries fall outside the allowed alphabet."""


class BadParams(PbmError):
    """Parameters of a structured-family constructor are invalid."""


class InfeasibleInput(PbmError):
    """The matrix handed to a decomposition does not satisfy its instance."""


class InternalError(PbmError):
    """An internal invariant failed; indicates a bug, not bad input."""


class BudgetExceeded(PbmError):
    """An enumeration would exceed its configured budget."""
