"""Exception hierarchy for concurrence-bounds.

Library code raises these; only the CLI turns them into exit codes.
"""
from typing import Optional


class ConcurrenceError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(ConcurrenceError, ValueError):
    """Matrix shape does not match the operation or the subsystem dims."""


class HermiticityError(ConcurrenceError, ValueError):
    """Matrix is not Hermitian within tolerance."""


class TraceError(ConcurrenceError, ValueError):
    """Density matrix trace differs from 1 beyond tolerance."""


class PositivityError(ConcurrenceError, ValueError):
    """Density matrix has an eigenvalue below the positivity tolerance."""


class NormalizationError(ConcurrenceError, ValueError):
    """State vector is not unit norm."""


class WeightError(ConcurrenceError, ValueError):
    """Mixture weights are negative, out of range or not normalized."""


class PartitionError(ConcurrenceError, ValueError):
    """Invalid subsystem count, subset or cut."""


class GridError(ConcurrenceError, ValueError):
    """Invalid noise-parameter grid."""


class FamilyError(ConcurrenceError, ValueError):
    """Unknown state family or missing family parameters."""


class ConfigError(ConcurrenceError, ValueError):
    """A config file value has the wrong type for its field."""


class ConvergenceError(ConcurrenceError, ArithmeticError):
    """Jacobi iteration did not converge within the sweep limit."""


class NeverPositiveError(ConcurrenceError):
    """A lower bound never exceeds the verdict threshold on [0, 1]."""


class NoCrossingError(ConcurrenceError):
    """Two bound curves do not cross on the searched interval."""


class StateFileError(ConcurrenceError, ValueError):
    """State file could not be parsed or failed validation.

    ``line`` is 1-based, or None when the problem is not tied to a line.
    """

    def __init__(self, path, message: str, line: Optional[int] = None):
        self.path = str(path)
        self.line = line
        self.message = message
        where = f'{self.path}:{line}' if line is not None else self.path
        super().__init__(f'{where}: {message}')
