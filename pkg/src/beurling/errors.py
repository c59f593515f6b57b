"""Exception hierarchy.

Two families matter for the CLI exit-code contract: ``InputError`` covers
bad files, bad config, and bad parameters (exit code 2); ``ComputationError``
covers failures detected while computing (exit code 1).
"""

from __future__ import annotations


class BeurlingError(Exception):
    """Base class for all package errors."""


class InputError(BeurlingError):
    """Invalid input: file contents, config values, or call parameters."""


class PrimeFileError(InputError):
    """Malformed prime-list file; carries a line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ComputationError(BeurlingError):
    """A computation could not be carried out on the given data."""


class CutoffExceedsPrefixError(InputError):
    """Requested cutoff lies beyond the range the stored primes cover."""


class EnumerationCapError(ComputationError):
    """Enumeration produced more elements than the configured cap."""


class DensityCollapseError(ComputationError):
    """Density estimate degenerated to ~0 (the system has zero density)."""


class NearZeroZetaError(ComputationError):
    """zeta(s) is too close to 0 relative to its truncation bound."""


class KernelCoverageError(ComputationError):
    """Kernel mass extends past the data cutoff; the average is unreliable."""
