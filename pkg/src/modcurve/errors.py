"""Exception hierarchy.

The CLI maps these onto its exit-code contract: ``DataError`` (and
subclasses) exit with 2, ``CertificateError`` with 3, ``NetworkError``
with 4.  Library code raises them directly; nothing is ever silently
defaulted.
"""

from __future__ import annotations


class DataError(Exception):
    """Invalid, inconsistent or insufficient input data."""


class SchemaError(DataError):
    """A fixture or remote record violates the newform schema."""


class IncompleteSetError(DataError):
    """A newform set does not cover all levels dividing the requested one."""


class MissingSignError(DataError):
    """An Atkin-Lehner eigenvalue needed by a computation is not on record."""


class MissingRankError(DataError):
    """An analytic rank needed by a computation is not on record."""


class UnsupportedDegreeError(DataError):
    """A finiteness question was asked in a degree the engine rejects."""


class CertificateError(Exception):
    """A verdict certificate failed re-verification."""


class NetworkError(Exception):
    """Remote data was requested but could not be obtained."""
