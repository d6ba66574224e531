"""Exception hierarchy shared across the package."""

from __future__ import annotations


class PlanarCertError(Exception):
    """Base class for all package errors."""


class ParameterError(PlanarCertError, ValueError):
    """An operation was called with invalid parameters."""


class StructuralError(PlanarCertError, ValueError):
    """Input data is structurally malformed (bad ids, broken adjacency, ...)."""


class ResourceError(PlanarCertError):
    """A configured size cap or budget was exceeded."""


class FormatError(PlanarCertError, ValueError):
    """A text file or serialized record could not be parsed."""


class WitnessError(PlanarCertError, ValueError):
    """A supplied ordering/witness does not satisfy its contract."""


class FirewallViolation(PlanarCertError):
    """A verifier tried to read a certificate outside its one-round view."""


class NonPlanarError(PlanarCertError):
    """Raised when a prover-side operation requires planarity.

    Carries the subdivision witness found by the embedder, if any.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
