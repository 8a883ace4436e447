"""Exception hierarchy.

Every error carries a stable ``code`` (the class name) so the command line
can report it as structured JSON.
"""

from __future__ import annotations


class CMAError(Exception):
    """Base class for all library errors."""

    @property
    def code(self) -> str:
        return type(self).__name__

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class InvalidField(CMAError, ValueError):
    pass


class DivisionByZero(CMAError, ZeroDivisionError):
    pass


class FieldMismatch(CMAError, ValueError):
    pass


class ConstantPolynomial(CMAError, ValueError):
    pass


class UnsupportedRationalFactorization(CMAError):
    pass


class UnsupportedRationalIsoTest(CMAError):
    pass


class NotMaximalReducible(CMAError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return Exception.__str__(self)


class EmptySet(CMAError, ValueError):
    pass


class NotPermutationSpectrum(CMAError, ValueError):
    pass


class NoDividedCycle(CMAError, ValueError):
    pass


class InvalidCertificate(CMAError, ValueError):
    pass


class NotPPowers(CMAError, ValueError):
    pass


class SizeCapExceeded(CMAError, ValueError):
    pass


class MissingTopExponent(CMAError, ValueError):
    pass


class ProjectiveInput(CMAError, ValueError):
    pass


class OutOfRange(CMAError, ValueError):
    pass


class ShapeError(CMAError, ValueError):
    pass
