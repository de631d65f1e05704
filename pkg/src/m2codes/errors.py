"""Exception hierarchy.

Two families matter to callers:

* :class:`PreconditionError` -- the caller asked for something outside the
  supported domain (bad prime, ``p | n``, malformed assignment, ...).
* :class:`FalsificationError` -- an exact check that is supposed to be a
  mathematical certainty came out false.  These are never swallowed; the
  CLI maps them to exit code 3.
"""

from __future__ import annotations


class M2CodesError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(M2CodesError, ValueError):
    pass


class FalsificationError(M2CodesError):
    pass


class NotPrime(PreconditionError):
    pass


class BadResidueClass(PreconditionError):
    pass


class MixedParams(PreconditionError):
    pass


class NotInImage(PreconditionError):
    pass


class NotCoprime(PreconditionError):
    pass


class NotMonic(PreconditionError):
    pass


class BadAssignment(PreconditionError):
    pass


class CapExceeded(PreconditionError):
    pass


class UnsupportedP(PreconditionError):
    pass


class PreconditionViolated(PreconditionError):
    pass


class DivisionByZeroPoly(PreconditionError, ZeroDivisionError):
    pass


class InternalInconsistency(FalsificationError):
    pass


class NotRationalInteger(FalsificationError):
    pass


class SingularSystem(FalsificationError):
    pass


class InternalSplitFailure(FalsificationError):
    pass


class CardinalityMismatch(FalsificationError):
    """Generator rank differs from the closed-form cardinality exponent.

    Carries the offending generator matrix so callers that sweep many codes
    can record the measured rank instead of aborting.
    """

    def __init__(self, message: str, generator=None, expected_rank: int | None = None):
        super().__init__(message)
        self.generator = generator
        self.expected_rank = expected_rank
