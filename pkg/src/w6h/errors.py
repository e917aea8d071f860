"""Exception types shared across the package."""

from __future__ import annotations


class W6HError(Exception):
    """Base class for all domain errors raised by this package."""


class DuplicateId(W6HError):
    """A concern id already exists in the matrix."""


class UnknownGroup(W6HError):
    """A stakeholder group id is not declared in the matrix."""


class DanglingCandidateRef(W6HError):
    """A selection question references a candidate supplier that is out of scope."""


class Unsatisfiable(W6HError):
    """No ordering of the interrogatives satisfies the precedence graph."""


class Unclassifiable(W6HError):
    """A question contains no interrogative token."""


class UnknownInstance(W6HError):
    """A question instance id does not exist in the session."""


class NotPending(W6HError):
    """The operation requires a pending question instance."""


class NotAnswered(W6HError):
    """The operation requires an answered instance with a recorded verdict."""


class NotWhy(W6HError):
    """The operation applies only to why instances."""


class SubsetViolation(W6HError):
    """Selected items are not a subset of the bound candidate items."""


class VerdictOnNonWhy(W6HError):
    """A verdict was supplied for an instance that is not a why question."""


class ParseError(W6HError):
    """A document could not be parsed; message carries position detail."""


class UnsupportedVersion(W6HError):
    """Document format_version is not supported."""


class SeqGap(W6HError):
    """Event sequence numbers are not contiguous from 1."""


class CorruptEvent(W6HError):
    """An event record is malformed or the log is not replayable."""
