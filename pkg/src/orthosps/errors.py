"""Exception hierarchy.

Every error carries a ``kind`` (stable name used in JSON reports), the
equation label it concerns (``"Eq.2"`` etc., or ``None``) and a witness dict
naming the offending properties and states.
"""

from __future__ import annotations

from typing import Any


class SPSError(Exception):
    kind = "SPSError"
    equation: str | None = None

    def __init__(self, message: str, witness: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.witness = dict(witness or {})

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "equation": self.equation,
            "message": self.message,
            "witness": self.witness,
        }

    def __str__(self) -> str:
        prefix = f"{self.equation}: " if self.equation else ""
        return f"{self.kind}: {prefix}{self.message}"


class IndexOutOfRange(SPSError, IndexError):
    kind = "IndexOutOfRange"


class ValidationError(SPSError):
    """An input instance violates one of the axioms."""

    kind = "ValidationError"


class EmptyRoster(ValidationError):
    kind = "EmptyRoster"


class DuplicateStateLabel(ValidationError):
    kind = "DuplicateStateLabel"


class RosterTooLarge(ValidationError):
    kind = "RosterTooLarge"


class StateOutOfRange(ValidationError):
    kind = "StateOutOfRange"


class MissingBottom(ValidationError):
    kind = "MissingBottom"
    equation = "Eq.1"


class MissingTop(ValidationError):
    kind = "MissingTop"
    equation = "Eq.1"


class NotIntersectionClosed(ValidationError):
    kind = "NotIntersectionClosed"
    equation = "Eq.2"


class DuplicateProperty(ValidationError):
    kind = "DuplicateProperty"
    equation = "Eq.3"


class PartnerMapError(ValidationError):
    kind = "PartnerMapError"


class NotInvolutive(ValidationError):
    kind = "NotInvolutive"
    equation = "Eq.4"


class NotAntitone(ValidationError):
    kind = "NotAntitone"
    equation = "Eq.5"


class ComplementLawFailed(ValidationError):
    kind = "ComplementLawFailed"
    equation = "Eq.6"


class OrthoComFailed(ValidationError):
    kind = "OrthoComFailed"
    equation = "Eq.7"


class InternalTheoremViolation(SPSError):
    """A construction the theory guarantees to be valid failed validation.

    This signals a bug in the library, never bad user input.
    """

    kind = "InternalTheoremViolation"


class NotAClassicalState(SPSError):
    kind = "NotAClassicalState"


class NotClassicalProperty(SPSError):
    kind = "NotClassicalProperty"


class EmptyPartsList(SPSError):
    kind = "EmptyPartsList"


class ProductTooLarge(SPSError):
    kind = "ProductTooLarge"


class CapExceeded(SPSError):
    kind = "CapExceeded"


class MutationInapplicable(SPSError):
    kind = "MutationInapplicable"


class FormatError(SPSError):
    kind = "FormatError"


class DocumentSyntaxError(FormatError):
    kind = "SyntaxError"

    def __init__(self, message, witness=None, line=None, column=None):
        super().__init__(message, witness)
        self.line = line
        self.column = column
        if line is not None:
            self.witness.setdefault("line", line)
            self.witness.setdefault("column", column)


class UnknownStateLabel(FormatError):
    kind = "UnknownStateLabel"


class DanglingPerpReference(FormatError):
    kind = "DanglingPerpReference"


class VersionMismatch(FormatError):
    kind = "VersionMismatch"
