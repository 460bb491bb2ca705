"""Exception hierarchy shared by every module."""

from __future__ import annotations

from typing import Any


class XmodError(Exception):
    """Base class for all xmodkit errors."""


class InvariantViolation(XmodError, ValueError):
    """A value failed one of its named invariants."""

    def __init__(self, invariant: str, witness: Any = None, detail: str = ""):
        self.invariant = invariant
        self.witness = witness
        msg = invariant
        if detail:
            msg += f": {detail}"
        if witness is not None:
            msg += f" (witness {witness!r})"
        super().__init__(msg)


class NotLatinSquare(InvariantViolation):
    def __init__(self, witness: Any, detail: str = ""):
        super().__init__("NotLatinSquare", witness, detail)


class NoIdentityAtZero(InvariantViolation):
    def __init__(self, witness: Any, detail: str = ""):
        super().__init__("NoIdentityAtZero", witness, detail)


class NotAssociative(InvariantViolation):
    def __init__(self, witness: Any, detail: str = ""):
        super().__init__("NotAssociative", witness, detail)


class NotACrossedModule(InvariantViolation):
    def __init__(self, equation: str, witness: Any = None):
        self.equation = equation
        super().__init__("NotACrossedModule", witness, f"equation {equation} fails")


class CodomainMismatch(XmodError, ValueError):
    pass


class InstanceMismatch(XmodError, ValueError):
    pass


class OrderTooLarge(XmodError, ValueError):
    pass


class BoundTooSmall(XmodError, ValueError):
    pass


class BoundExceeded(XmodError, ValueError):
    pass


class NoSuchMorphism(XmodError):
    pass


class PreconditionFailed(XmodError):
    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        super().__init__(f"{hypothesis}{': ' + detail if detail else ''}")


class LConditionFailure(XmodError):
    pass


class FactorizationFailure(XmodError):
    pass


class WStarFailure(XmodError):
    def __init__(self, square: int, detail: str = ""):
        self.square = square
        super().__init__(f"square at level {square} is not a pullback{': ' + detail if detail else ''}")


class NotAGroupoid(XmodError):
    pass


class NoIsomorphismFound(XmodError):
    pass


class ParseError(XmodError, ValueError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{msg}{where}")


class VersionMismatch(XmodError, ValueError):
    pass
