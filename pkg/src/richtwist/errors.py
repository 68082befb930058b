"""Structured error types shared by every module.

Each error carries a machine-readable ``code`` and an exit ``status`` used by
the command-line front end: 2 for bad user input, 3 for a violated internal
precondition (a matrix outside the expected cell, a vanishing pivot, ...).
"""

from __future__ import annotations

from typing import Any


class RichTwistError(Exception):
    """Base class; ``detail`` holds JSON-friendly context about the failure."""

    status = 3

    def __init__(self, message: str, **detail: Any) -> None:
        super().__init__(message)
        self.message = message
        self.detail = detail

    @property
    def code(self) -> str:
        return type(self).__name__

    def to_json(self) -> dict[str, Any]:
        return {"error": self.code, "message": self.message, "detail": self.detail}


class InputError(RichTwistError):
    status = 2


class PreconditionError(RichTwistError):
    status = 3


# field
class ZeroDenominator(InputError):
    pass


class DivisionByZero(PreconditionError):
    pass


class PoleAtPoint(PreconditionError):
    pass


class ParseError(InputError):
    pass


# weyl
class NotBruhatBelow(InputError):
    pass


class NonReducedWord(InputError):
    pass


# matgroup
class IndexOutOfRange(InputError):
    pass


class SizeMismatch(InputError):
    pass


class SingularMatrix(PreconditionError):
    pass


class NotInBigCell(PreconditionError):
    pass


# twist
class ZeroParameter(InputError):
    pass


class WrongCell(PreconditionError):
    pass


# chamber
class ZeroMinor(PreconditionError):
    pass


# positroid
class RankDeficient(PreconditionError):
    pass


class NotGrassmannian(InputError):
    pass
