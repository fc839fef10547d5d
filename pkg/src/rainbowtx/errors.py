"""Exception hierarchy shared by every module."""

from __future__ import annotations

from typing import Any


class InputError(ValueError):
    """Caller supplied something outside an operation's contract."""


class GuardError(InputError):
    """An exhaustive search was refused because the instance is too large."""


class RgcParseError(InputError):
    """Malformed instance or certificate text, tagged with its position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class InvariantViolation(RuntimeError):
    """A solver reached a configuration its construction rules out.

    This never means the instance is unsolvable; it means the implementation
    diverged from the argument it follows.  ``state`` holds a JSON-friendly
    snapshot of whatever the solver was working on, for replay.
    """

    def __init__(self, message: str, state: Any = None):
        super().__init__(message)
        self.state = state
