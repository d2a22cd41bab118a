"""Exception hierarchy shared by every module."""

from __future__ import annotations


class PowerGraphError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(PowerGraphError, ValueError):
    """Bad arguments: out-of-range ids, unknown formats, bad parameters."""


class SpecParseError(UsageError):
    """A group spec string did not match the grammar."""

    def __init__(self, message: str, text: str, offset: int) -> None:
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at offset {offset} in {text!r}")


class ResourceError(PowerGraphError):
    """A configured size cap would be exceeded."""


class DomainError(PowerGraphError, ValueError):
    """The operation is not defined for this input (e.g. Sylow of a non-nilpotent group)."""


class GroupValidationError(PowerGraphError, ValueError):
    """A multiplication table violates a group axiom.

    ``axiom`` names the failed law and ``indices`` carries the offending
    element ids (row/column/value, or the (i, j, k) associativity triple).
    """

    def __init__(self, axiom: str, indices: tuple[int, ...], detail: str = "") -> None:
        self.axiom = axiom
        self.indices = indices
        msg = f"{axiom} violated at {indices}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
