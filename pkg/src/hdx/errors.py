"""Exception hierarchy and the enumeration budget."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 1 << 22


class HDXError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HDXError):
    """Malformed complex, cochain, or command-line input."""


class PurityError(InputError):
    pass


class DuplicateFaceError(InputError):
    pass


class EmptyComplexError(InputError):
    pass


class NotAFaceError(InputError):
    def __init__(self, face, message: str | None = None):
        self.face = face
        super().__init__(message or f"not a face of the complex: {face!r}")


class DimensionError(InputError):
    pass


class BudgetExceeded(HDXError):
    """An exhaustive enumeration would exceed the configured budget.

    ``required`` is the number of objects the enumeration would visit.
    """

    def __init__(self, what: str, required: int, budget: int):
        self.what = what
        self.required = required
        self.budget = budget
        super().__init__(
            f"refusing to enumerate {what}: {required} required, budget is {budget} "
            "(raise HDX_BUDGET to allow)"
        )


def enumeration_budget() -> int:
    """Current enumeration cap, read from ``HDX_BUDGET`` on every call."""
    raw = os.environ.get("HDX_BUDGET")
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"HDX_BUDGET must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise InputError("HDX_BUDGET must be positive")
    return value


def check_budget(what: str, required: int, budget: int | None = None) -> None:
    cap = enumeration_budget() if budget is None else budget
    if required > cap:
        raise BudgetExceeded(what, required, cap)
