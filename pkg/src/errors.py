"""Exception hierarchy shared by all qrlab modules.

Each class carries the process exit code the CLI uses for it.
"""


class QrlabError(Exception):
    """Base class for qrlab failures."""

    exit_code = 1
    kind = "error"


class ValidationError(QrlabError, ValueError):
    """A precondition of an operation is violated."""

    exit_code = 2
    kind = "validation"


class BudgetExceeded(QrlabError):
    """An enumeration or work budget would be exceeded."""

    exit_code = 3
    kind = "budget"


class InvariantBreach(QrlabError):
    """A mathematical invariant failed at run time (an implementation bug)."""

    exit_code = 4
    kind = "invariant"


class RegimeWarning(UserWarning):
    """Parameters are outside the asymptotic regime but the result is still exact."""


def require(condition: bool, message: str) -> None:
    """Raise ValidationError with ``message`` unless ``condition`` holds."""
    if not condition:
        raise ValidationError(message)


def check_budget(work: int, budget: int, what: str) -> None:
    """Raise BudgetExceeded if ``work`` is above ``budget``."""
    if work > budget:
        raise BudgetExceeded(f"{what}: {work} > budget {budget}")
