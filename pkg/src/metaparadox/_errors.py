from typing import Any
from typing import Optional


class MetaparadoxError(Exception):
    """Exceptions raised in this package."""


class DomainError(MetaparadoxError, ValueError):
    """An argument is outside the domain of the operation it was passed to."""


class StudyParseError(MetaparadoxError):
    """A study or scenario file could not be parsed.

    Args:
        message: What went wrong.
        row: 1-based line (CSV) or element (JSON) number, if known.
        column: Name of the offending column or field, if known.
    """

    def __init__(
        self, message: str, *, row: Optional[int] = None, column: Optional[str] = None
    ) -> None:
        self.message = message
        self.row = row
        self.column = column
        parts = []
        if row is not None:
            parts.append(f"row {row}")
        if column is not None:
            parts.append(column)
        parts.append(message)
        super().__init__(": ".join(parts))


class SimulationError(MetaparadoxError):
    """A Monte Carlo run finished without any accepted replicate."""

    def __init__(self, *args: Any, draws_used: int) -> None:
        super().__init__(*args)
        self.draws_used = draws_used


class MetaparadoxCommandError(MetaparadoxError):
    """Exceptions raised from this package's CLI commands."""

    def __init__(self, *args: Any, exit_code: int) -> None:
        super().__init__(*args)
        self.exit_code = exit_code
