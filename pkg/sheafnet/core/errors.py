"""
Exception hierarchy for sheafnet.

Every error carries an exit code (1 = input error, 2 = model inconsistency) and a
detail dict, the way an HTTPException carries a status code and a detail payload.
The CLI maps them straight to process exit codes. Anything else escaping a command
exits with EXIT_INTERNAL_ERROR.
"""

from typing import Any, Optional

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_MODEL_INCONSISTENCY = 2
EXIT_INTERNAL_ERROR = 3


class SheafNetError(Exception):
    """Base class for all expected sheafnet failures."""

    exit_code: int = EXIT_INPUT_ERROR

    def __init__(self, message: str, detail: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail or {}

    def __str__(self) -> str:
        if not self.detail:
            return self.message
        extras = ", ".join(f"{k}={v!r}" for k, v in self.detail.items())
        return f"{self.message} ({extras})"


# Input errors


class ParseError(SheafNetError):
    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        field: Optional[str] = None,
        path: Optional[str] = None,
    ):
        detail: dict[str, Any] = {}
        if path is not None:
            detail["path"] = path
        if line is not None:
            detail["line"] = line
        if field is not None:
            detail["field"] = field
        super().__init__(message, detail)
        self.line = line
        self.field = field


class InvalidCell(SheafNetError):
    pass


class UnknownCell(SheafNetError):
    pass


class InvalidIncidence(SheafNetError):
    pass


class InvalidValue(SheafNetError):
    pass


class NotAFacet(SheafNetError):
    pass


class OutOfWindow(SheafNetError):
    pass


class UnknownProtocol(SheafNetError):
    pass


class InjectionConflict(SheafNetError):
    pass


class EnumerationTooLarge(SheafNetError):
    pass


# Model inconsistencies


class NotASection(SheafNetError):
    exit_code = EXIT_MODEL_INCONSISTENCY


class EmptyActiveRegion(SheafNetError):
    exit_code = EXIT_MODEL_INCONSISTENCY


class InconsistentSchedule(SheafNetError):
    """No section exists for the given schedule and inputs.

    detail carries the first violating incidence and, for interference inside a
    timeslice, the blank cell that no stalk value can fill.
    """

    exit_code = EXIT_MODEL_INCONSISTENCY


class NonlinearProtocol(SheafNetError):
    exit_code = EXIT_MODEL_INCONSISTENCY


class InvalidProtocol(SheafNetError):
    exit_code = EXIT_MODEL_INCONSISTENCY
