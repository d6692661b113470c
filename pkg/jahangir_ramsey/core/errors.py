from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from jahangir_ramsey.schemas.trace import FalsificationRecord


class JahangirRamseyError(Exception):
    """Base class for every error raised by this package."""


class GraphValueError(JahangirRamseyError, ValueError):
    """A graph could not be built: bad order, loop, or endpoint out of range."""


class CeilingExceededError(JahangirRamseyError):
    """An input is larger than the exact ceiling of the requested operation."""

    def __init__(self, operation: str, limit: int, actual: int) -> None:
        super().__init__(f"{operation}: order {actual} exceeds ceiling {limit}")
        self.operation = operation
        self.limit = limit
        self.actual = actual

    def __reduce__(self) -> tuple[type, tuple[str, int, int]]:
        return type(self), (self.operation, self.limit, self.actual)


class PreconditionError(JahangirRamseyError):
    """An operation was called outside its documented precondition."""


class Graph6Error(JahangirRamseyError, ValueError):
    """Malformed graph6 text."""


class CheckpointMismatchError(JahangirRamseyError):
    """A checkpoint does not belong to the run it is being resumed into."""


class OutOfProvenRangeError(JahangirRamseyError):
    """No theorem gives a Ramsey value for the instance."""


class WitnessUnavailableError(JahangirRamseyError):
    """The generic lower-bound construction is smaller than R - 1."""


class SearchBudgetExhausted(JahangirRamseyError):
    """A bounded search ran out of nodes before reaching a verdict."""


class TheoremFalsifiedError(JahangirRamseyError):
    """An extractor found no certificate where a theorem guarantees one."""

    def __init__(self, record: "FalsificationRecord") -> None:
        super().__init__(f"{record.operation}: {record.reason} (graph6={record.graph6})")
        self.record = record

    def __reduce__(self) -> tuple[type, tuple["FalsificationRecord"]]:
        return type(self), (self.record,)


def check_ceiling(operation: str, limit: int, actual: int) -> None:
    if actual > limit:
        raise CeilingExceededError(operation, limit, actual)
