"""Exception types shared across the package."""


class SunflowerLabError(Exception):
    """Base class for all package-specific errors."""


class InvalidFamilyError(SunflowerLabError, ValueError):
    """A set family violates a structural invariant (range, ordering, duplicates)."""


class EmptyFamilyError(SunflowerLabError, ValueError):
    """An operation that needs at least one member received an empty family."""


class EmptyMemberError(SunflowerLabError, ValueError):
    """A member is the empty set, so no transversal (or popular element) exists."""


class ParameterError(SunflowerLabError, ValueError):
    """An argument is outside the documented range of the operation."""


class BudgetExceededError(SunflowerLabError, RuntimeError):
    """A node/time budget was exhausted before the computation finished."""


class ParseError(SunflowerLabError, ValueError):
    """A file could not be parsed; carries the offending location."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        loc = ""
        if path is not None:
            loc += str(path)
        if line is not None:
            loc += f":{line}"
        super().__init__(f"{loc}: {message}" if loc else message)
        self.path = path
        self.line = line


class GeneralPositionError(SunflowerLabError, ValueError):
    """A point lies exactly on a region boundary; carries the offending pair."""

    def __init__(self, message: str, point_index: int, region_index: int):
        super().__init__(message)
        self.point_index = point_index
        self.region_index = region_index
