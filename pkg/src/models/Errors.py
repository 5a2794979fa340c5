class TphwError(Exception):
    """
    Base class for every error raised by the weave toolkit.

    Attributes:
        exit_code (int): The process exit code the CLI uses for this error.
    """

    exit_code = 1

    def __init__(self, message: str = "", **context):
        self.context = context
        super().__init__(message)


# --------------------------
# Usage errors (exit 2)
# --------------------------

class UnknownWeave(TphwError):
    exit_code = 2


class UnconstructedWeave(TphwError):
    exit_code = 2


# --------------------------
# IO / parse errors (exit 4)
# --------------------------

class ParseError(TphwError):
    exit_code = 4


class InvariantViolation(TphwError):
    exit_code = 4

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        message = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(message, invariant=invariant)


class ExportError(TphwError):
    exit_code = 4


# --------------------------
# Numerical errors (exit 5)
# --------------------------

class InvalidDirection(TphwError):
    exit_code = 5


class UnsupportedAxis(TphwError):
    exit_code = 5


class DegenerateHelix(TphwError):
    exit_code = 5


class IncommensurateHelix(TphwError):
    exit_code = 5


class EmptyMesh(TphwError):
    exit_code = 5


class SamePredicate(TphwError):
    exit_code = 5


class AmbiguousChirality(TphwError):
    exit_code = 5
