"""Exception hierarchy shared by every module."""


class CogthermError(Exception):
    """Base class for all errors raised by this package."""


class ComparabilityError(CogthermError, ValueError):
    """Two shapes of different lengths were compared."""


class DomainError(CogthermError, ValueError):
    """An argument falls outside the mathematical domain of an operation."""


class NoAffinityError(DomainError):
    """Capacity requested at zero matching affinity."""


class PhaseError(CogthermError, ValueError):
    """A transition was used out of its retention/obliteration order."""


class DivergenceError(CogthermError, ArithmeticError):
    """Numerical integration produced a non-finite state."""

    def __init__(self, t, message=None):
        self.t = t
        super().__init__(message or f"non-finite state encountered at t={t!r}")


class ScenarioError(CogthermError, ValueError):
    """A scenario file could not be parsed or failed validation."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        self.message = message
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
