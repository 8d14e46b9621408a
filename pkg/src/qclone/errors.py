"""Exception hierarchy shared by the library and the command line."""


class QCloneError(Exception):
    """Base class for every error raised by qclone."""


class DimensionError(QCloneError, ValueError):
    """Operands have incompatible or oversized dimensions."""


class InvalidGateError(QCloneError, ValueError):
    """A gate specification is malformed or its matrix is not unitary."""


class NormalizationError(QCloneError, ValueError):
    """A state or amplitude pair does not have unit norm."""

    def __init__(self, message: str, norm: float | None = None):
        super().__init__(message)
        self.norm = norm


class DomainError(QCloneError, ValueError):
    """A parameter lies outside its legal interval."""


class ParseError(QCloneError):
    """Circuit script syntax or semantic error, with a source position."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
