"""Exception types shared across the package."""


class PohpError(Exception):
    pass


class UnknownVertexError(PohpError):
    pass


class CyclicOrderError(PohpError):
    pass


class NotAPermutationError(PohpError):
    pass


class NotAdjacentError(PohpError):
    pass


class AlreadyPlacedError(PohpError):
    pass


class InfeasibleOpError(PohpError):
    """An attach/merge/wrap step would contradict the precedence order."""


class TwoClosePartsError(PohpError):
    pass


class CloseAlreadyExistsError(PohpError):
    pass


class TooLargeError(PohpError):
    pass


class BudgetExceededError(PohpError):
    pass


class WidthTooLargeError(PohpError):
    pass


class SmallInstanceError(PohpError):
    pass


class DecompositionInvalidError(PohpError):
    pass


class MalformedHeaderError(PohpError):
    pass


class LiteralOutOfRangeError(PohpError):
    pass


class ClauseArityError(PohpError):
    pass


class NotMonotoneError(PohpError):
    pass


class UnsatisfiedAssignmentError(PohpError):
    pass


class FormatError(PohpError):
    """Malformed instance/decomposition/solution file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
