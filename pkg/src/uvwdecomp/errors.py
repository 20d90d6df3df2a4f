"""Exception hierarchy shared by every module.

The CLI maps each class to its own exit status (see ``cli.EXIT_CODES``).
"""


class DecompositionError(Exception):
    """Base class for all package errors."""


class InvalidInputError(DecompositionError, ValueError):
    """Malformed image data: wrong shape, mismatched dimensions, NaN/Inf."""


class InvalidParameterError(DecompositionError, ValueError):
    """A scalar parameter is outside its admissible range."""


class NumericalFailureError(DecompositionError, ArithmeticError):
    """A solver produced non-finite values."""

    def __init__(self, step, iteration=None):
        self.step = step
        self.iteration = iteration
        where = f" at outer iteration {iteration}" if iteration is not None else ""
        super().__init__(f"non-finite values produced by step '{step}'{where}")


class PGMFormatError(InvalidInputError):
    """PGM decoding failure; ``offset`` is the byte position of the problem."""

    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} (byte offset {offset})")


class UnsupportedFormatError(PGMFormatError):
    """Well-formed PGM that this reader deliberately rejects (e.g. maxval != 255)."""
