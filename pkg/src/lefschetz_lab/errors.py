"""Exception types shared across the package."""


class LefschetzLabError(Exception):
    """Base class for all errors raised by lefschetz_lab."""


class PreconditionError(LefschetzLabError, ValueError):
    """An operation was called on input outside its domain."""


class ParseError(LefschetzLabError, ValueError):
    """Malformed polynomial or ideal text.

    ``position`` is the 0-based character offset of the offending token,
    or ``None`` when the error is not tied to one place in the input.
    """

    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if text is not None and position is not None:
            message = f"{message} at position {position}\n  {text}\n  {' ' * position}^"
        super().__init__(message)
