"""Exception hierarchy."""


class EhcertError(Exception):
    """Base class for all library errors."""


class PreconditionError(EhcertError, ValueError):
    """An input violates the documented precondition of an operation."""


class SearchLimitExceeded(EhcertError):
    """An exact search was refused because the input is above a configured ceiling."""


class ParseError(EhcertError, ValueError):
    """A text file could not be parsed; ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class BoundDidNotFire(EhcertError):
    """A step guaranteed only at large scale failed under the current constants."""

    def __init__(self, stage, detail):
        self.stage = stage
        self.detail = detail
        super().__init__(f"{stage}: {detail}")


class Inconclusive(EhcertError):
    """Every search a step relies on came back empty or was refused above a ceiling.

    Distinct from a wrong answer: no certificate is produced.
    """

    def __init__(self, stage, detail):
        self.stage = stage
        self.detail = detail
        super().__init__(f"{stage}: {detail}")
