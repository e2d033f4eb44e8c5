"""Semantic exceptions shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematically valid domain."""


class LengthMismatchError(ValueError):
    """Two paired sequences have different lengths."""


class DegenerateSequenceError(ValueError):
    """A sequence has zero variance, so a correlation is undefined."""


class NotOrthogonalError(ValueError):
    """An operation requires two orthogonal directions."""


class ValidationError(ValueError):
    """A scenario definition failed validation.

    Carries one message per offending field so callers can report all
    problems at once.
    """

    def __init__(self, messages):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))
