"""Exceptions raised by the triple-realizability library."""


class TripleError(Exception):
    """Base class for every error the library raises on purpose."""


class CapExceeded(TripleError):
    """An explicit group or graph would grow past the configured cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeds cap of {cap}")
        self.cap = cap


class NoSuchUnit(TripleError, ValueError):
    pass


class DegreeMismatch(TripleError, ValueError):
    pass


class OutOfRange(TripleError, ValueError):
    pass


class DuplicateEdge(TripleError, ValueError):
    pass


class NonPrimeField(TripleError, ValueError):
    pass


class DivisibilityViolated(TripleError, ValueError):
    pass


class ParseError(TripleError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SearchBudgetExceeded(TripleError):
    def __init__(self, budget: int):
        super().__init__(f"search budget of {budget} nodes exceeded")
        self.budget = budget


class CertificateError(TripleError):
    """A certificate failed to replay."""


class InvariantViolated(RuntimeError):
    """An internal counting invariant failed. This is a bug, not bad input."""
