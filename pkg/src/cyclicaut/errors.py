"""Exception types shared across the package."""


class CyclicAutError(Exception):
    """Base class for all errors raised by cyclicaut."""


class CapExceeded(CyclicAutError):
    """An enumeration or brute-force search would exceed its configured cap."""

    def __init__(self, what: str, required: int, cap: int) -> None:
        super().__init__(f"{what}: {required} candidates required, cap is {cap}")
        self.what = what
        self.required = required
        self.cap = cap


class UnsupportedLength(CyclicAutError):
    """The object length is outside what the classification/equivalence results cover."""


class PreconditionError(CyclicAutError, ValueError):
    """An algorithm was invoked on an input violating one of its screens."""


class InternalError(CyclicAutError, AssertionError):
    """A self-check failed; indicates a bug rather than bad input."""
