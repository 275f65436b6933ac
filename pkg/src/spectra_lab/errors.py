"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SpectraError(Exception):
    """Base class for user-facing errors (bad input, caps, mismatches)."""


class ConstructionError(SpectraError, ValueError):
    """A ring, ideal or poset could not be built from the given data."""


class SizeCapError(ConstructionError):
    def __init__(self, requested: int, cap: int):
        super().__init__(f"ring of {requested} elements exceeds the size cap of {cap}")
        self.requested = requested
        self.cap = cap


class RingMismatchError(SpectraError, ValueError):
    """Elements or ideals from two different rings were mixed."""


class ConsistencyError(RuntimeError):
    """Two criteria that must agree did not.

    This always indicates an engine bug (or a false theorem), never a
    property verdict, so it is kept outside the ``SpectraError`` tree.
    """

    def __init__(self, equivalence: str, subject: str, detail: str = ""):
        msg = f"internal consistency failure: {equivalence} on {subject}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.equivalence = equivalence
        self.subject = subject
        self.detail = detail
