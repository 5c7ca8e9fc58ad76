"""Exception hierarchy shared by every module."""


class QSupportError(Exception):
    pass


class InvalidInput(QSupportError, ValueError):
    """Rejected input. ``reasons`` lists each violated condition separately."""

    def __init__(self, *reasons):
        self.reasons = [str(r) for r in reasons]
        super().__init__("; ".join(self.reasons))


class CapacityExceeded(QSupportError, RuntimeError):
    """A configured resource bound was hit; never a silent truncation."""


class InvariantViolation(QSupportError, AssertionError):
    """A mathematical invariant failed. Signals a bug upstream."""


class AssumptionViolation(QSupportError, RuntimeError):
    """Input is outside the hypotheses the computation relies on."""
