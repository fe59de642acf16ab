"""Exception hierarchy shared by every zzbound module."""


class ZZBoundError(Exception):
    """Base class for all library errors."""


class DomainError(ZZBoundError, ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedOperationError(ZZBoundError):
    """The operation is not defined for this kind of input (e.g. a multi-modal prior)."""


class NumericalError(ZZBoundError, ArithmeticError):
    """
    A numerical procedure did not reach its requested accuracy.

    Args:
        message: Description of the failure.
        value: Best value obtained before giving up, if any.
        achieved_error: Error estimate of ``value``.
        requested_tolerance: Tolerance that was asked for.
    """

    def __init__(
        self,
        message: str,
        value: float | None = None,
        achieved_error: float | None = None,
        requested_tolerance: float | None = None,
    ):
        super().__init__(message)
        self.value = value
        self.achieved_error = achieved_error
        self.requested_tolerance = requested_tolerance

    def report(self) -> str:
        parts = [str(self)]
        if self.value is not None:
            parts.append(f"best value={self.value:.17g}")
        if self.achieved_error is not None:
            parts.append(f"achieved error={self.achieved_error:.3g}")
        if self.requested_tolerance is not None:
            parts.append(f"requested tolerance={self.requested_tolerance:.3g}")
        return "; ".join(parts)


class QuadratureError(NumericalError):
    """Adaptive integration exhausted its subdivision budget."""


class BracketError(NumericalError):
    """A root-finding bracket does not contain a sign change."""
