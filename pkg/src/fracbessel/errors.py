"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class CapabilityError(ValueError):
    """A test function lacks the analytic derivatives an operation needs."""


class AccuracyError(ArithmeticError):
    """A numerical method ran out of budget before meeting its tolerance.

    The best available estimate and its error bound are kept on the
    exception so callers can decide whether to use them anyway.
    """

    def __init__(self, message, value=float("nan"), err_est=float("inf")):
        super().__init__(message)
        self.value = value
        self.err_est = err_est
