"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid penalty parameter, experiment config or CLI argument."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class UnsupportedFamilyError(ValueError):
    """Operation requires a penalty family outside the one supplied."""


class RegimeError(ValueError):
    """Stepsize incompatible with the penalty's weak-convexity modulus."""


class NoNonzeroMinimizerError(ValueError):
    """No nonzero stationary point exists for the requested scalar problem."""


class NumericalError(RuntimeError):
    """A numerical routine failed (non-bracketing bisection, Cholesky, ...)."""


class DivergenceError(NumericalError):
    """Solver produced a non-finite objective; carries the trace so far."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace
