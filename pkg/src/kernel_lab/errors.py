"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: invalid input (DomainError and
friends) -> 2, internal tolerance / consistency failures -> 3.  Plain
verification failures are not exceptions; they are failing records in a
Report.
"""


class KernelLabError(Exception):
    """Base class for all package errors."""


class DomainError(KernelLabError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class SingularityError(DomainError):
    """Evaluation requested exactly on a singularity (x == y)."""


class GridMismatchError(KernelLabError, ValueError):
    """Two boundary fields do not live on the same grid."""


class ToleranceError(KernelLabError, RuntimeError):
    """A quadrature did not converge within its budget.

    Carries the best available estimate so callers can degrade gracefully.
    """

    def __init__(self, message, estimate=None, achieved_tol=None):
        super().__init__(message)
        self.estimate = estimate
        self.achieved_tol = achieved_tol


class ConsistencyError(KernelLabError, RuntimeError):
    """Two internal evaluation routes disagreed beyond their tolerance."""

    def __init__(self, message, route_a=None, route_b=None):
        super().__init__(message)
        self.route_a = route_a
        self.route_b = route_b


class ScenarioError(KernelLabError, ValueError):
    """A scenario file is malformed or violates a precondition."""
