"""Exception types shared across the package.

The CLI maps these onto stable exit codes (see cli.py): parse errors -> 2,
dimension errors -> 3, solver aborts -> 4, singular systems -> 5, size
guards -> 6.
"""


class ParseError(ValueError):
    """Malformed input file (CSV/JSON); message names the offending location."""


class DimensionError(ValueError):
    """Shapes or sizes inconsistent with the requested operation."""


class ConvergenceFailure(RuntimeError):
    """Power iteration hit its iteration cap.

    Carries the last iterate in ``last`` so callers can decide whether the
    partial answer is acceptable.
    """

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class SolverAbort(RuntimeError):
    """Gradient descent produced a non-finite value, or no penalty value
    in a grid produced a usable run."""

    def __init__(self, message, iteration=None):
        super().__init__(message)
        self.iteration = iteration


class SingularMatrixError(RuntimeError):
    """A linear system required by the model is singular or ill-conditioned."""


class SizeGuardError(ValueError):
    """Problem size exceeds a hard guard (exhaustive search refusal)."""


class DegenerateLoadingError(RuntimeError):
    """A masked cross-covariance or covariance block is identically zero."""


class DegenerateScoreError(RuntimeError):
    """A component score has zero norm, so deflation is undefined."""
