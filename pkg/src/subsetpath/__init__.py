"""Best-subset solution paths for linear dimension-reduction models.

Computes, for each subset size k, the best k-variable subset for building
PCA and PLS components, by gradient descent on a penalized continuous
relaxation of the discrete selection problem. Includes multi-component
fitting via deflation, prediction, an exhaustive oracle for certification
at small p, and simulation-study tooling.
"""

__version__ = "0.1.0"

from .components import (
    ComponentState,
    FittedModel,
    PickStrategy,
    Q2Report,
    adjusted_weights,
    deflate,
    fit,
    loading_from_subset,
    pev_cpev,
    predict,
    q2,
    regression_coefficients,
)
from .errors import (
    ConvergenceFailure,
    DegenerateLoadingError,
    DegenerateScoreError,
    DimensionError,
    ParseError,
    SingularMatrixError,
    SizeGuardError,
    SolverAbort,
)
from .linalg import DominantPair, center_columns, frobenius_norm, power_iteration
from .objective import (
    ObjectiveContext,
    ObjectiveEval,
    RelaxationPoint,
    corner_objective,
    eval_objective,
    eval_pca,
    eval_pls1,
    eval_pls2,
    grad_r,
    lambda_max,
    make_context,
    r_of_t,
    t_of_r,
)
from .oracle import (
    CornerCheckReport,
    OracleResult,
    check_corner_optimality,
    exhaustive_path,
)
from .path import (
    GridConfig,
    SizeBucket,
    SolutionPath,
    Subset,
    dynamic_grid,
    extract_subsets,
    path_objective_curve,
    path_to_dict,
    select_best,
    terminal_subset,
)
from .simulate import MetricsReport, SimConfig, SimInstance, generate, metrics
from .solver import SolverConfig, SolverRun, TracePoint, minimize

__all__ = [name for name in dir() if not name.startswith("_")]
