"""Dense matrix primitives: column centering, Frobenius norm, and
dominant-eigenpair extraction by power iteration.

Everything operates on plain float ndarrays. All functions are pure; the
returned arrays never alias their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionError

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000

# Consecutive zero Rayleigh quotients tolerated before re-drawing the start
# vector (start landed in the nullspace).
_ZERO_STALL_LIMIT = 10
_MAX_REDRAWS = 50


@dataclass(frozen=True)
class DominantPair:
    """Largest eigenvalue of a symmetric PSD matrix and its unit eigenvector."""

    value: float
    vector: np.ndarray
    iterations: int


def center_columns(X: np.ndarray) -> np.ndarray:
    """Subtract each column mean; requires at least two rows."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={X.ndim}")
    if X.shape[0] < 2:
        raise DimensionError(f"need at least 2 rows to center, got {X.shape[0]}")
    return X - X.mean(axis=0)


def frobenius_norm(A: np.ndarray) -> float:
    """sqrt(trace(A^T A))."""
    A = np.asarray(A, dtype=float)
    return float(np.sqrt(np.sum(A * A)))


def _fix_sign(v: np.ndarray) -> np.ndarray:
    # Entry of largest magnitude made positive, for stable serialization.
    j = int(np.argmax(np.abs(v)))
    return -v if v[j] < 0 else v


def _seed_vector(n: int, seed: int, offset: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed + 7919 * offset)
    v = rng.standard_normal(n)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        v = np.zeros(n)
        v[0] = 1.0
        return v
    return v / norm


def power_iteration(
    A: np.ndarray,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    v0: np.ndarray | None = None,
) -> DominantPair:
    """Dominant eigenpair of a symmetric PSD matrix.

    Repeats v <- A v / ||A v|| and tracks the Rayleigh quotient
    eta = v^T A v until both the change in eta and the residual
    ||A v - eta v||_inf fall below tol * max(1, eta).

    ``v0`` warm-starts the iteration (used by the objective evaluators,
    where successive calls see nearby matrices); otherwise the start
    vector is drawn deterministically from ``seed``, re-drawn with a new
    offset if the Rayleigh quotient stagnates at zero.

    Raises ConvergenceFailure (carrying the last iterate) if ``max_iter``
    is exhausted.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"power iteration needs a square matrix, got {A.shape}")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    n = A.shape[0]
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix contains non-finite entries")
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    if scale > 0.0:
        asym = float(np.max(np.abs(A - A.T)))
        if asym > 1e-10 * max(1.0, scale):
            raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.3e})")
    if scale == 0.0:
        return DominantPair(0.0, _fix_sign(_seed_vector(n, seed)), 0)

    if v0 is not None:
        v = np.asarray(v0, dtype=float)
        norm = np.linalg.norm(v)
        v = v / norm if norm > 0.0 else _seed_vector(n, seed)
    else:
        v = _seed_vector(n, seed)

    w = A @ v
    eta = float(v @ w)
    zero_stall = 0
    redraws = 0
    tiny = 1e-300
    for it in range(1, max_iter + 1):
        norm_w = float(np.linalg.norm(w))
        if norm_w <= tiny:
            zero_stall += 1
            if zero_stall >= _ZERO_STALL_LIMIT:
                redraws += 1
                if redraws > _MAX_REDRAWS:
                    raise ConvergenceFailure(
                        "start vector repeatedly trapped in the nullspace",
                        last=DominantPair(0.0, _fix_sign(v), it),
                    )
                v = _seed_vector(n, seed, offset=redraws)
                w = A @ v
                eta = float(v @ w)
                zero_stall = 0
            continue
        v_next = w / norm_w
        w_next = A @ v_next
        eta_next = float(v_next @ w_next)
        residual = float(np.max(np.abs(w_next - eta_next * v_next)))
        bound = tol * max(1.0, abs(eta_next))
        if abs(eta_next - eta) <= bound and residual <= bound:
            return DominantPair(eta_next, _fix_sign(v_next), it)
        v, w, eta = v_next, w_next, eta_next

    raise ConvergenceFailure(
        f"power iteration did not converge in {max_iter} iterations "
        f"(last eigenvalue estimate {eta:.6e})",
        last=DominantPair(eta, _fix_sign(v), max_iter),
    )
