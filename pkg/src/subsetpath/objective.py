"""Penalized relaxed objectives for the three models and their gradients.

Selection over columns is relaxed from binary s in {0,1}^p to t in [0,1]^p,
with X_t scaling column j of X by t_j. For a penalty weight ``lam`` the
objectives minimized over the hypercube are

  pls1:  -||X_t^T y||^2 / n^2 + lam * sum(t)   (univariate response)
  pls2:  -delta_t^2 + lam * sum(t),  delta_t = top singular value of X_t^T Y / n
  pca:   -delta_t + lam * sum(t),    delta_t = top eigenvalue of X_t^T X_t / n

The box constraint is removed through t_j = 1 - exp(-r_j^2), so downstream
solvers work on unconstrained r; grad_r applies the chain rule.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateLoadingError, DimensionError
from .linalg import DominantPair, power_iteration

MODELS = ("pls1", "pls2", "pca")

# t = 1 is reached only asymptotically under the map; callers clamp to this.
T_MAX = 1.0 - 1e-12

# Top-eigenvalue ties closer than this are flagged as crossings when
# diagnosis is requested; the gradient formula is used regardless.
CROSSING_GAP = 1e-9


def t_of_r(r: np.ndarray) -> np.ndarray:
    """Map unconstrained r to the hypercube: t_j = 1 - exp(-r_j^2)."""
    r = np.asarray(r, dtype=float)
    return -np.expm1(-r * r)


def r_of_t(t: np.ndarray) -> np.ndarray:
    """Non-negative preimage of the map; requires 0 <= t_j < 1."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0) or np.any(t >= 1.0):
        raise ValueError("r_of_t needs 0 <= t < 1 (t = 1 has no finite preimage)")
    return np.sqrt(-np.log1p(-t))


@dataclass(frozen=True)
class RelaxationPoint:
    """A point t in [0,1]^p paired with an unconstrained preimage r."""

    t: np.ndarray
    r: np.ndarray

    @classmethod
    def from_r(cls, r: np.ndarray) -> "RelaxationPoint":
        r = np.asarray(r, dtype=float)
        return cls(t=t_of_r(r), r=r)

    @classmethod
    def from_t(cls, t: np.ndarray) -> "RelaxationPoint":
        t = np.asarray(t, dtype=float)
        return cls(t=t, r=r_of_t(t))


@dataclass(frozen=True)
class ObjectiveContext:
    """Per-dataset quantities the objectives need; independent of t.

    Exactly one kernel is active: ``z`` for pls1, ``M`` for pls2 with
    q < p, ``G`` for pls2 with q >= p (G = M M^T) and for pca
    (G = X^T X / n).
    """

    model: str
    n: int
    p: int
    q: int
    lam: float
    z: np.ndarray | None = None
    M: np.ndarray | None = None
    G: np.ndarray | None = None

    def with_lambda(self, lam: float) -> "ObjectiveContext":
        if lam < 0.0:
            raise ValueError("lambda must be non-negative")
        return replace(self, lam=float(lam))


@dataclass
class ObjectiveEval:
    """Objective value, gradient in t, and the spectral quantity behind it.

    ``delta`` is delta_t^2 for pls2, delta_t for pca, and
    ||X_t^T y||^2 / n^2 for pls1. ``crossing`` is None unless a
    near-degenerate top eigenvalue was checked for (see eval_pls2/eval_pca).
    """

    value: float
    grad_t: np.ndarray
    delta: float
    dominant: DominantPair | None = None
    crossing: bool | None = None


def make_context(
    X: np.ndarray,
    Y: np.ndarray | None = None,
    model: str = "pls1",
    lam: float = 0.0,
    pls2_branch: str | None = None,
) -> ObjectiveContext:
    """Precompute the model kernel from (already centered) data.

    ``pls2_branch`` forces "v" (store M, power-iterate a q x q matrix) or
    "u" (store G = M M^T, p x p); by default q < p selects "v".
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DimensionError(f"X must be 2-D, got ndim={X.ndim}")
    n, p = X.shape
    if lam < 0.0:
        raise ValueError("lambda must be non-negative")
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}, expected one of {MODELS}")

    if model == "pca":
        if Y is not None:
            raise DimensionError("pca takes no response matrix")
        return ObjectiveContext("pca", n, p, 0, float(lam), G=(X.T @ X) / n)

    if Y is None:
        raise DimensionError(f"{model} requires a response")
    Y = np.asarray(Y, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None]
    if Y.shape[0] != n:
        raise DimensionError(f"X has {n} rows but Y has {Y.shape[0]}")
    q = Y.shape[1]
    if q == 0:
        raise DimensionError("response matrix has no columns")

    if model == "pls1":
        if q != 1:
            raise DimensionError(f"pls1 requires a single response column, got {q}")
        z = (X.T @ Y[:, 0]) / n
        return ObjectiveContext("pls1", n, p, 1, float(lam), z=z)

    M = (X.T @ Y) / n
    if pls2_branch is None:
        pls2_branch = "v" if q < p else "u"
    if pls2_branch == "v":
        return ObjectiveContext("pls2", n, p, q, float(lam), M=M)
    if pls2_branch == "u":
        return ObjectiveContext("pls2", n, p, q, float(lam), G=M @ M.T)
    raise ValueError(f"unknown pls2 branch {pls2_branch!r}")


def eval_pls1(ctx: ObjectiveContext, t: np.ndarray) -> ObjectiveEval:
    """Closed-form objective and gradient for the univariate-response model."""
    if ctx.model != "pls1":
        raise ValueError(f"context is for {ctx.model}, not pls1")
    t = np.asarray(t, dtype=float)
    z2 = ctx.z * ctx.z
    delta = float(np.sum(t * t * z2))
    value = -delta + ctx.lam * float(np.sum(t))
    grad = ctx.lam - 2.0 * t * z2
    return ObjectiveEval(value=value, grad_t=grad, delta=delta)


def _second_eigenvalue_gap(A: np.ndarray, pair: DominantPair, seed: int) -> bool:
    # Crude deflated power iteration, only used when crossing diagnosis is on.
    B = A - pair.value * np.outer(pair.vector, pair.vector)
    try:
        second = power_iteration(B, tol=1e-6, max_iter=500, seed=seed + 1)
        gap = pair.value - second.value
    except Exception:
        return False
    return gap < CROSSING_GAP * max(1.0, pair.value)


def eval_pls2(
    ctx: ObjectiveContext,
    t: np.ndarray,
    seed: int = 0,
    v0: np.ndarray | None = None,
    tol: float = 1e-10,
    max_iter: int = 10_000,
    diagnose_crossing: bool = False,
) -> ObjectiveEval:
    """Multivariate-response objective via power iteration.

    With M stored (q < p) the dominant eigenpair of M_t^T M_t gives
    delta_t^2 and its eigenvector v_t, and

        grad = lam - 2 (t * (M v_t) * (M v_t)).

    With G = M M^T stored (q >= p) the eigenpair of T_t G T_t gives u_t and

        grad = lam - 2 (u_t * (G (t * u_t))).
    """
    if ctx.model != "pls2":
        raise ValueError(f"context is for {ctx.model}, not pls2")
    t = np.asarray(t, dtype=float)
    if ctx.M is not None:
        Mt = t[:, None] * ctx.M
        A = Mt.T @ Mt
        pair = power_iteration(A, tol=tol, max_iter=max_iter, seed=seed, v0=v0)
        mv = ctx.M @ pair.vector
        grad = ctx.lam - 2.0 * t * mv * mv
    else:
        A = (t[:, None] * ctx.G) * t[None, :]
        pair = power_iteration(A, tol=tol, max_iter=max_iter, seed=seed, v0=v0)
        gu = ctx.G @ (t * pair.vector)
        grad = ctx.lam - 2.0 * pair.vector * gu
    crossing = _second_eigenvalue_gap(A, pair, seed) if diagnose_crossing else None
    value = -pair.value + ctx.lam * float(np.sum(t))
    return ObjectiveEval(
        value=value, grad_t=grad, delta=pair.value, dominant=pair, crossing=crossing
    )


def eval_pca(
    ctx: ObjectiveContext,
    t: np.ndarray,
    seed: int = 0,
    v0: np.ndarray | None = None,
    tol: float = 1e-10,
    max_iter: int = 10_000,
    diagnose_crossing: bool = False,
) -> ObjectiveEval:
    """Variance objective: delta_t is the top eigenvalue of T_t (X^T X / n) T_t,
    and grad = lam - 2 (u_t * (G (t * u_t))) with G = X^T X / n."""
    if ctx.model != "pca":
        raise ValueError(f"context is for {ctx.model}, not pca")
    t = np.asarray(t, dtype=float)
    A = (t[:, None] * ctx.G) * t[None, :]
    pair = power_iteration(A, tol=tol, max_iter=max_iter, seed=seed, v0=v0)
    gu = ctx.G @ (t * pair.vector)
    grad = ctx.lam - 2.0 * pair.vector * gu
    crossing = _second_eigenvalue_gap(A, pair, seed) if diagnose_crossing else None
    value = -pair.value + ctx.lam * float(np.sum(t))
    return ObjectiveEval(
        value=value, grad_t=grad, delta=pair.value, dominant=pair, crossing=crossing
    )


def eval_objective(
    ctx: ObjectiveContext,
    t: np.ndarray,
    seed: int = 0,
    v0: np.ndarray | None = None,
    **kwargs,
) -> ObjectiveEval:
    """Dispatch to the model-specific evaluator."""
    if ctx.model == "pls1":
        return eval_pls1(ctx, t)
    if ctx.model == "pls2":
        return eval_pls2(ctx, t, seed=seed, v0=v0, **kwargs)
    return eval_pca(ctx, t, seed=seed, v0=v0, **kwargs)


def grad_r(ev: ObjectiveEval, point: RelaxationPoint) -> np.ndarray:
    """Chain rule through the map: dg/dr_j = df/dt_j * 2 r_j exp(-r_j^2)."""
    r = point.r
    return ev.grad_t * 2.0 * r * np.exp(-r * r)


def corner_objective(ctx: ObjectiveContext, bits) -> float:
    """Unpenalized objective at a binary corner, via the column-deleted data.

    Returns 0.0 for the empty subset. Used for Algorithm-1 bucket selection
    and as the exhaustive-search objective.
    """
    idx = np.flatnonzero(np.asarray(bits))
    if idx.size == 0:
        return 0.0
    if ctx.model == "pls1":
        zs = ctx.z[idx]
        return float(-np.sum(zs * zs))
    if ctx.model == "pls2":
        if ctx.M is not None:
            Ms = ctx.M[idx, :]
            k, q = Ms.shape
            A = Ms @ Ms.T if k <= q else Ms.T @ Ms
        else:
            A = ctx.G[np.ix_(idx, idx)]
        return -power_iteration(A).value
    A = ctx.G[np.ix_(idx, idx)]
    return -power_iteration(A).value


def lambda_max(ctx: ObjectiveContext) -> float:
    """Largest useful penalty: sum(z^2) for pls1, the top eigenvalue of
    M^T M for pls2 and of X^T X / n for pca. Equals -f_0 at the full
    subset for every model; the terminal subset at this penalty is empty.
    """
    value = -corner_objective(ctx, np.ones(ctx.p, dtype=int))
    if value <= 0.0:
        raise DegenerateLoadingError("data carries no signal: lambda_max is zero")
    return value
