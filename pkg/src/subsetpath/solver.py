"""First-order minimization of the relaxed objective over unconstrained r.

The solver records the whole visited t-trajectory: the trajectory, not just
the terminal point, is what the path builder mines for candidate subsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SolverAbort
from .objective import (
    ObjectiveContext,
    RelaxationPoint,
    eval_objective,
    grad_r,
    r_of_t,
    t_of_r,
    T_MAX,
)

# Past this many stored points, only every 10th iterate is kept.
_TRACE_DENSE_LIMIT = 10_000


@dataclass(frozen=True)
class SolverConfig:
    """Defaults follow common Adam practice; the termination test watches t,
    not r, because r drifts unboundedly while t saturates."""

    method: str = "adam"
    learning_rate: float = 0.05
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    max_iter: int = 1000
    tol: float = 1e-5
    patience: int = 10
    t_init: float | np.ndarray = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.method not in ("adam", "gd"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.learning_rate <= 0.0:
            raise ValueError("learning_rate must be positive")
        if not (0.0 < self.beta1 < 1.0 and 0.0 < self.beta2 < 1.0):
            raise ValueError("adam betas must lie in (0, 1)")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.patience < 1:
            raise ValueError("patience must be at least 1")


@dataclass
class TracePoint:
    iter: int
    t: np.ndarray
    objective: float


@dataclass
class SolverRun:
    trace: list[TracePoint] = field(default_factory=list)
    converged: bool = False
    iterations: int = 0
    terminal_t: np.ndarray | None = None


def _initial_t(cfg: SolverConfig, p: int) -> np.ndarray:
    t0 = np.asarray(cfg.t_init, dtype=float)
    if t0.ndim == 0:
        t0 = np.full(p, float(t0))
    if t0.shape != (p,):
        raise ValueError(f"t_init has shape {t0.shape}, expected ({p},)")
    if np.any(t0 <= 0.0) or np.any(t0 >= 1.0):
        raise ValueError("t_init must lie strictly inside (0, 1)")
    return np.minimum(t0, T_MAX)


def minimize(ctx: ObjectiveContext, cfg: SolverConfig) -> SolverRun:
    """Run Adam or plain gradient descent on g(r) = f(t(r)).

    Terminates once max_j |t_j - t_j_prev| < cfg.tol for cfg.patience
    consecutive updates (converged) or after cfg.max_iter updates.
    Raises SolverAbort on a non-finite objective or gradient, naming the
    iteration.
    """
    t = _initial_t(cfg, ctx.p)
    r = r_of_t(t)
    run = SolverRun()

    m = np.zeros(ctx.p)
    v = np.zeros(ctx.p)
    warm = None
    stall = 0
    it = 0
    last_recorded = -1

    while True:
        try:
            ev = eval_objective(ctx, t, seed=cfg.seed, v0=warm)
        except ValueError as exc:
            if "non-finite" in str(exc):
                raise SolverAbort(
                    f"non-finite objective matrix at iteration {it}", iteration=it
                ) from exc
            raise
        if not np.isfinite(ev.value) or not np.all(np.isfinite(ev.grad_t)):
            raise SolverAbort(
                f"non-finite objective or gradient at iteration {it}", iteration=it
            )
        if len(run.trace) < _TRACE_DENSE_LIMIT or it % 10 == 0:
            run.trace.append(TracePoint(iter=it, t=t.copy(), objective=ev.value))
            last_recorded = it
        if ev.dominant is not None:
            warm = ev.dominant.vector

        if stall >= cfg.patience:
            run.converged = True
            break
        if it >= cfg.max_iter:
            break

        g = grad_r(ev, RelaxationPoint(t=t, r=r))
        if not np.all(np.isfinite(g)):
            raise SolverAbort(f"non-finite gradient at iteration {it}", iteration=it)
        it += 1
        if cfg.method == "adam":
            m = cfg.beta1 * m + (1.0 - cfg.beta1) * g
            v = cfg.beta2 * v + (1.0 - cfg.beta2) * g * g
            m_hat = m / (1.0 - cfg.beta1**it)
            v_hat = v / (1.0 - cfg.beta2**it)
            r = r - cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.eps)
        else:
            r = r - cfg.learning_rate * g
        t_next = t_of_r(r)
        stall = stall + 1 if np.max(np.abs(t_next - t)) < cfg.tol else 0
        t = t_next

    if last_recorded != it:
        # Trace thinning skipped the final point; the terminal state must
        # still be the last entry.
        ev = eval_objective(ctx, t, seed=cfg.seed, v0=warm)
        run.trace.append(TracePoint(iter=it, t=t.copy(), objective=ev.value))
    run.iterations = it
    run.terminal_t = run.trace[-1].t
    return run
