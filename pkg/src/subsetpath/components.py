"""Multi-component fitting: per-component best-subset loadings, deflation,
adjusted weights, regression coefficients, prediction, explained-variance
and cross-validated predictive-power reporting.

Component h is built on the deflated data (X_{h-1}, Y_{h-1}); deflation
then removes the fitted rank-one contribution:

    X_h = X_{h-1} - xi_h c_h^T                  with xi_h = X_{h-1} u_h
    Y_h = Y_{h-1} - xi_h d_h^T   (regression)
    Y_h = Y_{h-1} - psi_h e_h^T  (canonical)    with psi_h = Y_{h-1} v_h

where c_h = X_{h-1}^T xi_h / (xi_h^T xi_h), d_h likewise against Y, and
e_h = Y_{h-1}^T xi_h / (psi_h^T xi_h) (an alternate psi^T psi denominator
is exposed as a switch). Adjusted weights w_h express each score directly
in original-variable coordinates: X w_h = X_{h-1} u_h.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateLoadingError,
    DegenerateScoreError,
    DimensionError,
    SingularMatrixError,
)
from .linalg import power_iteration
from .path import GridConfig, SolutionPath, Subset, dynamic_grid
from .solver import SolverConfig

# Conventional significance threshold for the cross-validated predictive
# power criterion; reported only, never asserted.
Q2_SIGNIFICANCE = 0.0975

_COND_LIMIT = 1e8


@dataclass
class ComponentState:
    h: int
    subset: Subset
    u: np.ndarray
    v: np.ndarray | None
    xi: np.ndarray
    psi: np.ndarray | None
    c: np.ndarray
    d: np.ndarray | None
    e: np.ndarray | None
    delta: float
    objective: float | None = None
    w: np.ndarray | None = None


@dataclass
class FittedModel:
    model: str
    mode: str | None
    H: int
    x_means: np.ndarray
    y_means: np.ndarray | None
    components: list[ComponentState]
    W: np.ndarray
    T: np.ndarray
    beta: np.ndarray | None
    pev: np.ndarray
    cpev: np.ndarray
    paths: list[SolutionPath] = field(default_factory=list)
    weight_routes_agree: bool | None = None

    # Stacked per-component matrices of the score-space reparameterization.

    @property
    def U(self) -> np.ndarray:
        return np.column_stack([c.u for c in self.components])

    @property
    def C(self) -> np.ndarray:
        return np.column_stack([c.c for c in self.components])

    @property
    def D(self) -> np.ndarray | None:
        if any(c.d is None for c in self.components):
            return None
        return np.column_stack([c.d for c in self.components])

    @property
    def S(self) -> np.ndarray | None:
        if any(c.psi is None for c in self.components):
            return None
        return np.column_stack([c.psi for c in self.components])

    @property
    def B(self) -> np.ndarray | None:
        """Inner-relationship diagonal: per-component slope of the Y-score
        regressed on the X-score, so S is approximated by T diag(B)."""
        if any(c.psi is None for c in self.components):
            return None
        return np.array(
            [float(c.xi @ c.psi) / float(c.xi @ c.xi) for c in self.components]
        )


@dataclass(frozen=True)
class PickStrategy:
    """How to pick the one subset used for a component before deflation."""

    kind: str
    k: int | None = None
    fraction: float | None = None
    folds: int = 5

    @classmethod
    def fixed_k(cls, k: int) -> "PickStrategy":
        if k < 1:
            raise ValueError("fixed-k needs k >= 1")
        return cls(kind="fixed-k", k=k)

    @classmethod
    def cpev_drop(cls, fraction: float) -> "PickStrategy":
        if not (0.0 < fraction < 1.0):
            raise ValueError("cpev-drop fraction must lie in (0, 1)")
        return cls(kind="cpev-drop", fraction=fraction)

    @classmethod
    def min_msep(cls, folds: int = 5) -> "PickStrategy":
        return cls(kind="min-msep", folds=folds)

    @classmethod
    def max_cor(cls, folds: int = 5) -> "PickStrategy":
        return cls(kind="max-cor", folds=folds)

    @classmethod
    def parse(cls, text: str) -> "PickStrategy":
        """Parse CLI forms: fixed-k=K, cpev-drop=F, min-msep, max-cor."""
        name, _, arg = text.partition("=")
        if name == "fixed-k":
            return cls.fixed_k(int(arg))
        if name == "cpev-drop":
            return cls.cpev_drop(float(arg))
        if name == "min-msep":
            return cls.min_msep()
        if name == "max-cor":
            return cls.max_cor()
        raise ValueError(f"unknown pick strategy {text!r}")


def loading_from_subset(
    X_h: np.ndarray,
    Y_h: np.ndarray | None,
    model: str,
    subset: Subset,
    seed: int = 0,
) -> tuple[np.ndarray, np.ndarray | None, float]:
    """Optimal loading for a fixed support on (possibly deflated) data.

    pls1: the normalized masked cross-covariance. pls2: the top singular
    pair of the masked M, via power iteration on the smaller Gram block.
    pca: the top eigenvector of the masked covariance. The returned u is
    embedded in R^p with zeros off-support.
    """
    idx = subset.indices
    if idx.size == 0:
        raise DegenerateLoadingError("empty subset has no loading")
    n, p = X_h.shape
    Xs = X_h[:, idx]
    u = np.zeros(p)

    if model == "pls1":
        y = Y_h.reshape(-1)
        zs = Xs.T @ y / n
        norm = float(np.linalg.norm(zs))
        if norm == 0.0:
            raise DegenerateLoadingError("masked cross-covariance is zero")
        u[idx] = zs / norm
        return u, np.ones(1), norm

    if model == "pls2":
        Ms = Xs.T @ Y_h / n
        k, q = Ms.shape
        if k <= q:
            pair = power_iteration(Ms @ Ms.T, seed=seed)
            if pair.value <= 0.0:
                raise DegenerateLoadingError("masked cross-covariance is zero")
            us = pair.vector
            v = Ms.T @ us
            v /= np.linalg.norm(v)
        else:
            pair = power_iteration(Ms.T @ Ms, seed=seed)
            if pair.value <= 0.0:
                raise DegenerateLoadingError("masked cross-covariance is zero")
            v = pair.vector
            us = Ms @ v
            us /= np.linalg.norm(us)
        # Joint sign: largest-magnitude entry of u positive.
        j = int(np.argmax(np.abs(us)))
        if us[j] < 0:
            us, v = -us, -v
        u[idx] = us
        return u, v, float(np.sqrt(pair.value))

    if model == "pca":
        pair = power_iteration(Xs.T @ Xs / n, seed=seed)
        if pair.value <= 0.0:
            raise DegenerateLoadingError("masked covariance is zero")
        u[idx] = pair.vector
        return u, None, pair.value

    raise ValueError(f"unknown model {model!r}")


def _build_component(
    X_h: np.ndarray,
    Y_h: np.ndarray | None,
    model: str,
    subset: Subset,
    h: int,
    mode: str | None,
    e_denominator: str,
    seed: int = 0,
    objective: float | None = None,
) -> ComponentState:
    u, v, delta = loading_from_subset(X_h, Y_h, model, subset, seed=seed)
    xi = X_h @ u
    ss = float(xi @ xi)
    if ss == 0.0:
        raise DegenerateScoreError(f"component {h} has a zero score")
    c = X_h.T @ xi / ss
    psi = d = e = None
    if model != "pca":
        psi = Y_h @ v
        if mode == "regression":
            d = Y_h.T @ xi / ss
        else:
            denom = float(psi @ xi) if e_denominator == "psi-xi" else float(psi @ psi)
            if denom == 0.0:
                raise DegenerateScoreError(f"component {h}: zero canonical denominator")
            e = Y_h.T @ xi / denom
    return ComponentState(
        h=h, subset=subset, u=u, v=v, xi=xi, psi=psi, c=c, d=d, e=e,
        delta=delta, objective=objective,
    )


def deflate(
    X_h: np.ndarray,
    Y_h: np.ndarray | None,
    comp: ComponentState,
    mode: str | None,
    model: str,
) -> tuple[np.ndarray, np.ndarray | None]:
    """Remove the fitted rank-one contribution; X_h^T xi = 0 afterwards."""
    if float(comp.xi @ comp.xi) == 0.0:
        raise DegenerateScoreError("cannot deflate on a zero score")
    X_next = X_h - np.outer(comp.xi, comp.c)
    if model == "pca":
        return X_next, None
    if mode == "regression":
        Y_next = Y_h - np.outer(comp.xi, comp.d)
    else:
        Y_next = Y_h - np.outer(comp.psi, comp.e)
    return X_next, Y_next


def adjusted_weights(X: np.ndarray, components: list[ComponentState]) -> np.ndarray:
    """Weights expressing deflated-space loadings in original coordinates.

    w_1 = u_1 and w_h = prod_{j<h} (I - u_j c_j^T) u_h, so that
    X w_h = X_{h-1} u_h holds as an algebraic identity (verified here).
    When C^T U is well-conditioned the closed form U (C^T U)^{-1} must
    agree; a singular C^T U falls back to the product formula alone.
    """
    p = components[0].u.shape[0]
    H = len(components)
    W = np.zeros((p, H))
    for h, comp in enumerate(components):
        w = comp.u.copy()
        for j in range(h - 1, -1, -1):
            w -= components[j].u * float(components[j].c @ w)
        W[:, h] = w
        comp.w = w
        resid = float(np.max(np.abs(X @ w - comp.xi)))
        scale = max(1.0, float(np.max(np.abs(comp.xi))))
        if resid > 1e-8 * scale:
            raise AssertionError(
                f"adjusted weight {h + 1} violates X w = X_(h-1) u: {resid:.3e}"
            )
    return W


def _solve_weights(components: list[ComponentState]) -> np.ndarray:
    U = np.column_stack([c.u for c in components])
    C = np.column_stack([c.c for c in components])
    CtU = C.T @ U
    if np.linalg.cond(CtU) > _COND_LIMIT:
        raise SingularMatrixError(
            f"C^T U is ill-conditioned (cond={np.linalg.cond(CtU):.3e})"
        )
    return U @ np.linalg.inv(CtU)


def regression_coefficients(components: list[ComponentState]) -> np.ndarray:
    """beta = U (C^T U)^{-1} D^T, mapping original X to predicted Y.

    Prediction through beta reproduces the score-space prediction
    sum_h xi_h d_h^T on training data.
    """
    if any(c.d is None for c in components):
        raise ValueError("regression coefficients need regression-mode components")
    U = np.column_stack([c.u for c in components])
    C = np.column_stack([c.c for c in components])
    D = np.column_stack([c.d for c in components])
    CtU = C.T @ U
    cond = np.linalg.cond(CtU)
    if not np.isfinite(cond) or cond > 1e12:
        raise SingularMatrixError(f"C^T U is singular (cond={cond:.3e})")
    return U @ np.linalg.solve(CtU, D.T)


def predict(fit: FittedModel, X_new: np.ndarray) -> np.ndarray:
    """Predict responses for raw X_new; centering uses the training means."""
    if fit.beta is None:
        raise ValueError("model has no regression coefficients to predict with")
    X_new = np.asarray(X_new, dtype=float)
    if X_new.ndim == 1:
        X_new = X_new[None, :]
    if X_new.shape[1] != fit.x_means.shape[0]:
        raise DimensionError(
            f"X_new has {X_new.shape[1]} columns, model expects {fit.x_means.shape[0]}"
        )
    return (X_new - fit.x_means) @ fit.beta + fit.y_means


def pev_cpev(X: np.ndarray, W: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Explained-variance shares of X for each leading block of components.

    CPEV_h projects X onto an orthonormal basis of the span of the first h
    scores X w_1 .. X w_h (adjusted weights, original variable space), so
    non-orthogonal sparse scores are not double counted:
    CPEV_h = ||Q_h^T X||_F^2 / ||X||_F^2, PEV_h = CPEV_h - CPEV_{h-1}.
    """
    total = float(np.sum(X * X))
    if total == 0.0:
        raise ValueError("X has zero norm")
    T = X @ W
    H = T.shape[1]
    cpev = np.zeros(H)
    for h in range(1, H + 1):
        Q, R = np.linalg.qr(T[:, :h])
        keep = np.abs(np.diag(R)) > 1e-12 * max(1.0, float(np.max(np.abs(T[:, :h]))))
        Qh = Q[:, keep]
        cpev[h - 1] = float(np.sum((Qh.T @ X) ** 2)) / total
    pev = np.diff(cpev, prepend=0.0)
    return pev, cpev


@dataclass
class Q2Report:
    """Cross-validated predictive power per component: 1 - PRESS_h / RSS_{h-1},
    with the total aggregating PRESS and RSS across responses before the
    ratio. ``significant`` marks components clearing the conventional
    threshold; informational only."""

    total: np.ndarray
    per_response: np.ndarray
    threshold: float = Q2_SIGNIFICANCE

    @property
    def significant(self) -> np.ndarray:
        return self.total >= self.threshold


def _fold_indices(n: int, folds: int, rng: np.random.Generator) -> list[np.ndarray]:
    if folds < 2 or folds > n:
        raise ValueError(f"folds={folds} out of range 2..{n}")
    perm = rng.permutation(n)
    return [np.sort(chunk) for chunk in np.array_split(perm, folds)]


def _refit_fixed(
    Xtr: np.ndarray,
    Ytr: np.ndarray,
    model: str,
    supports: list[Subset],
    mode: str,
    e_denominator: str,
    seed: int = 0,
) -> list[ComponentState]:
    comps = []
    Xh, Yh = Xtr, Ytr
    for h, subset in enumerate(supports, start=1):
        comp = _build_component(
            Xh, Yh, model, subset, h, mode, e_denominator, seed=seed
        )
        Xh, Yh = deflate(Xh, Yh, comp, mode, model)
        comps.append(comp)
    return comps


def q2(
    X: np.ndarray,
    Y: np.ndarray,
    model: str = "pls2",
    H: int = 1,
    folds: int = 5,
    seed: int = 0,
    supports: list[Subset] | None = None,
    e_denominator: str = "psi-xi",
) -> Q2Report:
    """v-fold PRESS/RSS criterion for regression-mode models.

    ``supports`` fixes the per-component subsets (e.g. those a fitted
    sparse model chose); by default all components use the full variable
    set. Folds with a constant response column are refused.
    """
    if model not in ("pls1", "pls2"):
        raise ValueError("the PRESS/RSS criterion applies to regression-mode PLS")
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None]
    n, p = X.shape
    q_dim = Y.shape[1]
    if supports is None:
        supports = [Subset(bits=(1,) * p)] * H
    if len(supports) != H:
        raise ValueError(f"need {H} supports, got {len(supports)}")
    rng = np.random.default_rng(seed)
    fold_idx = _fold_indices(n, folds, rng)

    # Full-data residual sums per component count, for the RSS denominators.
    Xc = X - X.mean(axis=0)
    Yc = Y - Y.mean(axis=0)
    rss = np.zeros((H + 1, q_dim))
    rss[0] = np.sum(Yc * Yc, axis=0)
    comps = _refit_fixed(Xc, Yc, model, supports, "regression", e_denominator, seed)
    for h in range(1, H + 1):
        beta = regression_coefficients(comps[:h])
        resid = Yc - Xc @ beta
        rss[h] = np.sum(resid * resid, axis=0)

    press = np.zeros((H, q_dim))
    for val in fold_idx:
        tr = np.setdiff1d(np.arange(n), val)
        Xtr_raw, Ytr_raw = X[tr], Y[tr]
        if np.any(Ytr_raw.std(axis=0) == 0.0):
            raise DegenerateLoadingError("a training fold has a constant response")
        xm, ym = Xtr_raw.mean(axis=0), Ytr_raw.mean(axis=0)
        Xtr, Ytr = Xtr_raw - xm, Ytr_raw - ym
        fold_comps = _refit_fixed(
            Xtr, Ytr, model, supports, "regression", e_denominator, seed
        )
        Xval = X[val] - xm
        for h in range(1, H + 1):
            beta = regression_coefficients(fold_comps[:h])
            err = Y[val] - (Xval @ beta + ym)
            press[h - 1] += np.sum(err * err, axis=0)

    per_response = 1.0 - press / rss[:-1]
    total = 1.0 - press.sum(axis=1) / rss[:-1].sum(axis=1)
    return Q2Report(total=total, per_response=per_response)


def _msep(Y_hat: np.ndarray, Y_obs: np.ndarray) -> float:
    diff = Y_hat - Y_obs
    return float(np.mean(diff * diff))


def _pick_subset_size(
    strategy: PickStrategy,
    path: SolutionPath,
    comps: list[ComponentState],
    X0: np.ndarray,
    Y0: np.ndarray | None,
    Xh: np.ndarray,
    Yh: np.ndarray | None,
    model: str,
    mode: str | None,
    e_denominator: str,
    h: int,
    seed: int,
    test: tuple[np.ndarray, np.ndarray] | None,
    x_means: np.ndarray,
    y_means: np.ndarray | None,
) -> int:
    K = path.K
    if strategy.kind == "fixed-k":
        return min(strategy.k, K)

    if strategy.kind == "cpev-drop":
        cpevs = np.zeros(K + 1)
        for k in range(1, K + 1):
            trial = _build_component(
                Xh, Yh, model, path.buckets[k].best, h, mode, e_denominator, seed
            )
            W = adjusted_weights(X0, comps + [trial])
            cpevs[k] = pev_cpev(X0, W)[1][-1]
        floor = (1.0 - strategy.fraction) * cpevs[K]
        for k in range(1, K + 1):
            if cpevs[k] >= floor:
                return k
        return K

    supports_prev = [c.subset for c in comps]

    if strategy.kind == "min-msep":
        if mode != "regression":
            raise ValueError("min-msep requires regression mode")
        scores = np.full(K + 1, np.inf)
        if test is not None:
            X_test, Y_test = test
            for k in range(1, K + 1):
                trial = _build_component(
                    Xh, Yh, model, path.buckets[k].best, h, mode, e_denominator, seed
                )
                beta = regression_coefficients(comps + [trial])
                pred = (np.asarray(X_test, dtype=float) - x_means) @ beta + y_means
                scores[k] = _msep(pred, np.asarray(Y_test, dtype=float))
        else:
            n = X0.shape[0]
            rng = np.random.default_rng(seed)
            folds = _fold_indices(n, strategy.folds, rng)
            Xraw = X0 + x_means
            Yraw = Y0 + y_means
            for k in range(1, K + 1):
                supports = supports_prev + [path.buckets[k].best]
                err = 0.0
                count = 0
                for val in folds:
                    tr = np.setdiff1d(np.arange(n), val)
                    xm, ym = Xraw[tr].mean(axis=0), Yraw[tr].mean(axis=0)
                    fold_comps = _refit_fixed(
                        Xraw[tr] - xm, Yraw[tr] - ym, model, supports,
                        mode, e_denominator, seed,
                    )
                    beta = regression_coefficients(fold_comps)
                    pred = (Xraw[val] - xm) @ beta + ym
                    err += float(np.sum((pred - Yraw[val]) ** 2))
                    count += pred.size
                scores[k] = err / count
        return int(np.argmin(scores[1:])) + 1

    if strategy.kind == "max-cor":
        n = X0.shape[0]
        rng = np.random.default_rng(seed)
        folds = _fold_indices(n, strategy.folds, rng)
        Xraw = X0 + x_means
        Yraw = Y0 + y_means
        scores = np.full(K + 1, -np.inf)
        for k in range(1, K + 1):
            supports = supports_prev + [path.buckets[k].best]
            cors = []
            for val in folds:
                tr = np.setdiff1d(np.arange(n), val)
                xm, ym = Xraw[tr].mean(axis=0), Yraw[tr].mean(axis=0)
                fold_comps = _refit_fixed(
                    Xraw[tr] - xm, Yraw[tr] - ym, model, supports,
                    mode, e_denominator, seed,
                )
                Xv, Yv = Xraw[val] - xm, Yraw[val] - ym
                # Deflate held-out rows with the column-space operators.
                for comp in fold_comps[:-1]:
                    xi_v = Xv @ comp.u
                    if mode == "regression":
                        Yv = Yv - np.outer(xi_v, comp.d)
                    else:
                        Yv = Yv - np.outer(Yv @ comp.v, comp.e)
                    Xv = Xv - np.outer(xi_v, comp.c)
                last = fold_comps[-1]
                xi_v = Xv @ last.u
                psi_v = Yv @ last.v
                sx, sy = float(np.std(xi_v)), float(np.std(psi_v))
                if sx > 0.0 and sy > 0.0:
                    cors.append(abs(float(np.corrcoef(xi_v, psi_v)[0, 1])))
            scores[k] = np.mean(cors) if cors else -np.inf
        return int(np.argmax(scores[1:])) + 1

    raise ValueError(f"unknown pick strategy {strategy.kind!r}")


def fit(
    X: np.ndarray,
    Y: np.ndarray | None = None,
    model: str = "pls2",
    H: int = 1,
    strategy: PickStrategy | None = None,
    mode: str = "regression",
    grid_cfg: GridConfig | None = None,
    solver_cfg: SolverConfig | None = None,
    center: bool = True,
    test: tuple[np.ndarray, np.ndarray] | None = None,
    e_denominator: str = "psi-xi",
    keep_paths: bool = False,
    threads: int = 1,
) -> FittedModel:
    """Fit H components, each from a fresh solution path on the deflated
    data, picking one subset per component with ``strategy``.

    With center=True (default) the training column means are removed here
    and stored so predictions accept raw inputs. ``test`` supplies a raw
    holdout pair for the min-msep strategy. ``e_denominator`` selects the
    canonical-mode deflation denominator: "psi-xi" (as tabulated) or the
    conventional "psi-psi".
    """
    if H < 1:
        raise ValueError("H must be at least 1")
    if strategy is None:
        raise ValueError("a pick strategy is required")
    if model == "pca":
        mode = None
    elif mode not in ("regression", "canonical"):
        raise ValueError(f"unknown mode {mode!r}")
    X = np.asarray(X, dtype=float)
    n, p = X.shape
    x_means = X.mean(axis=0) if center else np.zeros(p)
    X0 = X - x_means
    y_means = None
    Y0 = None
    if model != "pca":
        if Y is None:
            raise DimensionError(f"{model} requires a response")
        Y = np.asarray(Y, dtype=float)
        if Y.ndim == 1:
            Y = Y[:, None]
        if Y.shape[0] != n:
            raise DimensionError(f"X has {n} rows but Y has {Y.shape[0]}")
        y_means = Y.mean(axis=0) if center else np.zeros(Y.shape[1])
        Y0 = Y - y_means
    if grid_cfg is None:
        grid_cfg = GridConfig(K=p)
    if solver_cfg is None:
        solver_cfg = SolverConfig()

    comps: list[ComponentState] = []
    paths: list[SolutionPath] = []
    Xh, Yh = X0, Y0
    for h in range(1, H + 1):
        try:
            path = dynamic_grid(Xh, Yh, model, grid_cfg, solver_cfg, threads=threads)
            k = _pick_subset_size(
                strategy, path, comps, X0, Y0, Xh, Yh, model, mode,
                e_denominator, h, solver_cfg.seed, test, x_means, y_means,
            )
            bucket = path.buckets[k]
            comp = _build_component(
                Xh, Yh, model, bucket.best, h, mode, e_denominator,
                seed=solver_cfg.seed, objective=bucket.best_value,
            )
            Xh, Yh = deflate(Xh, Yh, comp, mode, model)
        except (DegenerateLoadingError, DegenerateScoreError) as exc:
            raise type(exc)(f"component {h}: {exc}") from exc
        comps.append(comp)
        if keep_paths:
            paths.append(path)

    W = adjusted_weights(X0, comps)
    routes_agree = None
    try:
        W_solve = _solve_weights(comps)
        routes_agree = bool(np.max(np.abs(W - W_solve)) <= 1e-8 * max(1.0, np.max(np.abs(W))))
    except SingularMatrixError:
        routes_agree = None
    T = X0 @ W
    beta = None
    if model != "pca" and mode == "regression":
        beta = regression_coefficients(comps)
    pev, cpev = pev_cpev(X0, W)
    return FittedModel(
        model=model, mode=mode, H=H, x_means=x_means, y_means=y_means,
        components=comps, W=W, T=T, beta=beta, pev=pev, cpev=cpev,
        paths=paths, weight_routes_agree=routes_agree,
    )


def model_to_dict(fit_result: FittedModel) -> dict:
    return {
        "model": fit_result.model,
        "mode": fit_result.mode,
        "H": fit_result.H,
        "column_means": [float(v) for v in fit_result.x_means],
        "components": [
            {
                "h": c.h,
                "k": c.subset.size,
                "support": [int(j) for j in c.subset.indices],
                "u": [float(v) for v in c.u],
                "v": None if c.v is None else [float(v) for v in c.v],
                "w": [float(v) for v in c.w],
                "objective": None if c.objective is None else float(c.objective),
            }
            for c in fit_result.components
        ],
        "beta": None
        if fit_result.beta is None
        else [[float(v) for v in row] for row in fit_result.beta],
        "pev": [float(v) for v in fit_result.pev],
        "cpev": [float(v) for v in fit_result.cpev],
    }


def model_to_json(fit_result: FittedModel) -> str:
    return json.dumps(model_to_dict(fit_result), indent=2)
