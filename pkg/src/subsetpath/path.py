"""Subset extraction from solver traces and the dynamic penalty grid.

A single solver run visits a trajectory of points t; every visited point
contributes, for each k up to K, the subset holding its k largest
coordinates. Buckets collect those candidates per size and keep the one
with the lowest unpenalized corner objective. The dynamic grid drives the
solver over a data-dependent schedule of penalty values so that terminal
subsets cover all sizes 1..K.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import SolverAbort
from .objective import ObjectiveContext, corner_objective, lambda_max, make_context
from .solver import SolverConfig, SolverRun, minimize


@dataclass(frozen=True, order=True)
class Subset:
    """A binary selection over the p columns, hashable and totally ordered
    (lexicographically on bits) so ties break deterministically."""

    bits: tuple[int, ...]

    @classmethod
    def from_indices(cls, p: int, indices) -> "Subset":
        bits = [0] * p
        for j in indices:
            bits[int(j)] = 1
        return cls(bits=tuple(bits))

    @classmethod
    def from_bitstring(cls, s: str) -> "Subset":
        if not set(s) <= {"0", "1"}:
            raise ValueError(f"bad bit string {s!r}")
        return cls(bits=tuple(int(c) for c in s))

    @property
    def size(self) -> int:
        return sum(self.bits)

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.bits))

    def bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass
class SizeBucket:
    k: int
    candidates: list[Subset] = field(default_factory=list)
    best: Subset | None = None
    best_value: float | None = None


@dataclass(frozen=True)
class GridConfig:
    """L bounds the number of solver calls; rho thresholds terminal t."""

    K: int
    L: int = 50
    rho: float = 0.9

    def __post_init__(self):
        if self.L < 2:
            raise ValueError("grid budget L must be at least 2")
        if self.K < 1:
            raise ValueError("largest subset size K must be at least 1")
        if not (0.0 < self.rho < 1.0):
            raise ValueError("rho must lie in (0, 1)")


@dataclass
class LambdaDiagnostic:
    lam: float
    terminal_size: int
    iterations: int
    converged: bool
    objective: float | None
    failed: bool = False


@dataclass
class SolutionPath:
    model: str
    n: int
    p: int
    q: int
    K: int
    buckets: dict[int, SizeBucket]
    lambda_grid: list[tuple[float, int]]
    diagnostics: list[LambdaDiagnostic] = field(default_factory=list)


def extract_subsets(run: SolverRun, K: int) -> dict[int, list[Subset]]:
    """Per size k = 1..K, the deduplicated subsets of the k largest entries
    of every visited t. Ties sort stably, so the lower index wins."""
    p = run.trace[0].t.shape[0]
    if K > p:
        raise ValueError(f"K={K} exceeds p={p}")
    out: dict[int, list[Subset]] = {k: [] for k in range(1, K + 1)}
    seen_orders: set[tuple[int, ...]] = set()
    seen: dict[int, set[Subset]] = {k: set() for k in range(1, K + 1)}
    for point in run.trace:
        order = tuple(int(j) for j in np.argsort(-point.t, kind="stable")[:K])
        if order in seen_orders:
            continue
        seen_orders.add(order)
        for k in range(1, K + 1):
            s = Subset.from_indices(p, order[:k])
            if s not in seen[k]:
                seen[k].add(s)
                out[k].append(s)
    return out


def select_best(
    candidates: list[Subset],
    ctx0: ObjectiveContext,
    cache: dict[tuple[int, ...], float] | None = None,
) -> tuple[Subset, float]:
    """Candidate with the lowest unpenalized corner objective; ties break
    lexicographically on bits."""
    if not candidates:
        raise ValueError("empty candidate set")
    best = None
    best_value = np.inf
    for s in candidates:
        if cache is not None and s.bits in cache:
            value = cache[s.bits]
        else:
            value = corner_objective(ctx0, s.bits)
            if cache is not None:
                cache[s.bits] = value
        if value < best_value or (value == best_value and (best is None or s < best)):
            best, best_value = s, value
    return best, best_value


def terminal_subset(t: np.ndarray, rho: float) -> Subset:
    """Threshold the terminal point: bit j is set iff t_j > rho (strict)."""
    if not (0.0 < rho < 1.0):
        raise ValueError("rho must lie in (0, 1)")
    return Subset(bits=tuple(int(b) for b in (np.asarray(t) > rho)))


def path_objective_curve(path: SolutionPath) -> list[tuple[int, float]]:
    """(k, best corner objective) for k = 1..K."""
    return [(k, path.buckets[k].best_value) for k in sorted(path.buckets)]


def dynamic_grid(
    X: np.ndarray,
    Y: np.ndarray | None,
    model: str,
    grid_cfg: GridConfig,
    solver_cfg: SolverConfig | None = None,
    threads: int = 1,
) -> SolutionPath:
    """Build the full solution path with a data-driven penalty schedule.

    The schedule starts at lambda_max (where the terminal subset is empty)
    and halves until the terminal subset reaches size K or the budget L is
    spent; remaining budget bisects adjacent penalties whose terminal sizes
    differ by more than one, sweeping left to right and re-sweeping until
    the budget runs out or no gap remains. All evaluations, the lambda_max
    one included, count against L.

    Every successful run feeds its whole trace into the size buckets, so
    buckets are filled for all k = 1..K as soon as one run succeeds. A
    penalty whose run aborts contributes nothing but the grid continues;
    if every run aborts, SolverAbort is raised.
    """
    if solver_cfg is None:
        solver_cfg = SolverConfig()
    ctx0 = make_context(X, Y, model=model, lam=0.0)
    if grid_cfg.K > ctx0.p:
        raise ValueError(f"K={grid_cfg.K} exceeds p={ctx0.p}")
    try:
        lam_top = lambda_max(ctx0)
    except ValueError as exc:
        if "non-finite" in str(exc):
            raise SolverAbort(f"cannot start the grid: {exc}") from exc
        raise

    cache: dict[tuple[int, ...], float] = {}
    buckets = {k: SizeBucket(k=k) for k in range(1, grid_cfg.K + 1)}
    bucket_seen: dict[int, set[Subset]] = {k: set() for k in buckets}
    grid_entries: list[tuple[float, int]] = []
    diagnostics: list[LambdaDiagnostic] = []
    runs: list[tuple[float, SolverRun]] = []

    def run_one(lam: float) -> tuple[float, SolverRun | None, SolverAbort | None]:
        try:
            return lam, minimize(ctx0.with_lambda(lam), solver_cfg), None
        except SolverAbort as exc:
            return lam, None, exc

    def absorb(lam: float, run: SolverRun | None, err: SolverAbort | None) -> int:
        if run is None:
            diagnostics.append(
                LambdaDiagnostic(lam, -1, err.iteration or 0, False, None, failed=True)
            )
            return -1
        k_lam = terminal_subset(run.terminal_t, grid_cfg.rho).size
        grid_entries.append((lam, k_lam))
        diagnostics.append(
            LambdaDiagnostic(
                lam, k_lam, run.iterations, run.converged, run.trace[-1].objective
            )
        )
        runs.append((lam, run))
        for k, subs in extract_subsets(run, grid_cfg.K).items():
            for s in subs:
                if s not in bucket_seen[k]:
                    bucket_seen[k].add(s)
                    buckets[k].candidates.append(s)
        return k_lam

    # Step 1: from lambda_max (whose terminal subset is empty), halve until
    # the terminal size reaches K or the budget is spent.
    absorb(*run_one(lam_top))
    evals = 1
    ell = 0
    k_lam = 0
    while evals < grid_cfg.L and k_lam < grid_cfg.K:
        ell += 1
        evals += 1
        k_lam = absorb(*run_one(lam_top / 2.0**ell))
    budget = grid_cfg.L - evals

    # Step 2: bisect terminal-size gaps, left to right, re-sweeping.
    while budget > 0:
        entries = sorted(grid_entries)
        mids = []
        for (lam_lo, k_lo), (lam_hi, k_hi) in zip(entries, entries[1:]):
            if k_lo > k_hi + 1:
                mids.append((lam_lo + lam_hi) / 2.0)
            if len(mids) == budget:
                break
        if not mids:
            break
        budget -= len(mids)
        if threads > 1 and len(mids) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(run_one, mids))
        else:
            results = [run_one(lam) for lam in mids]
        for res in results:
            absorb(*res)

    if not runs:
        raise SolverAbort("no penalty value produced a successful run")

    for k, bucket in buckets.items():
        if not bucket.candidates:
            # Cannot happen when a run succeeded (traces seed every size),
            # but the output contract promises all sizes 1..K.
            fallback = min(runs, key=lambda lr: lr[1].trace[-1].objective)[1]
            order = np.argsort(-fallback.terminal_t, kind="stable")[:k]
            bucket.candidates.append(Subset.from_indices(ctx0.p, order))
        bucket.best, bucket.best_value = select_best(bucket.candidates, ctx0, cache)

    return SolutionPath(
        model=model,
        n=ctx0.n,
        p=ctx0.p,
        q=ctx0.q,
        K=grid_cfg.K,
        buckets=buckets,
        lambda_grid=sorted(grid_entries, reverse=True),
        diagnostics=diagnostics,
    )


def path_to_dict(path: SolutionPath) -> dict:
    """JSON document for a solution path; bits strings follow the input
    column order."""
    return {
        "model": path.model,
        "n": path.n,
        "p": path.p,
        "q": path.q,
        "K": path.K,
        "buckets": [
            {
                "k": k,
                "bits": path.buckets[k].best.bitstring(),
                "objective": path.buckets[k].best_value,
            }
            for k in sorted(path.buckets)
        ],
        "lambda_grid": [
            {"lambda": lam, "terminal_size": size} for lam, size in path.lambda_grid
        ],
    }


def path_to_json(path: SolutionPath) -> str:
    return json.dumps(path_to_dict(path), indent=2)
