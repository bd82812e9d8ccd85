"""Exhaustive best-subset search for small p, and numerical certification
of the corner-optimality and penalty-realizability properties that make
the relaxed problem equivalent to the discrete one.

The exhaustive enumerator is the reference the heuristic path is judged
against, so it shares no eigen-solver with the rest of the package:
corner values here come from numpy's dense symmetric eigendecomposition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import DimensionError, SizeGuardError
from .path import Subset

EXHAUSTIVE_P_LIMIT = 25
CHECK_P_LIMIT = 15


@dataclass
class OracleResult:
    """Per-size exact optima: k -> (subset, unpenalized objective)."""

    model: str
    p: int
    per_size: dict[int, tuple[Subset, float]]
    enumerated_count: int


def _top_eig(A: np.ndarray) -> float:
    if A.shape == (1, 1):
        return float(A[0, 0])
    return float(np.linalg.eigvalsh(A)[-1])


def exhaustive_path(
    X: np.ndarray,
    Y: np.ndarray | None,
    model: str,
    max_k: int | None = None,
) -> OracleResult:
    """Enumerate subsets and return the per-size argmin of the corner
    objective. Refuses p above 25 (cost grows as 2^p).

    pls1 walks all subsets in Gray-code order, updating a running sum of
    z_j^2 in O(1) per subset. pls2/pca enumerate combinations per size,
    with one dense eigen-solve on the smaller Gram block per subset.
    Ties keep the lexicographically smallest bits.
    """
    X = np.asarray(X, dtype=float)
    n, p = X.shape
    if p > EXHAUSTIVE_P_LIMIT:
        raise SizeGuardError(
            f"exhaustive search refused for p={p} > {EXHAUSTIVE_P_LIMIT}"
        )
    if max_k is None:
        max_k = p
    if not (1 <= max_k <= p):
        raise DimensionError(f"max_k={max_k} out of range 1..{p}")

    per_size: dict[int, tuple[Subset, float]] = {}

    if model == "pls1":
        y = np.asarray(Y, dtype=float).reshape(-1)
        if y.shape[0] != n:
            raise DimensionError(f"X has {n} rows but y has {y.shape[0]}")
        z2 = ((X.T @ y) / n) ** 2
        best_val = np.full(p + 1, np.inf)
        best_bits = [None] * (p + 1)
        bits = [0] * p
        total = 0.0
        size = 0
        for i in range(1, 1 << p):
            j = (i & -i).bit_length() - 1
            if bits[j]:
                bits[j] = 0
                size -= 1
                total -= z2[j]
            else:
                bits[j] = 1
                size += 1
                total += z2[j]
            value = -total
            if value < best_val[size]:
                best_val[size] = value
                best_bits[size] = tuple(bits)
            elif value == best_val[size] and tuple(bits) < best_bits[size]:
                best_bits[size] = tuple(bits)
        for k in range(1, max_k + 1):
            per_size[k] = (Subset(bits=best_bits[k]), float(best_val[k]))
        return OracleResult(model, p, per_size, enumerated_count=(1 << p) - 1)

    if model == "pls2":
        Y = np.asarray(Y, dtype=float)
        if Y.ndim == 1:
            Y = Y[:, None]
        if Y.shape[0] != n:
            raise DimensionError(f"X has {n} rows but Y has {Y.shape[0]}")
        M = (X.T @ Y) / n
        G = M @ M.T
        q = M.shape[1]
    elif model == "pca":
        if Y is not None:
            raise DimensionError("pca takes no response matrix")
        G = (X.T @ X) / n
        q = None
    else:
        raise ValueError(f"unknown model {model!r}")

    count = 0
    for k in range(1, max_k + 1):
        best_val = np.inf
        best_bits = None
        for idx in combinations(range(p), k):
            count += 1
            ii = list(idx)
            if q is not None and q < k:
                Ms = M[ii, :]
                value = -_top_eig(Ms.T @ Ms)
            else:
                value = -_top_eig(G[np.ix_(ii, ii)])
            if value < best_val:
                best_val = value
                best_bits = Subset.from_indices(p, ii).bits
            elif value == best_val:
                cand = Subset.from_indices(p, ii).bits
                if cand < best_bits:
                    best_bits = cand
        per_size[k] = (Subset(bits=best_bits), float(best_val))
    total_count = count if max_k < p else (1 << p) - 1
    return OracleResult(model, p, per_size, enumerated_count=total_count)


def oracle_to_dict(result: OracleResult) -> dict:
    return {
        "model": result.model,
        "p": result.p,
        "oracle": True,
        "buckets": [
            {
                "k": k,
                "bits": result.per_size[k][0].bitstring(),
                "objective": result.per_size[k][1],
            }
            for k in sorted(result.per_size)
        ],
    }


def oracle_to_json(result: OracleResult) -> str:
    return json.dumps(oracle_to_dict(result), indent=2)


@dataclass
class CornerCheckReport:
    """Failure counts for the four certification checks on one instance.

    interior_dominance: per size k, the exhaustive optimum must not exceed
    the objective at sampled interior points of the slice sum(t) = k.
    monotonicity: the per-size optimal values must be non-increasing.
    increments: their successive drops must be non-increasing.
    breakpoints: at each dual breakpoint penalty, the size-k optimum must
    minimize the penalized objective over all corners.
    """

    p: int
    samples: int
    interior_dominance_failures: int = 0
    monotonicity_failures: int = 0
    increment_failures: int = 0
    breakpoint_failures: int = 0
    per_size_values: list[float] = field(default_factory=list)

    @property
    def total_failures(self) -> int:
        return (
            self.interior_dominance_failures
            + self.monotonicity_failures
            + self.increment_failures
            + self.breakpoint_failures
        )


def _slice_point(p: int, k: int, rng: np.random.Generator) -> np.ndarray:
    # Random interior point of {t in [0,1]^p : sum t = k}; uniformity is
    # not required, only support in the slice.
    if k == 0:
        return np.zeros(p)
    if k == p:
        return np.ones(p)
    if 2 * k > p:
        return 1.0 - _slice_point(p, p - k, rng)
    while True:
        u = rng.uniform(0.0, 1.0, size=p)
        t = k * u / u.sum()
        if np.all(t <= 1.0):
            return t


def check_corner_optimality(
    X: np.ndarray,
    y: np.ndarray,
    samples: int = 200,
    seed: int = 0,
) -> CornerCheckReport:
    """Certify, for a univariate-response instance, that the relaxed
    objective's per-size optima behave as the discrete theory requires.

    Runs the four checks described on CornerCheckReport and counts
    violations beyond a small floating-point slack; a sound implementation
    reports zero failures.
    """
    X = np.asarray(X, dtype=float)
    n, p = X.shape
    if p > CHECK_P_LIMIT:
        raise SizeGuardError(f"corner checks refused for p={p} > {CHECK_P_LIMIT}")
    y = np.asarray(y, dtype=float).reshape(-1)
    z2 = ((X.T @ y) / n) ** 2
    rng = np.random.default_rng(seed)

    # Corner values for every mask, walked in Gray-code order.
    n_masks = 1 << p
    values = np.zeros(n_masks)
    sizes = np.zeros(n_masks, dtype=int)
    bits = [0] * p
    total = 0.0
    size = 0
    best_val = np.zeros(p + 1)
    best_mask = np.zeros(p + 1, dtype=int)
    best_val[1:] = np.inf
    mask = 0
    for i in range(1, n_masks):
        j = (i & -i).bit_length() - 1
        if bits[j]:
            bits[j] = 0
            size -= 1
            total -= z2[j]
            mask &= ~(1 << j)
        else:
            bits[j] = 1
            size += 1
            total += z2[j]
            mask |= 1 << j
        values[mask] = -total
        sizes[mask] = size
        if -total < best_val[size]:
            best_val[size] = -total
            best_mask[size] = mask

    report = CornerCheckReport(p=p, samples=samples)
    report.per_size_values = [float(v) for v in best_val]
    slack = 1e-10 * max(1.0, float(np.max(np.abs(best_val))))

    for k in range(1, p + 1):
        for _ in range(samples):
            t = _slice_point(p, k, rng)
            f_t = -float(np.sum(t * t * z2))
            if best_val[k] > f_t + slack:
                report.interior_dominance_failures += 1

    drops = best_val[:-1] - best_val[1:]
    report.monotonicity_failures = int(np.sum(drops < -slack))
    report.increment_failures = int(np.sum(drops[:-1] < drops[1:] - slack))

    for k in range(1, p + 1):
        lam_k = best_val[k - 1] - best_val[k]
        penalized = values + lam_k * sizes
        if best_val[k] + lam_k * k > float(np.min(penalized)) + slack:
            report.breakpoint_failures += 1

    return report
