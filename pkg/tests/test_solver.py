import numpy as np
import pytest

from subsetpath.errors import SolverAbort
from subsetpath.linalg import center_columns
from subsetpath.objective import make_context
from subsetpath.solver import SolverConfig, minimize


def pls1_context(z_target, lam, n=2):
    # Identity-like design so z = X^T y / n equals z_target exactly.
    p = len(z_target)
    X = np.zeros((max(n, p), p))
    for j in range(p):
        X[j, j] = 1.0
    y = np.zeros(max(n, p))
    for j in range(p):
        y[j] = z_target[j] * max(n, p)
    return make_context(X, y, "pls1", lam=lam)


class TestMinimize:
    def test_large_penalty_drives_empty_model(self):
        # With lam > 2 max z_j^2 the stationary point lies outside the
        # hypercube and the objective increases in every coordinate, so
        # descent from 0.5 must land on the empty corner.
        z = np.array([0.5, 1.0, 0.8])
        lam = 2.0 * np.max(z**2) * 1.1
        ctx = pls1_context(z, lam)
        grad_at_full = lam - 2.0 * z**2
        assert np.all(grad_at_full > 0.0)  # increasing through the cube
        run = minimize(ctx, SolverConfig())
        assert np.all(run.terminal_t < 1e-3)

    def test_zero_penalty_drives_full_model(self):
        ctx = pls1_context(np.array([0.5, 1.0, 0.8]), lam=0.0)
        run = minimize(ctx, SolverConfig())
        assert np.all(run.terminal_t > 1.0 - 1e-3)

    def test_three_penalties_reach_three_corners(self):
        # p = 2 with |z2| > |z1|: small, middling and large penalties
        # converge to subsets of sizes 2, 1 and 0 respectively.
        ctx = pls1_context(np.array([0.5, 1.0]), lam=0.0)
        terminal = {}
        for lam in (0.1, 0.6, 3.0):
            run = minimize(ctx.with_lambda(lam), SolverConfig())
            terminal[lam] = (run.terminal_t > 0.5).astype(int)
        assert terminal[0.1].tolist() == [1, 1]
        assert terminal[0.6].tolist() == [0, 1]
        assert terminal[3.0].tolist() == [0, 0]

    @pytest.mark.parametrize("model", ["pls1", "pls2", "pca"])
    def test_trace_stays_in_cube(self, model):
        rng = np.random.default_rng(10)
        X = center_columns(rng.standard_normal((20, 5)))
        Y = center_columns(rng.standard_normal((20, 3)))
        y = rng.standard_normal(20)
        if model == "pls1":
            ctx = make_context(X, y, model, lam=0.05)
        elif model == "pls2":
            ctx = make_context(X, Y, model, lam=0.05)
        else:
            ctx = make_context(X, model="pca", lam=0.05)
        run = minimize(ctx, SolverConfig(max_iter=200))
        for point in run.trace:
            assert np.all(point.t >= 0.0) and np.all(point.t <= 1.0)
        np.testing.assert_array_equal(run.terminal_t, run.trace[-1].t)

    def test_plain_gd_objective_non_increasing(self):
        # Coordinatewise Lipschitz constant of the gradient is 2 z_j^2;
        # a step below 1/L makes descent monotone.
        z = np.array([0.5, 1.0, 0.8, 0.3])
        ctx = pls1_context(z, lam=0.1)
        lr = 0.4 / (2.0 * np.max(z**2))
        run = minimize(ctx, SolverConfig(method="gd", learning_rate=lr))
        objs = [p.objective for p in run.trace]
        diffs = np.diff(objs)
        assert np.all(diffs <= 1e-12)

    def test_determinism(self):
        rng = np.random.default_rng(2)
        X = center_columns(rng.standard_normal((25, 6)))
        Y = center_columns(rng.standard_normal((25, 4)))
        ctx = make_context(X, Y, "pls2", lam=0.1)
        cfg = SolverConfig(seed=123)
        run1 = minimize(ctx, cfg)
        run2 = minimize(ctx, cfg)
        assert run1.iterations == run2.iterations
        assert run1.converged == run2.converged
        for a, b in zip(run1.trace, run2.trace):
            np.testing.assert_array_equal(a.t, b.t)
            assert a.objective == b.objective

    def test_non_finite_abort_names_iteration(self):
        X = np.array([[1e200], [-1e200]])
        y = np.array([1e200, -1e200])
        with np.errstate(over="ignore"):
            ctx = make_context(X, y, "pls1", lam=0.0)  # z overflows to inf
            with pytest.raises(SolverAbort) as exc:
                minimize(ctx, SolverConfig())
        assert "iteration 0" in str(exc.value)

    def test_t_init_must_be_interior(self):
        ctx = pls1_context(np.array([0.5, 1.0]), lam=0.0)
        with pytest.raises(ValueError):
            minimize(ctx, SolverConfig(t_init=0.0))
        with pytest.raises(ValueError):
            minimize(ctx, SolverConfig(t_init=np.array([0.5, 1.0])))

    def test_max_iter_cap_reported(self):
        ctx = pls1_context(np.array([0.5, 1.0]), lam=0.0)
        run = minimize(ctx, SolverConfig(max_iter=5))
        assert not run.converged
        assert run.iterations == 5
        assert len(run.trace) == 6  # initial point plus five updates


class TestSolverConfig:
    def test_rejects_bad_method(self):
        with pytest.raises(ValueError):
            SolverConfig(method="newton")

    def test_rejects_bad_betas(self):
        with pytest.raises(ValueError):
            SolverConfig(beta1=1.5)

    def test_rejects_bad_patience(self):
        with pytest.raises(ValueError):
            SolverConfig(patience=0)
