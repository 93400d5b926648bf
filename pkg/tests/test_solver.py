import numpy as np
import pytest

from acsearch.dictionary import build_dictionary
from acsearch.signals import gaussian_sensing, generate_scene, measure
from acsearch.solver import L1Problem, compute_lambda, optimality_gap, solve_l2l1


def soft_threshold(v, t):
    return np.sign(v) * np.maximum(np.abs(v) - t, 0.0)


def test_compute_lambda_trivial():
    design = np.eye(4)
    assert compute_lambda(design, np.zeros(4), 0.5) == 0.0
    e1 = np.zeros(4)
    e1[0] = 1.0
    assert compute_lambda(design, e1, 0.1) == pytest.approx(0.1, abs=1e-15)


def test_compute_lambda_matches_columnwise_oracle():
    rng = np.random.default_rng(0)
    design = rng.standard_normal((8, 16))
    y = rng.standard_normal(8)
    brute = max(abs(float(design[:, k] @ y)) for k in range(16))
    assert compute_lambda(design, y, 0.1) == pytest.approx(0.1 * brute, rel=1e-14)


def test_compute_lambda_validation():
    with pytest.raises(ValueError):
        compute_lambda(np.eye(2), np.zeros(2), 0.0)
    with pytest.raises(ValueError):
        compute_lambda(np.zeros((0, 0)), np.zeros(0), 0.1)


def test_large_lambda_returns_exact_zero():
    rng = np.random.default_rng(1)
    design = rng.standard_normal((10, 20))
    y = rng.standard_normal(10)
    lam = 2.0 * float(np.max(np.abs(design.T @ y))) + 1.0
    rep = solve_l2l1(L1Problem(design, y, lam))
    assert np.all(rep.x == 0.0)
    assert rep.converged


def test_orthonormal_design_soft_threshold_closed_form():
    rng = np.random.default_rng(2)
    q, _ = np.linalg.qr(rng.standard_normal((30, 12)))
    y = rng.standard_normal(30)
    lam = 0.4
    rep = solve_l2l1(L1Problem(q, y, lam), tol=1e-14, max_iter=5000)
    expected = soft_threshold(q.T @ y, lam / 2.0)
    np.testing.assert_allclose(rep.x, expected, atol=1e-6)


def test_monotone_objective_descent():
    rng = np.random.default_rng(3)
    design = rng.standard_normal((40, 80))
    y = rng.standard_normal(40)
    rep = solve_l2l1(L1Problem(design, y, 0.5), tol=1e-12, max_iter=500)
    trace = np.array(rep.objective_trace)
    assert np.all(np.diff(trace) <= 1e-12 * np.maximum(trace[:-1], 1.0))


def test_objective_not_above_init():
    rng = np.random.default_rng(4)
    design = rng.standard_normal((20, 50))
    y = rng.standard_normal(20)
    problem = L1Problem(design, y, 1.0)
    init = rng.standard_normal(50)
    rep = solve_l2l1(problem, init=init, tol=1e-10, max_iter=300)
    assert rep.objective <= problem.objective(init) + 1e-12


def test_report_objective_consistent():
    rng = np.random.default_rng(5)
    design = rng.standard_normal((25, 40))
    y = rng.standard_normal(25)
    problem = L1Problem(design, y, 0.7)
    rep = solve_l2l1(problem)
    assert rep.objective == pytest.approx(problem.objective(rep.x), rel=1e-10)


def test_optimality_certificate():
    rng = np.random.default_rng(6)
    design = rng.standard_normal((60, 20))
    y = rng.standard_normal(60)
    lam = compute_lambda(design, y, 0.2)
    rep = solve_l2l1(L1Problem(design, y, lam), tol=1e-14, max_iter=20000)
    gap = optimality_gap(L1Problem(design, y, lam), rep.x, zero_tol=1e-12)
    assert gap <= 1e-4 * lam


def test_column_permutation_invariance():
    rng = np.random.default_rng(7)
    design = rng.standard_normal((50, 20))
    y = rng.standard_normal(50)
    lam = compute_lambda(design, y, 0.3)
    perm = rng.permutation(20)
    rep = solve_l2l1(L1Problem(design, y, lam), tol=1e-14, max_iter=20000)
    rep_p = solve_l2l1(L1Problem(design[:, perm], y, lam), tol=1e-14, max_iter=20000)
    np.testing.assert_allclose(rep_p.x, rep.x[perm], atol=1e-8)


def test_on_grid_scene_support_recovery():
    # noiseless on-grid scene: thresholded support must be the true cosine bins
    scene = generate_scene(256, 6, 1.0, seed=30, on_grid=True, zero_phase=True)
    a = gaussian_sensing(128, 256, seed=31)
    m = measure(scene, a, np.inf, seed=0)
    d = build_dictionary(256, 1.0)
    design = a.matrix @ d.atoms
    lam = compute_lambda(design, m.y, 0.1)
    rep = solve_l2l1(L1Problem(design, m.y, lam))
    kappa = 0.1 * float(np.linalg.norm(rep.x))
    support = set(np.nonzero(np.abs(rep.x) >= kappa)[0].tolist())
    true_bins = {t.bin_index for t in scene.tones}
    assert support == true_bins
    # oracle: least squares on the true support leaves essentially no residual
    cols = design[:, sorted(true_bins)]
    coef, *_ = np.linalg.lstsq(cols, m.y, rcond=None)
    assert np.linalg.norm(m.y - cols @ coef) <= 1e-9 * np.linalg.norm(m.y)


def test_nonfinite_inputs_rejected():
    design = np.eye(3)
    y = np.array([1.0, np.nan, 0.0])
    with pytest.raises(ValueError):
        solve_l2l1(L1Problem(design, y, 0.1))


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        L1Problem(np.eye(3), np.zeros(4), 0.1)
    with pytest.raises(ValueError):
        L1Problem(np.eye(3), np.zeros(3), -1.0)
