import math

import numpy as np
import pytest

from acsearch.acs import AcsConfig, run_acs
from acsearch.dictionary import pair_indices
from acsearch.metrics import (
    ToneSet,
    default_epsilon,
    extract_tones,
    normalized_rmse,
    support_err,
    tones_from_scene,
    tones_within_epsilon,
)
from acsearch.acs import RecoveryResult
from acsearch.signals import gaussian_sensing, generate_scene, measure


def make_result(qn, coeff_pairs, theta=None, n=None, kappa=0.1):
    """Assemble a minimal RecoveryResult carrying given (freq-index, c, s) pairs."""
    n = n or qn
    x = np.zeros(qn)
    th = np.zeros(qn // 2) if theta is None else theta
    for k, c, s in coeff_pairs:
        c_idx, s_idx = pair_indices(k, qn)
        x[c_idx], x[s_idx] = c, s
    return RecoveryResult(
        method="acs", n_samples=n, q_factor=qn / n, x_hat=x, theta_hat=th,
        z_hat=np.zeros(n), kappa=kappa,
    )


def test_normalized_rmse_trivial_cases():
    z = np.array([1.0, -2.0, 3.0])
    assert normalized_rmse(z, z) == 0.0
    assert normalized_rmse(z, np.zeros(3)) == 1.0
    assert normalized_rmse(z, 2 * z) == pytest.approx(1.0, rel=1e-14)


def test_normalized_rmse_permutation_invariance():
    rng = np.random.default_rng(0)
    z = rng.standard_normal(50)
    zh = rng.standard_normal(50)
    perm = rng.permutation(50)
    assert normalized_rmse(z, zh) == pytest.approx(normalized_rmse(z[perm], zh[perm]), rel=1e-14)


def test_normalized_rmse_errors():
    with pytest.raises(ValueError):
        normalized_rmse(np.zeros(4), np.ones(4))
    with pytest.raises(ValueError):
        normalized_rmse(np.ones(4), np.ones(5))


def test_extract_tones_single_pair():
    theta = np.zeros(128)
    theta[9] = 0.001
    res = make_result(256, [(9, 1.0, 0.0)], theta=theta)
    ts = extract_tones(res)
    assert len(ts) == 1
    f, x = ts.tones[0]
    assert f == pytest.approx(9 / 256 + 0.001, abs=1e-15)
    assert x == 1.0 + 0.0j


def test_extract_tones_empty():
    res = make_result(256, [])
    assert len(extract_tones(res)) == 0


def test_extract_tones_respects_kappa():
    res = make_result(256, [(3, 1.0, 0.0), (8, 0.05, 0.0)], kappa=0.5)
    assert [t[0] for t in extract_tones(res).tones] == [3 / 256]
    assert len(extract_tones(res, kappa=0.01).tones) == 2


def test_scene_tone_complex_convention():
    # true tone with phase phi carries complex amplitude exp(i phi); fitting its
    # clean signal exactly must therefore give err(truth, truth-like-fit) = 0
    scene = generate_scene(64, 4, 1.0, seed=3, exclude_dc_bin=True)
    truth = tones_from_scene(scene)
    pairs = []
    theta = np.zeros(32)
    for t in scene.tones:
        pairs.append((t.bin_index, math.cos(t.phase), math.sin(t.phase)))
        theta[t.bin_index] = t.theta
    fit = extract_tones(make_result(64, pairs, theta=theta, kappa=0.5))
    assert support_err(truth, fit) <= 1e-12
    for (f_true, x_true), (f_fit, x_fit) in zip(sorted(truth.tones), sorted(fit.tones)):
        assert f_fit == pytest.approx(f_true, abs=1e-15)
        assert abs(x_fit - x_true) <= 1e-12


def test_support_err_trivial_cases():
    truth = ToneSet(tones=[(0.1, 1 + 0j), (0.2, 1j)], epsilon=0.001)
    assert support_err(truth, truth) == 0.0
    empty = ToneSet(tones=[])
    assert support_err(truth, empty) == pytest.approx(2.0, rel=1e-14)


def test_support_err_split_tone_cancellation():
    truth = ToneSet(tones=[(0.25, 1 + 1j)], epsilon=0.004)
    split = ToneSet(
        tones=[(0.2495, 0.4 + 0.7j), (0.2505, 0.6 + 0.3j)]
    )
    assert support_err(truth, split) <= 1e-15


def test_support_err_ignores_far_spurious_tones():
    truth = ToneSet(tones=[(0.1, 1 + 0j)], epsilon=0.001)
    est = ToneSet(tones=[(0.1, 1 + 0j), (0.4, 5 - 2j)])
    assert support_err(truth, est) == 0.0


def test_support_err_permutation_invariance():
    rng = np.random.default_rng(1)
    truth = ToneSet(
        tones=[(f, complex(a, b)) for f, a, b in rng.random((4, 3))], epsilon=0.01
    )
    est_tones = [(f, complex(a, b)) for f, a, b in rng.random((6, 3))]
    base = support_err(truth, ToneSet(tones=est_tones))
    for _ in range(5):
        rng.shuffle(est_tones)
        assert support_err(truth, ToneSet(tones=list(est_tones))) == pytest.approx(base, rel=1e-14)


def test_support_err_requires_epsilon():
    with pytest.raises(ValueError):
        support_err(ToneSet(tones=[(0.1, 1 + 0j)]), ToneSet(tones=[]))


def test_default_epsilon_is_fifth_of_bin():
    assert default_epsilon(256, 1.0) == pytest.approx(1 / 1280, abs=1e-18)
    assert default_epsilon(256, 4.0) == pytest.approx(1 / 5120, abs=1e-18)


def test_tones_within_epsilon_end_to_end():
    scene = generate_scene(256, 6, 1.0, seed=42)
    a = gaussian_sensing(128, 256, seed=43)
    m = measure(scene, a, 40.0, seed=44)
    res = run_acs(m.y, a, AcsConfig())
    truth = tones_from_scene(scene)
    assert tones_within_epsilon(truth, extract_tones(res))
