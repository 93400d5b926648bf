"""Evaluation measures: normalized reconstruction error and support fidelity.

A recovered coefficient pair (c on the cosine atom, s on the sine atom) at
frequency f is reported as the complex tone c + i*s at f; a ground-truth
tone with phase phi maps to exp(i*phi).  The support-error metric sums, over
true tones, the modulus of the difference between the true complex amplitude
and the total estimated amplitude within a closeness window epsilon
(one fifth of a frequency bin unless overridden).  Estimated tones outside
every window contribute nothing, by definition.
"""

from dataclasses import dataclass

import numpy as np

from .acs import RecoveryResult
from .dictionary import pair_indices
from .signals import HarmonicScene


def default_epsilon(n: int, q: float) -> float:
    """Closeness threshold: 1/5 of a frequency bin."""
    return 1.0 / (5.0 * q * n)


@dataclass
class ToneSet:
    """Frequencies with complex amplitudes, plus the matching window epsilon."""

    tones: list[tuple[float, complex]]
    epsilon: float | None = None

    def __len__(self) -> int:
        return len(self.tones)


def normalized_rmse(z: np.ndarray, z_hat: np.ndarray) -> float:
    """Squared-norm error ratio ||z - z_hat||^2 / ||z||^2."""
    z = np.asarray(z, dtype=float)
    z_hat = np.asarray(z_hat, dtype=float)
    if z.shape != z_hat.shape:
        raise ValueError(f"shape mismatch: {z.shape} vs {z_hat.shape}")
    denom = float(z @ z)
    if denom == 0.0:
        raise ValueError("reference signal is identically zero")
    d = z - z_hat
    return float(d @ d) / denom


def extract_tones(result: RecoveryResult, kappa: float | None = None) -> ToneSet:
    """Collect the recovered tones whose pair magnitude reaches kappa.

    Defaults to the final support threshold of the recovery itself, so the
    metrics see the same support the algorithm did.  Tones are not merged
    here even if they fall within epsilon of each other.
    """
    if kappa is None:
        kappa = result.kappa
    qn = result.x_hat.shape[0]
    tones = []
    for k in range(qn // 2):
        c_idx, s_idx = pair_indices(k, qn)
        c, s = result.x_hat[c_idx], result.x_hat[s_idx]
        if np.hypot(c, s) >= kappa and (c, s) != (0.0, 0.0):
            f = k / qn + float(result.theta_hat[k])
            tones.append((f, complex(c, s)))
    return ToneSet(tones=tones)


def tones_from_scene(scene: HarmonicScene, epsilon: float | None = None) -> ToneSet:
    """Ground-truth tone set of a scene, with the default epsilon attached."""
    if epsilon is None:
        epsilon = default_epsilon(scene.n_samples, scene.q_factor)
    tones = [(t.freq, np.exp(1j * t.phase)) for t in scene.tones]
    return ToneSet(tones=tones, epsilon=epsilon)


def support_err(truth: ToneSet, estimate: ToneSet) -> float:
    """Sum over true tones of |x_i - sum of estimates within epsilon of f_i|."""
    if truth.epsilon is None:
        raise ValueError("truth tone set must carry an epsilon window")
    eps = truth.epsilon
    total = 0.0
    for f_true, x_true in truth.tones:
        matched = sum(x for f, x in estimate.tones if abs(f - f_true) < eps)
        total += abs(x_true - matched)
    return float(total)


def tones_within_epsilon(truth: ToneSet, estimate: ToneSet) -> bool:
    """True when every true tone has at least one estimate within epsilon."""
    if truth.epsilon is None:
        raise ValueError("truth tone set must carry an epsilon window")
    eps = truth.epsilon
    return all(
        any(abs(f - f_true) < eps for f, _ in estimate.tones) for f_true, _ in truth.tones
    )
