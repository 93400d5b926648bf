"""Synthetic off-grid harmonic scenes, sensing operators, and measurements.

All generation is a pure function of its parameters and a seed.  Seeds may be
plain integers or ``numpy.random.SeedSequence`` objects; benchmark code
derives per-trial seeds as ``SeedSequence([master, sparsity, trial, role])``
so trials are reproducible in any execution order.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .dictionary import theta_bound

TWO_PI = 2.0 * np.pi


@dataclass
class Tone:
    """One ground-truth sinusoid: amplitude * cos(2*pi*freq*t + phase)."""

    bin_index: int
    theta: float
    freq: float
    phase: float
    amplitude: float


@dataclass
class HarmonicScene:
    """Ground-truth scene: a sparse sum of off-grid cosines sampled at t=0..N-1."""

    n_samples: int
    sparsity: int
    q_factor: float
    tones: list[Tone]
    clean_signal: np.ndarray
    sample_times: np.ndarray = field(repr=False, default=None)

    def rms(self) -> float:
        z = self.clean_signal
        return float(np.sqrt(np.mean(z * z)))


@dataclass
class SensingOperator:
    """M x N measurement matrix, dense Gaussian or binary row-selector."""

    kind: str
    rows: int
    cols: int
    matrix: np.ndarray
    selected_indices: np.ndarray | None = None

    def apply(self, z: np.ndarray) -> np.ndarray:
        return self.matrix @ z


@dataclass
class Measurement:
    """Noisy compressive observation y = A z + eta."""

    y: np.ndarray
    noise_sigma: float
    snr_db: float
    noise: np.ndarray


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def generate_scene(
    n: int,
    s: int,
    q: float = 1.0,
    seed=0,
    exclude_dc_bin: bool = False,
    zero_phase: bool = False,
    on_grid: bool = False,
) -> HarmonicScene:
    """Draw an S-real-coefficient scene (S/2 tones) on the Q-times-finer grid.

    Bins are drawn uniformly without replacement from {0, ..., QN/2 - 1}
    (from {1, ...} when ``exclude_dc_bin``), perturbations uniformly from
    half a bin on either side, phases uniformly from [0, 2*pi).  The flags
    zero out phases / perturbations after drawing, so the same seed yields
    the same bins regardless of flag settings.
    """
    if s % 2 != 0 or s < 2:
        raise ValueError(f"sparsity must be a positive even integer, got {s}")
    qn = q * n
    if abs(qn - round(qn)) > 1e-9 or round(qn) % 2 != 0:
        raise ValueError(f"QN must be an even integer, got Q={q}, N={n}")
    qn = int(round(qn))
    lo = 1 if exclude_dc_bin else 0
    available = qn // 2 - lo
    if s // 2 > available:
        raise ValueError(f"{s // 2} tones do not fit in {available} available bins")

    rng = _rng(seed)
    bins = np.sort(rng.choice(np.arange(lo, qn // 2), size=s // 2, replace=False))
    bound = theta_bound(n, q)
    thetas = rng.uniform(-bound, bound, size=s // 2)
    phases = rng.uniform(0.0, TWO_PI, size=s // 2)
    if on_grid:
        thetas = np.zeros_like(thetas)
    if zero_phase:
        phases = np.zeros_like(phases)

    amplitude = math.sqrt(2.0 / n)
    freqs = bins / qn + thetas
    t = np.arange(n, dtype=float)
    z = amplitude * np.sum(np.cos(TWO_PI * np.outer(freqs, t) + phases[:, None]), axis=0)

    tones = [
        Tone(bin_index=int(b), theta=float(th), freq=float(f), phase=float(ph), amplitude=amplitude)
        for b, th, f, ph in zip(bins, thetas, freqs, phases)
    ]
    return HarmonicScene(
        n_samples=n,
        sparsity=s,
        q_factor=q,
        tones=tones,
        clean_signal=z,
        sample_times=t,
    )


def gaussian_sensing(m: int, n: int, seed=0) -> SensingOperator:
    """Dense M x N operator with i.i.d. standard-normal entries."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    rng = _rng(seed)
    return SensingOperator(kind="gaussian", rows=m, cols=n, matrix=rng.standard_normal((m, n)))


def temporal_subsample_sensing(m: int, n: int, seed=0) -> SensingOperator:
    """Binary selector keeping M of the N time samples, without replacement."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    rng = _rng(seed)
    idx = rng.choice(n, size=m, replace=False)
    matrix = np.zeros((m, n))
    matrix[np.arange(m), idx] = 1.0
    return SensingOperator(
        kind="temporal-subsample", rows=m, cols=n, matrix=matrix, selected_indices=idx
    )


def noise_sigma_for_snr(z: np.ndarray, snr_db: float) -> float:
    """Noise standard deviation giving the requested SNR in dB: rms(z)/10^(SNR/20)."""
    if math.isinf(snr_db):
        return 0.0
    rms = float(np.sqrt(np.mean(z * z)))
    return rms / (10.0 ** (snr_db / 20.0))


def measure(scene: HarmonicScene, a: SensingOperator, snr_db: float, seed=0) -> Measurement:
    """Project the clean signal and add white Gaussian noise at the given SNR.

    ``snr_db = math.inf`` is the noiseless sentinel (eta = 0 exactly).
    """
    if a.cols != scene.n_samples:
        raise ValueError(f"operator has {a.cols} columns but the scene has {scene.n_samples} samples")
    sigma = noise_sigma_for_snr(scene.clean_signal, snr_db)
    if sigma == 0.0:
        noise = np.zeros(a.rows)
    else:
        noise = sigma * _rng(seed).standard_normal(a.rows)
    y = a.apply(scene.clean_signal) + noise
    return Measurement(y=y, noise_sigma=sigma, snr_db=snr_db, noise=noise)
