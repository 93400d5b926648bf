"""Parameterized harmonic dictionary with per-frequency perturbations.

The dictionary is an N x QN real matrix whose first QN/2 columns are sampled
cosines and whose last QN/2 columns are sampled (negated) sines.  Column k
(0-based, k < QN/2) and column QN-1-k form a pair sharing the frequency
k/(QN) + theta[k], where theta[k] is a perturbation confined to half a grid
bin on either side of the nominal frequency.  Moving theta[k] moves both
columns of the pair together, so an arbitrary-phase tone at the perturbed
frequency is exactly representable by the pair.
"""

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


def theta_bound(n: int, q: float) -> float:
    """Half-bin bound: each perturbation lives in [-1/(2QN), +1/(2QN)]."""
    return 1.0 / (2.0 * q * n)


def _check_grid(n: int, q: float) -> int:
    """Validate (N, Q) and return QN as an integer."""
    if n < 2:
        raise ValueError(f"n_samples must be >= 2, got {n}")
    qn = q * n
    if abs(qn - round(qn)) > 1e-9 or round(qn) % 2 != 0:
        raise ValueError(f"QN must be an even integer, got Q={q}, N={n} (QN={qn})")
    return int(round(qn))


def _atom_block(n_samples: int, freqs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Single evaluation path shared by full builds and column-pair rebuilds so
    # both produce bit-identical values.
    t = np.arange(n_samples, dtype=float)
    phase = TWO_PI * np.outer(t, freqs)
    scale = np.sqrt(2.0 / n_samples)
    return scale * np.cos(phase), -scale * np.sin(phase)


@dataclass
class PerturbedDictionary:
    """Harmonic atom matrix together with the perturbations that built it.

    Attributes
    ----------
    n_samples : int
        Signal length N.
    q_factor : float
        Overcompleteness factor Q (QN/2 must be an integer).
    theta : ndarray, shape (QN/2,)
        Per-frequency perturbations in cycles/sample.  theta[0] (DC) is
        always 0.
    atoms : ndarray, shape (N, QN)
        Columns 0..QN/2-1 are cosine atoms, column QN-1-k is the sine atom
        paired with cosine column k.
    """

    n_samples: int
    q_factor: float
    theta: np.ndarray
    atoms: np.ndarray

    @property
    def qn(self) -> int:
        return self.atoms.shape[1]

    @property
    def n_freqs(self) -> int:
        return self.qn // 2


def build_dictionary(n: int, q: float, theta: np.ndarray | None = None) -> PerturbedDictionary:
    """Build the N x QN perturbed harmonic dictionary.

    Parameters
    ----------
    n : int
        Signal length N.
    q : float
        Overcompleteness factor; QN must be an even integer.
    theta : array of length QN/2, optional
        Frequency perturbations (cycles/sample).  Defaults to all zeros.
        Each entry must satisfy |theta[k]| <= 1/(2QN) and theta[0] must be 0.
    """
    qn = _check_grid(n, q)
    n_freqs = qn // 2
    if theta is None:
        theta = np.zeros(n_freqs)
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (n_freqs,):
        raise ValueError(f"theta must have length QN/2={n_freqs}, got shape {theta.shape}")
    bound = theta_bound(n, q)
    if np.any(np.abs(theta) > bound * (1.0 + 1e-12)):
        raise ValueError(f"theta entries must lie in [-{bound}, {bound}]")
    if theta[0] != 0.0:
        raise ValueError("the DC perturbation theta[0] must be 0")

    freqs = np.arange(n_freqs) / qn + theta
    cos_block, sin_block = _atom_block(n, freqs)
    atoms = np.empty((n, qn))
    atoms[:, :n_freqs] = cos_block
    atoms[:, n_freqs:] = sin_block[:, ::-1]
    return PerturbedDictionary(n_samples=n, q_factor=q, theta=theta.copy(), atoms=atoms)


def pair_indices(k: int, qn: int) -> tuple[int, int]:
    """Column pair (cosine, sine) for frequency index k.

    Indices are 0-based: cosine columns occupy 0..QN/2-1 and the sine atom
    paired with frequency index k sits at the mirrored column QN-1-k.
    """
    if not 0 <= k < qn // 2:
        raise ValueError(f"frequency index {k} out of range [0, {qn // 2})")
    return k, qn - 1 - k


def frequency_index_of_column(col: int, qn: int) -> int:
    """Map any column index (cosine or sine half) to its frequency index."""
    if not 0 <= col < qn:
        raise ValueError(f"column index {col} out of range [0, {qn})")
    return col if col < qn // 2 else qn - 1 - col


def atom_frequency(k: int, dictionary: PerturbedDictionary) -> float:
    """Perturbed frequency of index k in cycles/sample, always in [0, 1/2)."""
    if not 0 <= k < dictionary.n_freqs:
        raise ValueError(f"frequency index {k} out of range [0, {dictionary.n_freqs})")
    return k / dictionary.qn + float(dictionary.theta[k])


def build_column_pair(n: int, qn: int, k: int, theta_k: float) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate the (cosine, sine) column pair of frequency index k."""
    f = np.array([k / qn + theta_k])
    cos_block, sin_block = _atom_block(n, f)
    return cos_block[:, 0], sin_block[:, 0]


def update_column_pair(
    dictionary: PerturbedDictionary, k: int, theta_new: float
) -> PerturbedDictionary:
    """Return a new dictionary with only frequency index k re-perturbed.

    Identical (bit-for-bit) to a full rebuild with the updated theta vector;
    only the two paired columns are recomputed.
    """
    if k == 0:
        raise ValueError("the DC perturbation is fixed at 0 and cannot be updated")
    if not 0 < k < dictionary.n_freqs:
        raise ValueError(f"frequency index {k} out of range [1, {dictionary.n_freqs})")
    bound = theta_bound(dictionary.n_samples, dictionary.q_factor)
    if abs(theta_new) > bound * (1.0 + 1e-12):
        raise ValueError(f"theta_new={theta_new} outside [-{bound}, {bound}]")

    cos_col, sin_col = build_column_pair(dictionary.n_samples, dictionary.qn, k, theta_new)
    theta = dictionary.theta.copy()
    theta[k] = theta_new
    atoms = dictionary.atoms.copy()
    c_idx, s_idx = pair_indices(k, dictionary.qn)
    atoms[:, c_idx] = cos_col
    atoms[:, s_idx] = sin_col
    return PerturbedDictionary(
        n_samples=dictionary.n_samples,
        q_factor=dictionary.q_factor,
        theta=theta,
        atoms=atoms,
    )
