"""Numerical analysis of the surrogate cost behind the perturbation search.

For a single tone with true amplitude x and estimated amplitude x_hat, the
stochastic data-fit cost (1/M)||A(z - z_hat(theta)) + eta||^2 concentrates
around the deterministic energy

    g(theta) = sum_n [x sin(2 pi f n) - x_hat sin(2 pi (f + theta) n)]^2

scaled by the sensing variance, plus the noise floor.  This module evaluates
g, its companion first-moment sum h, the closed-form large-N second
derivative of g, the overcompleteness threshold above which g is convex on a
whole frequency bin, and a side-by-side comparison of the exact and
surrogate costs with the predicted deviation order.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

TWO_PI = 2.0 * np.pi

KURTOSIS = {"normal": 0.0, "uniform": -6.0 / 5.0}


@dataclass
class CostProbe:
    """Single-tone configuration for the surrogate-cost comparison."""

    n: int
    m: int
    freq: float
    x_true: float
    x_est: float
    sigma_a: float = 1.0
    sigma_noise: float = 0.0
    dist: str = "normal"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.dist not in KURTOSIS:
            raise ValueError(f"dist must be one of {sorted(KURTOSIS)}, got {self.dist!r}")

    @property
    def delta(self) -> float:
        return abs(self.x_true - self.x_est)

    @property
    def kurtosis(self) -> float:
        return KURTOSIS[self.dist]


def _discrepancy(theta, probe: CostProbe) -> np.ndarray:
    """v_theta as an N x T matrix, one column per theta value."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    t = np.arange(probe.n, dtype=float)
    true_part = probe.x_true * np.sin(TWO_PI * probe.freq * t)
    est_part = probe.x_est * np.sin(TWO_PI * np.outer(t, probe.freq + theta))
    return true_part[:, None] - est_part


def tone_discrepancy_energy(theta, probe: CostProbe):
    """g(theta): summed squared mismatch between true and estimated tone."""
    v = _discrepancy(theta, probe)
    out = np.sum(v * v, axis=0)
    return float(out[0]) if np.isscalar(theta) else out


def tone_discrepancy_sum(theta, probe: CostProbe):
    """h(theta): plain sum of the mismatch; stays O(|x| + |x_hat|) in N."""
    v = _discrepancy(theta, probe)
    out = np.sum(v, axis=0)
    return float(out[0]) if np.isscalar(theta) else out


def curvature_closed_form(theta: float, n: int) -> float:
    """Large-N closed form of g''(theta), independent of the amplitudes.

    The expression has a removable singularity at theta = 0; it is evaluated
    at +-1e-9/N and averaged there, which is far below any tolerance of
    interest.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if theta == 0.0:
        eps = 1e-9 / n
        return 0.5 * (curvature_closed_form(eps, n) + curvature_closed_form(-eps, n))
    pt = math.pi * theta
    csc = 1.0 / math.sin(pt)
    cot = math.cos(pt) * csc
    cos_term = math.cos(2.0 * math.pi * (n + 1) * theta)
    return (
        2.0 * n * n * csc * math.sin(math.pi * (2 * n + 1) * theta)
        + 2.0 * n * csc * csc * cos_term
        + 3.0 * csc * csc * cos_term
        - csc**3 * math.sin(math.pi * (2 * n + 3) * theta)
        - cot * cot
        + csc * csc
    )


def _bin_edge_curvature(q: float) -> float:
    """Continuous form of the bin-edge convexity condition.

    Substituting theta = 1/(2QN) into the closed-form curvature and clearing
    the trigonometric poles leaves sin(pi/Q)(4Q^2 - 2 pi^2) - 4 pi Q cos(pi/Q),
    whose sign changes exactly where the bin-edge curvature does.  Unlike the
    tan form, this expression is continuous on (1, 4], so a sign scan on it
    cannot mistake a pole for a root.
    """
    return math.sin(math.pi / q) * (4.0 * q * q - 2.0 * math.pi**2) - 4.0 * math.pi * q * math.cos(
        math.pi / q
    )


def convexity_root(lo: float = 1.001, hi: float = 4.0) -> float:
    """Overcompleteness factor at which bin-edge curvature changes sign.

    Root of tan(pi/Q) = 4 Q pi / (4 Q^2 - 2 pi^2) on (1, 4], located on the
    pole-free equivalent form; the surrogate cost is convex across a full
    bin whenever Q exceeds this value (~1.509).
    """
    return float(brentq(_bin_edge_curvature, lo, hi, xtol=1e-13, rtol=8.9e-16))


def bin_edge_residual(q: float) -> float:
    """Residual of the printed transcendental equation at q."""
    return math.tan(math.pi / q) - 4.0 * q * math.pi / (4.0 * q * q - 2.0 * math.pi**2)


def scan_edge_curvature_sign_changes(lo: float, hi: float, step: float = 1e-3) -> int:
    """Count sign changes of the continuous bin-edge form on [lo, hi]."""
    grid = np.arange(lo, hi + step / 2, step)
    vals = np.array([_bin_edge_curvature(q) for q in grid])
    signs = np.sign(vals)
    return int(np.sum(signs[1:] * signs[:-1] < 0))


def draw_sensing_entries(m: int, n: int, sigma_a: float, dist: str, rng) -> np.ndarray:
    """i.i.d. zero-mean entries with std sigma_a from the named distribution."""
    if dist == "normal":
        return sigma_a * rng.standard_normal((m, n))
    if dist == "uniform":
        half_width = sigma_a * math.sqrt(3.0)
        return rng.uniform(-half_width, half_width, size=(m, n))
    raise ValueError(f"unknown distribution {dist!r}")


@dataclass
class CostComparison:
    """Columns of the exact-vs-surrogate cost table over a theta grid."""

    theta: np.ndarray
    exact_cost: np.ndarray
    approx_cost: np.ndarray
    deviation: np.ndarray
    predicted_order: np.ndarray


def compare_exact_vs_surrogate(probe: CostProbe, theta_grid, seed=0) -> CostComparison:
    """Evaluate exact stochastic and surrogate costs on a theta grid.

    The exact cost uses one seeded draw of the sensing matrix (and of the
    noise when sigma_noise > 0):  (1/M) ||A v_theta + eta||^2.  The surrogate
    is sigma_a^2 * g(theta) + sigma_noise^2, and the predicted deviation
    order combines the three central-limit error terms.
    """
    theta_grid = np.asarray(theta_grid, dtype=float)
    edge = 1.0 / (2.0 * probe.n)
    if np.any(np.abs(theta_grid) > edge * (1.0 + 1e-12)):
        raise ValueError(f"theta grid must stay within [-{edge}, {edge}]")
    rng = np.random.default_rng(seed)
    a = draw_sensing_entries(probe.m, probe.n, probe.sigma_a, probe.dist, rng)
    eta = (
        probe.sigma_noise * rng.standard_normal(probe.m)
        if probe.sigma_noise > 0
        else np.zeros(probe.m)
    )

    v = _discrepancy(theta_grid, probe)
    proj = a @ v + eta[:, None]
    exact = np.sum(proj * proj, axis=0) / probe.m

    g = tone_discrepancy_energy(theta_grid, probe)
    h = tone_discrepancy_sum(theta_grid, probe)
    approx = probe.sigma_a**2 * g + probe.sigma_noise**2
    root_m = math.sqrt(probe.m)
    predicted = (
        math.sqrt(2.0 + probe.kurtosis) * probe.sigma_a**2 * g / root_m
        + 2.0 * probe.sigma_a * probe.sigma_noise * np.abs(h) / root_m
        + math.sqrt(2.0) * probe.sigma_noise**2 / root_m
    )
    return CostComparison(
        theta=theta_grid,
        exact_cost=exact,
        approx_cost=approx,
        deviation=np.abs(exact - approx),
        predicted_order=np.asarray(predicted, dtype=float) * np.ones_like(exact),
    )
