"""One-dimensional perturbation refinement by golden-section search.

Given fixed coefficients, moving a single frequency perturbation changes only
two dictionary columns, so the quadratic data-fit cost at a candidate theta
is evaluated through a rank-2 correction of the cached residual instead of a
full rebuild.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dictionary import (
    PerturbedDictionary,
    build_column_pair,
    pair_indices,
    theta_bound,
    update_column_pair,
)
from .signals import SensingOperator

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0

DEFAULT_SEARCH_ITERS = 60


def default_search_tol(n: int, q: float) -> float:
    """1/10000 of a frequency bin."""
    return 1e-4 / (q * n)


@dataclass
class SearchState:
    """Residual bookkeeping for the per-frequency searches of one sweep."""

    sensing: SensingOperator
    dict: PerturbedDictionary
    coeffs: np.ndarray
    target: np.ndarray
    residual: np.ndarray

    @classmethod
    def create(
        cls,
        sensing: SensingOperator,
        dictionary: PerturbedDictionary,
        coeffs: np.ndarray,
        target: np.ndarray,
    ) -> "SearchState":
        residual = target - sensing.matrix @ (dictionary.atoms @ coeffs)
        return cls(sensing=sensing, dict=dictionary, coeffs=coeffs, target=target, residual=residual)

    def cost(self) -> float:
        return float(self.residual @ self.residual)

    def pair_delta(self, k: int, theta_candidate: float) -> np.ndarray | None:
        """Signal-domain change of the pair's contribution, or None if unused."""
        c_idx, s_idx = pair_indices(k, self.dict.qn)
        c, s = self.coeffs[c_idx], self.coeffs[s_idx]
        if c == 0.0 and s == 0.0:
            return None
        cos_new, sin_new = build_column_pair(
            self.dict.n_samples, self.dict.qn, k, theta_candidate
        )
        old = c * self.dict.atoms[:, c_idx] + s * self.dict.atoms[:, s_idx]
        new = c * cos_new + s * sin_new
        return new - old


def cost_at(state: SearchState, k: int, theta_candidate: float) -> float:
    """Quadratic cost ||y - A Psi x||^2 with theta[k] swapped for the candidate.

    The state is not modified.
    """
    if k == 0:
        raise ValueError("the DC perturbation is fixed; no cost is defined for k=0")
    if not 0 < k < state.dict.n_freqs:
        raise ValueError(f"frequency index {k} out of range [1, {state.dict.n_freqs})")
    bound = theta_bound(state.dict.n_samples, state.dict.q_factor)
    if abs(theta_candidate) > bound * (1.0 + 1e-12):
        raise ValueError(f"theta candidate {theta_candidate} outside [-{bound}, {bound}]")
    delta = state.pair_delta(k, theta_candidate)
    if delta is None:
        return state.cost()
    r = state.residual - state.sensing.matrix @ delta
    return float(r @ r)


def apply_perturbation(state: SearchState, k: int, theta_new: float) -> None:
    """Commit theta[k] = theta_new, updating dictionary and residual in place."""
    delta = state.pair_delta(k, theta_new)
    state.dict = update_column_pair(state.dict, k, theta_new)
    if delta is not None:
        state.residual = state.residual - state.sensing.matrix @ delta


def golden_search(
    state: SearchState,
    k: int,
    tol: float | None = None,
    max_iter: int = DEFAULT_SEARCH_ITERS,
) -> float:
    """Minimize the cost over theta[k] on the full bin [-1/(2QN), +1/(2QN)].

    Plain golden-section search down to bracket width ``tol`` (default one
    ten-thousandth of a bin).  The incumbent perturbation is kept whenever
    the search does not improve on it, so an accepted value never increases
    the cost.
    """
    if tol is None:
        tol = default_search_tol(state.dict.n_samples, state.dict.q_factor)
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")

    bound = theta_bound(state.dict.n_samples, state.dict.q_factor)
    a, b = -bound, bound
    incumbent = float(state.dict.theta[k])
    incumbent_cost = cost_at(state, k, incumbent)

    h = b - a
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc = cost_at(state, k, c)
    fd = cost_at(state, k, d)
    for _ in range(max_iter):
        if h <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + INV_PHI2 * h
            fc = cost_at(state, k, c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + INV_PHI * h
            fd = cost_at(state, k, d)

    best = c if fc < fd else d
    if cost_at(state, k, best) > incumbent_cost:
        return incumbent
    return float(best)
