"""Gradient-projection solver for the l2-l1 objective ||y - Bx||^2 + lambda*||x||_1.

The variable is split as x = u - v with u, v >= 0, turning the problem into a
bound-constrained quadratic program.  Steps use a Barzilai-Borwein step size
projected onto the nonnegative orthant, followed by an exact line search
along the projected direction; because the objective is quadratic along the
direction, the line search is closed-form and every iterate decreases the
objective (monotone variant).
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class L1Problem:
    """design: M x K matrix B, target: length-M vector y, lam: l1 weight."""

    design: np.ndarray
    target: np.ndarray
    lam: float

    def __post_init__(self):
        if self.design.ndim != 2:
            raise ValueError("design must be a matrix")
        if self.design.shape[0] != self.target.shape[0]:
            raise ValueError(
                f"design has {self.design.shape[0]} rows, target has length {self.target.shape[0]}"
            )
        if self.lam < 0:
            raise ValueError(f"lambda must be nonnegative, got {self.lam}")

    def objective(self, x: np.ndarray) -> float:
        r = self.target - self.design @ x
        return float(r @ r + self.lam * np.sum(np.abs(x)))


@dataclass
class SolverReport:
    x: np.ndarray
    objective: float
    iterations: int
    converged: bool
    objective_trace: list | None = None


def compute_lambda(design: np.ndarray, y: np.ndarray, alpha: float) -> float:
    """Regularization weight alpha * ||B^T y||_inf."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if design.size == 0 or y.size == 0:
        raise ValueError("empty design or target")
    return alpha * float(np.max(np.abs(design.T @ y)))


def solve_l2l1(
    problem: L1Problem,
    init: np.ndarray | None = None,
    tol: float = 1e-8,
    max_iter: int = 2000,
) -> SolverReport:
    """Minimize ||y - Bx||^2 + lambda*||x||_1 by monotone projected BB steps.

    Terminates when the relative objective change drops below ``tol`` (the
    ``converged`` flag) or after ``max_iter`` iterations.  The objective at
    the returned x never exceeds the objective at ``init``.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    B, y, lam = problem.design, problem.target, problem.lam
    if not (np.all(np.isfinite(B)) and np.all(np.isfinite(y)) and np.isfinite(lam)):
        raise ValueError("non-finite inputs")
    n = B.shape[1]

    if init is None:
        init = np.zeros(n)
    u = np.maximum(init, 0.0)
    v = np.maximum(-init, 0.0)
    Bx = B @ (u - v)

    def objective(Bx_cur, u_cur, v_cur):
        r = y - Bx_cur
        return float(r @ r + lam * (np.sum(u_cur) + np.sum(v_cur)))

    f_prev = objective(Bx, u, v)
    trace = [f_prev]
    step = 1.0
    iterations = 0
    converged = False

    for iterations in range(1, max_iter + 1):
        g = 2.0 * (B.T @ (Bx - y))
        grad_u = g + lam
        grad_v = -g + lam

        du = np.maximum(u - step * grad_u, 0.0) - u
        dv = np.maximum(v - step * grad_v, 0.0) - v
        gd = float(grad_u @ du + grad_v @ dv)
        if gd >= 0.0:
            # projected direction is not a descent direction: stationary point
            converged = True
            iterations -= 1
            break

        Bd = B @ (du - dv)
        curv = 2.0 * float(Bd @ Bd)
        if curv <= 0.0:
            t = 1.0
        else:
            t = min(1.0, max(0.0, -gd / curv))
        u = u + t * du
        v = v + t * dv
        Bx = Bx + t * Bd

        # BB step for the next projection, clipped for safety
        dd = float(du @ du + dv @ dv)
        if curv > 0.0:
            step = min(max(dd / curv, 1e-30), 1e30)

        f_new = objective(Bx, u, v)
        trace.append(f_new)
        if abs(f_prev - f_new) <= tol * max(abs(f_prev), 1e-300):
            f_prev = f_new
            converged = True
            break
        f_prev = f_new

    x = u - v
    return SolverReport(
        x=x,
        objective=problem.objective(x),
        iterations=iterations,
        converged=converged,
        objective_trace=trace,
    )


def optimality_gap(problem: L1Problem, x: np.ndarray, zero_tol: float = 0.0) -> float:
    """Largest violation of the subgradient optimality conditions at x.

    For coefficients with |x_k| <= zero_tol the condition is
    |2 b_k^T (Bx - y)| <= lambda; for the rest, 2 b_k^T (Bx - y) must equal
    -sign(x_k) * lambda.  Returns the max absolute violation over all k.
    """
    B, y, lam = problem.design, problem.target, problem.lam
    g = 2.0 * (B.T @ (B @ x - y))
    at_zero = np.abs(x) <= zero_tol
    viol_zero = np.maximum(np.abs(g[at_zero]) - lam, 0.0)
    viol_active = np.abs(g[~at_zero] + lam * np.sign(x[~at_zero]))
    worst = 0.0
    if viol_zero.size:
        worst = max(worst, float(np.max(viol_zero)))
    if viol_active.size:
        worst = max(worst, float(np.max(viol_active)))
    return worst
