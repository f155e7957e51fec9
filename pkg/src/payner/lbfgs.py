"""Limited-memory BFGS with a backtracking Armijo line search.

Two-loop recursion over the last ``history`` curvature pairs; a pair is
skipped when ``s.y`` is not safely positive, which keeps the implicit
Hessian approximation positive definite. Steps are accepted only if they
satisfy the sufficient-decrease condition, so the objective sequence is
non-increasing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

Objective = Callable[[np.ndarray], tuple[float, np.ndarray]]


@dataclass
class LbfgsResult:
    x: np.ndarray
    f: float
    grad_norm: float
    iterations: int
    converged: bool
    message: str
    history: list[float] = field(default_factory=list)


def two_loop(g: np.ndarray, pairs) -> np.ndarray:
    """Apply the inverse-Hessian approximation to ``g``."""
    q = g.copy()
    alphas = []
    for s, y, rho in reversed(pairs):
        a = rho * (s @ q)
        q -= a * y
        alphas.append(a)
    if pairs:
        s, y, _ = pairs[-1]
        q *= (s @ y) / (y @ y)
    for (s, y, rho), a in zip(pairs, reversed(alphas)):
        b = rho * (y @ q)
        q += (a - b) * s
    return q


def minimize(
    fun: Objective,
    x0: np.ndarray,
    history: int = 10,
    max_iter: int = 200,
    rel_tol: float = 1e-6,
    gtol: float = 1e-8,
    c1: float = 1e-4,
    max_backtracks: int = 50,
    callback: Callable[[int, float, float, np.ndarray], None] | None = None,
) -> LbfgsResult:
    """Minimize ``fun`` from ``x0``; ``fun`` returns (value, gradient).

    Stops after ``max_iter`` accepted steps, when the relative decrease
    ``(f_prev - f) / max(|f|, 1)`` falls below ``rel_tol``, or when the
    gradient norm drops below ``gtol``.
    """
    if history < 1:
        raise ValueError("history must be at least 1")
    x = np.array(x0, dtype=float)
    f, g = fun(x)
    if not np.isfinite(f):
        raise FloatingPointError("objective is not finite at the starting point")
    pairs: deque = deque(maxlen=history)
    trace = [f]
    gnorm = float(np.linalg.norm(g))
    if gnorm < gtol:
        return LbfgsResult(x, f, gnorm, 0, True, "gradient norm below tolerance at start", trace)

    it = 0
    message = "max iterations reached"
    converged = False
    while it < max_iter:
        d = -two_loop(g, list(pairs))
        slope = g @ d
        if slope >= 0:  # not a descent direction; fall back to steepest descent
            pairs.clear()
            d = -g
            slope = -(g @ g)
        step = 1.0 if pairs else min(1.0, 1.0 / gnorm)
        for _ in range(max_backtracks):
            x_new = x + step * d
            f_new, g_new = fun(x_new)
            if np.isfinite(f_new) and f_new <= f + c1 * step * slope:
                break
            step *= 0.5
        else:
            if pairs:
                pairs.clear()
                continue
            message = "line search failed"
            break
        s, y = x_new - x, g_new - g
        if not s.any():
            message = "no progress: step below floating-point resolution"
            break
        it += 1
        sy = s @ y
        if sy > 1e-10 * (y @ y):
            pairs.append((s, y, 1.0 / sy))
        rel = (f - f_new) / max(abs(f_new), 1.0)
        x, f, g = x_new, f_new, g_new
        gnorm = float(np.linalg.norm(g))
        trace.append(f)
        if callback is not None:
            callback(it, f, gnorm, x)
        if rel < rel_tol:
            message, converged = "relative objective change below tolerance", True
            break
        if gnorm < gtol:
            message, converged = "gradient norm below tolerance", True
            break
    return LbfgsResult(x, f, gnorm, it, converged, message, trace)
