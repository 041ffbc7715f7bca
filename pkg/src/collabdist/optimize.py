"""Unconstrained maximization and numerical differentiation.

A deterministic BFGS ascent with backtracking line search. Gradients default
to central finite differences; callers with a cheap analytic gradient can
pass it in. When the line search stalls, a bounded Nelder-Mead excursion
tries to escape flat or kinked regions before quasi-Newton iteration resumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import linalg
from scipy.optimize import minimize as _scipy_minimize

_EPS_CBRT = float(np.finfo(float).eps) ** (1.0 / 3.0)


@dataclass
class MaximizeResult:
    x: np.ndarray
    value: float
    converged: bool
    iterations: int
    n_evals: int
    message: str = ""


def _default_steps(x: np.ndarray, h: float | None) -> np.ndarray:
    if h is not None:
        return np.full_like(x, h, dtype=float)
    return _EPS_CBRT * np.maximum(1.0, np.abs(x))


def fd_gradient(
    objective: Callable[[np.ndarray], float],
    point: np.ndarray,
    h: float | None = None,
) -> np.ndarray:
    """Central-difference gradient; step per coordinate is
    cbrt(eps) * max(1, |x_k|) unless ``h`` is given."""
    x = np.asarray(point, dtype=float)
    steps = _default_steps(x, h)
    grad = np.empty_like(x)
    for k in range(x.size):
        xp, xm = x.copy(), x.copy()
        xp[k] += steps[k]
        xm[k] -= steps[k]
        fp, fm = objective(xp), objective(xm)
        if not (math.isfinite(fp) and math.isfinite(fm)):
            raise ValueError(f"non-finite objective near coordinate {k}")
        grad[k] = (fp - fm) / (2.0 * steps[k])
    return grad


def fd_hessian(
    objective: Callable[[np.ndarray], float],
    point: np.ndarray,
    h: float | None = None,
) -> np.ndarray:
    """Central-difference Hessian, symmetrized as (H + H^T) / 2."""
    x = np.asarray(point, dtype=float)
    steps = _default_steps(x, h)
    n = x.size
    f0 = objective(x)
    if not math.isfinite(f0):
        raise ValueError("non-finite objective at expansion point")
    hess = np.empty((n, n))
    for k in range(n):
        xp, xm = x.copy(), x.copy()
        xp[k] += steps[k]
        xm[k] -= steps[k]
        fp, fm = objective(xp), objective(xm)
        if not (math.isfinite(fp) and math.isfinite(fm)):
            raise ValueError(f"non-finite objective near coordinate {k}")
        hess[k, k] = (fp - 2.0 * f0 + fm) / steps[k] ** 2
    for k in range(n):
        for l in range(k + 1, n):
            xpp, xpm, xmp, xmm = x.copy(), x.copy(), x.copy(), x.copy()
            xpp[[k, l]] += steps[[k, l]]
            xpm[k] += steps[k]
            xpm[l] -= steps[l]
            xmp[k] -= steps[k]
            xmp[l] += steps[l]
            xmm[[k, l]] -= steps[[k, l]]
            vals = [objective(p) for p in (xpp, xpm, xmp, xmm)]
            if not all(math.isfinite(v) for v in vals):
                raise ValueError(f"non-finite objective near coordinates {k},{l}")
            hess[k, l] = hess[l, k] = (vals[0] - vals[1] - vals[2] + vals[3]) / (
                4.0 * steps[k] * steps[l]
            )
    return 0.5 * (hess + hess.T)


def solve_spd(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Cholesky solve of a symmetric positive-definite system."""
    a = np.asarray(matrix, dtype=float)
    b = np.asarray(rhs, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("singular_system")
    if not np.allclose(a, a.T, rtol=1e-10, atol=1e-12):
        raise ValueError("singular_system")
    try:
        factor = linalg.cho_factor(a, check_finite=False)
    except linalg.LinAlgError:
        raise ValueError("singular_system") from None
    x = linalg.cho_solve(factor, b, check_finite=False)
    if not np.all(np.isfinite(x)):
        raise ValueError("singular_system")
    return x


def maximize(
    objective: Callable[[np.ndarray], float],
    start: np.ndarray,
    gradient: Callable[[np.ndarray], np.ndarray] | None = None,
    g_tol: float = 1e-6,
    f_tol: float = 1e-10,
    max_iter: int = 10_000,
    simplex_iters: int = 200,
) -> MaximizeResult:
    """BFGS ascent from ``start``.

    Converges when the gradient max-norm drops below g_tol or the relative
    objective change drops below f_tol. A stalled line search triggers a
    bounded simplex excursion, after which quasi-Newton iteration resumes
    with a reset curvature estimate. Deterministic for identical inputs.
    """
    x = np.asarray(start, dtype=float).copy()
    n = x.size
    evals = 0

    def f(p: np.ndarray) -> float:
        nonlocal evals
        evals += 1
        v = objective(p)
        return v if not math.isnan(v) else -math.inf

    def grad(p: np.ndarray) -> np.ndarray:
        if gradient is not None:
            return np.asarray(gradient(p), dtype=float)
        return fd_gradient(objective, p)

    fx = f(x)
    if not math.isfinite(fx):
        raise ValueError("objective not finite at start")

    hinv = np.eye(n)
    g = grad(x)
    fell_back = False
    for iteration in range(1, max_iter + 1):
        if np.max(np.abs(g)) < g_tol:
            return MaximizeResult(x, fx, True, iteration - 1, evals, "gradient tolerance")

        direction = hinv @ g
        if float(direction @ g) <= 0:
            hinv = np.eye(n)
            direction = g

        # backtracking Armijo line search (ascent)
        slope = float(direction @ g)
        step = 1.0
        new_x, new_f = None, None
        while step >= 1e-12:
            candidate = x + step * direction
            fc = f(candidate)
            if math.isfinite(fc) and fc >= fx + 1e-4 * step * slope:
                new_x, new_f = candidate, fc
                break
            step *= 0.5

        if new_x is None:
            if fell_back:
                return MaximizeResult(
                    x, fx, np.max(np.abs(g)) < g_tol, iteration, evals, "line search stalled"
                )
            # simplex excursion, then resume quasi-Newton
            fell_back = True
            res = _scipy_minimize(
                lambda p: -f(p),
                x,
                method="Nelder-Mead",
                options={"maxiter": simplex_iters, "xatol": 1e-10, "fatol": 1e-12},
            )
            if math.isfinite(res.fun) and -res.fun > fx:
                x, fx = np.asarray(res.x, dtype=float), -float(res.fun)
            hinv = np.eye(n)
            g = grad(x)
            continue

        new_g = grad(new_x)
        s = new_x - x
        # standard BFGS update expressed on the negated (minimization) problem
        y_vec = -(new_g - g)
        sy = float(s @ y_vec)
        if sy > 1e-12 * float(np.linalg.norm(s)) * float(np.linalg.norm(y_vec)):
            rho = 1.0 / sy
            eye = np.eye(n)
            hinv = (eye - rho * np.outer(s, y_vec)) @ hinv @ (eye - rho * np.outer(y_vec, s)) + rho * np.outer(s, s)

        rel_change = abs(new_f - fx) / max(1.0, abs(fx))
        x, fx, g = new_x, new_f, new_g
        fell_back = False
        if rel_change < f_tol:
            return MaximizeResult(x, fx, True, iteration, evals, "value tolerance")

    return MaximizeResult(x, fx, False, max_iter, evals, "iteration cap")
