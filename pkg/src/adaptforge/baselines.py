"""Adaptive baselines: gradient-selected and shortlist-selected ansatz growth.

Both baselines grow the ansatz one excitation at a time and fully reoptimize
all angles after each append with a limited-memory BFGS (strong Wolfe line
search). Gradients come from per-coordinate trigonometric landscape
reconstruction, so one full gradient costs 4m + 1 energy evaluations for m
angles (the offset-zero sample is the shared incumbent energy).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import opt1d
from .resources import make_record
from .statevector import EnergyContext

LBFGS_MEMORY = 10
WOLFE_C1 = 1e-4
WOLFE_C2 = 0.9
MAX_LINE_SEARCH = 25


@dataclass(frozen=True)
class AdaptConfig:
    grad_eps: float = 1e-3
    energy_improvement_eps: float = 1e-6
    newest_param_eps: float = 1e-6
    max_operators: int = 30


@dataclass(frozen=True)
class QebConfig:
    shortlist_size: int = 10
    min_realized_improvement: float = 1e-6
    max_operators: int = 30


def pool_gradients(ctx: EnergyContext, ansatz, thetas, pool):
    """|dE/dtheta| at theta=0 for each pool excitation appended to the ansatz.

    Returns a list of (excitation, gradient_magnitude) in pool order.
    """
    ansatz = list(ansatz)
    thetas = list(thetas)
    out = []
    for exc in pool:
        def f(t, exc=exc):
            return ctx.energy(ansatz + [exc], thetas + [t])
        landscape = opt1d.reconstruct_1d(f, 0.0)
        out.append((exc, abs(opt1d.gradient_1d(landscape, 0.0))))
    return out


def _energy_and_gradient(ctx: EnergyContext, ansatz, thetas):
    """Energy plus exact gradient from per-coordinate landscapes."""
    thetas = np.asarray(thetas, dtype=float)
    energy = ctx.energy(ansatz, thetas)
    grad = np.empty(len(thetas))
    for i, theta_i in enumerate(thetas):
        def f(t, i=i):
            probe = thetas.copy()
            probe[i] = t
            return ctx.energy(ansatz, probe)
        landscape = opt1d.reconstruct_1d(f, theta_i)
        grad[i] = opt1d.gradient_1d(landscape, theta_i)
    return energy, grad


def _wolfe_line_search(fg, x, fx, g, d):
    """Strong Wolfe step along d; returns (x_new, f_new, g_new) or None.

    Energy differences bottom out at machine noise (~1e-15 * |E|) while the
    analytic gradient is still resolvable, so sufficient decrease is tested
    with an absolute noise allowance and a curvature-only acceptance is used
    when the function is noise-flat (approximate Wolfe).
    """
    d_dot_g0 = float(d @ g)
    if d_dot_g0 >= 0:
        return None
    noise = 1e-12 * (1.0 + abs(fx))

    def phi(alpha):
        f_a, g_a = fg(x + alpha * d)
        return f_a, g_a, float(d @ g_a)

    def acceptable(alpha, f_a, dphi):
        if abs(dphi) > -WOLFE_C2 * d_dot_g0:
            return False
        return (f_a <= fx + WOLFE_C1 * alpha * d_dot_g0 + noise
                or f_a <= fx + noise)

    def zoom(lo, f_lo, hi, f_hi, g_lo):
        for _ in range(MAX_LINE_SEARCH):
            # safeguarded quadratic interpolation, bisection fallback
            denom = 2.0 * (f_hi - f_lo - g_lo * (hi - lo))
            alpha = lo + (-g_lo * (hi - lo) ** 2 / denom if abs(denom) > 1e-30
                          else 0.5 * (hi - lo))
            span = abs(hi - lo)
            if not min(lo, hi) + 0.1 * span <= alpha <= max(lo, hi) - 0.1 * span:
                alpha = 0.5 * (lo + hi)
            f_a, g_vec, dphi = phi(alpha)
            if acceptable(alpha, f_a, dphi):
                return x + alpha * d, f_a, g_vec
            if f_a > fx + WOLFE_C1 * alpha * d_dot_g0 + noise or f_a >= f_lo:
                hi, f_hi = alpha, f_a
            else:
                if dphi * (hi - lo) >= 0:
                    hi, f_hi = lo, f_lo
                lo, f_lo, g_lo = alpha, f_a, dphi
            if abs(hi - lo) < 1e-14:
                if f_a <= fx + noise:
                    return x + alpha * d, f_a, g_vec
                return None
        return None

    alpha_prev, f_prev, g_prev = 0.0, fx, d_dot_g0
    alpha = 1.0
    for it in range(MAX_LINE_SEARCH):
        f_a, g_vec, dphi = phi(alpha)
        if acceptable(alpha, f_a, dphi):
            return x + alpha * d, f_a, g_vec
        if f_a > fx + WOLFE_C1 * alpha * d_dot_g0 + noise \
                or (it > 0 and f_a >= f_prev):
            return zoom(alpha_prev, f_prev, alpha, f_a, g_prev)
        if dphi >= 0:
            return zoom(alpha, f_a, alpha_prev, f_prev, dphi)
        alpha_prev, f_prev, g_prev = alpha, f_a, dphi
        alpha *= 2.0
    return None


def full_reoptimize(ctx: EnergyContext, ansatz, theta_init,
                    grad_tol: float = 1e-8, max_iter: int = 500):
    """Minimize over all angles jointly with limited-memory BFGS.

    Returns (thetas, energy, converged). Never returns an energy above the
    starting point.
    """
    ansatz = list(ansatz)
    x = np.asarray(theta_init, dtype=float).copy()
    if len(x) != len(ansatz):
        raise ValueError("angle vector length does not match ansatz")
    if len(x) == 0:
        return x, ctx.energy(ansatz, x), True

    def fg(xv):
        return _energy_and_gradient(ctx, ansatz, xv)

    fx, g = fg(x)
    best_x, best_f = x.copy(), fx
    s_hist, y_hist, rho_hist = [], [], []
    converged = False
    for _ in range(max_iter):
        if np.max(np.abs(g)) < grad_tol:
            converged = True
            break
        # two-loop recursion
        q = g.copy()
        alphas = []
        for s, y, rho in zip(reversed(s_hist), reversed(y_hist),
                             reversed(rho_hist)):
            a = rho * (s @ q)
            alphas.append(a)
            q -= a * y
        if y_hist:
            q *= (s_hist[-1] @ y_hist[-1]) / (y_hist[-1] @ y_hist[-1])
        for s, y, rho, a in zip(s_hist, y_hist, rho_hist, reversed(alphas)):
            q += (a - rho * (y @ q)) * s
        d = -q
        result = _wolfe_line_search(fg, x, fx, g, d)
        if result is None and s_hist:  # retry as plain gradient descent
            s_hist, y_hist, rho_hist = [], [], []
            result = _wolfe_line_search(fg, x, fx, g, -g)
        if result is None:
            break
        x_new, f_new, g_new = result
        s, y = x_new - x, g_new - g
        sy = float(s @ y)
        if sy > 1e-12 * np.linalg.norm(s) * np.linalg.norm(y):
            s_hist.append(s)
            y_hist.append(y)
            rho_hist.append(1.0 / sy)
            if len(s_hist) > LBFGS_MEMORY:
                s_hist.pop(0)
                y_hist.pop(0)
                rho_hist.pop(0)
        x, fx, g = x_new, f_new, g_new
        if fx < best_f:
            best_x, best_f = x.copy(), fx
    else:
        converged = np.max(np.abs(g)) < grad_tol
    if np.max(np.abs(g)) < grad_tol:
        converged = True
    return best_x, best_f, converged


def adapt_vqe(ctx: EnergyContext, pool, meta, config: AdaptConfig = AdaptConfig()):
    """Largest-gradient growth with full reoptimization after each append."""
    evals0 = ctx.counter.energy_evaluations
    ansatz, thetas = [], np.zeros(0)
    energy = ctx.energy(ansatz, thetas)
    trace = []
    while len(ansatz) < config.max_operators:
        grads = pool_gradients(ctx, ansatz, thetas, pool)
        best_exc, best_g = None, -1.0
        for exc, g in grads:  # strict > keeps the earliest on ties
            if g > best_g:
                best_exc, best_g = exc, g
        if best_g < config.grad_eps:
            break
        theta_new, e_new, _ = full_reoptimize(
            ctx, ansatz + [best_exc], np.append(thetas, 0.0))
        improvement = energy - e_new
        ansatz.append(best_exc)
        thetas = theta_new
        energy = e_new
        trace.append((best_exc.describe(), float(theta_new[-1]),
                      float(improvement)))
        if improvement < config.energy_improvement_eps:
            break
        if abs(theta_new[-1]) < config.newest_param_eps:
            break
    return make_record(meta, "adapt", None, energy, ansatz, thetas,
                       ctx.counter.energy_evaluations - evals0,
                       accepted_trace=trace, config=vars(config))


def qeb_adapt_vqe(ctx: EnergyContext, pool, meta,
                  config: QebConfig = QebConfig()):
    """Shortlist growth: trial-reoptimize the top-k gradient candidates and
    keep the one with the largest realized energy improvement."""
    evals0 = ctx.counter.energy_evaluations
    ansatz, thetas = [], np.zeros(0)
    energy = ctx.energy(ansatz, thetas)
    trace = []
    while len(ansatz) < config.max_operators:
        grads = pool_gradients(ctx, ansatz, thetas, pool)
        ranked = sorted(grads, key=lambda item: -item[1])  # stable on ties
        shortlist = ranked[:config.shortlist_size]
        best = None  # (improvement, theta, energy, exc)
        for exc, _ in shortlist:
            theta_new, e_new, _ = full_reoptimize(
                ctx, ansatz + [exc], np.append(thetas, 0.0))
            improvement = energy - e_new
            if best is None or improvement > best[0]:
                best = (improvement, theta_new, e_new, exc)
        if best is None or best[0] < config.min_realized_improvement:
            break
        improvement, thetas, energy, exc = best
        ansatz.append(exc)
        trace.append((exc.describe(), float(thetas[-1]), float(improvement)))
    return make_record(meta, "qeb", None, energy, ansatz, thetas,
                       ctx.counter.energy_evaluations - evals0,
                       accepted_trace=trace, config=vars(config))
