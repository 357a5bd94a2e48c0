"""One-dimensional optimizers over a single excitation angle.

For qubit-excitation gates the energy restricted to one angle is exactly
two-frequency: E(theta) = c0 + c1 cos + s1 sin + c2 cos2 + s2 sin2. The
reconstruction samples five angles (fixed budget), after which minimization,
gradients, and Newton polishing are closed-form on the landscape.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# offsets around the warm start; +-pi/4 rather than +-pi because theta0+pi
# and theta0-pi coincide mod 2pi and would make the fit singular
RECONSTRUCT_OFFSETS = (0.0, np.pi / 4, -np.pi / 4, np.pi / 2, -np.pi / 2)
NEWTON_DELTA = 1e-3
NEWTON_CURVATURE_FLOOR = 1e-10
GRID_POINTS = 1024


@dataclass(frozen=True)
class TrigLandscape:
    c0: float
    c1: float
    s1: float
    c2: float
    s2: float

    def value(self, theta):
        return (self.c0 + self.c1 * np.cos(theta) + self.s1 * np.sin(theta)
                + self.c2 * np.cos(2 * theta) + self.s2 * np.sin(2 * theta))

    def derivative(self, theta):
        return (-self.c1 * np.sin(theta) + self.s1 * np.cos(theta)
                - 2 * self.c2 * np.sin(2 * theta) + 2 * self.s2 * np.cos(2 * theta))

    def second_derivative(self, theta):
        return (-self.c1 * np.cos(theta) - self.s1 * np.sin(theta)
                - 4 * self.c2 * np.cos(2 * theta) - 4 * self.s2 * np.sin(2 * theta))


def reconstruct_1d(energy_fn, theta0: float = 0.0) -> TrigLandscape:
    """Fit the exact two-frequency landscape from 5 samples around theta0."""
    thetas = np.array([theta0 + d for d in RECONSTRUCT_OFFSETS])
    energies = np.array([energy_fn(t) for t in thetas])
    design = np.column_stack([
        np.ones_like(thetas), np.cos(thetas), np.sin(thetas),
        np.cos(2 * thetas), np.sin(2 * thetas),
    ])
    c = np.linalg.solve(design, energies)
    return TrigLandscape(*map(float, c))


def _wrap(theta: float) -> float:
    """Map to [-pi, pi)."""
    return float((theta + np.pi) % (2 * np.pi) - np.pi)


def minimize_1d(landscape: TrigLandscape) -> tuple[float, float]:
    """Global minimizer over [-pi, pi): dense grid seed + Newton polish."""
    grid = np.linspace(-np.pi, np.pi, GRID_POINTS, endpoint=False)
    values = landscape.value(grid)
    vmin = values.min()
    near = np.nonzero(values <= vmin + 1e-12)[0]
    theta = float(grid[near[np.argmin(np.abs(grid[near]))]])

    for _ in range(60):
        g = landscape.derivative(theta)
        if abs(g) < 1e-12:
            break
        h = landscape.second_derivative(theta)
        if h <= 0:
            break
        step = np.clip(-g / h, -0.1, 0.1)
        candidate = _wrap(theta + step)
        if landscape.value(candidate) <= landscape.value(theta):
            theta = candidate
        else:
            break
    if landscape.value(theta) > vmin:
        theta = float(grid[near[np.argmin(np.abs(grid[near]))]])
    if abs(landscape.value(theta) - landscape.value(0.0)) < 1e-14 \
            and landscape.value(0.0) <= vmin + 1e-12:
        theta = 0.0  # ties break toward the smallest |theta|
    return theta, float(landscape.value(theta))


def gradient_1d(landscape: TrigLandscape, theta: float) -> float:
    """Analytic derivative of the reconstructed landscape at theta."""
    return float(landscape.derivative(theta))


def newton_1d(energy_fn, theta0: float, max_step: float,
              delta: float = NEWTON_DELTA) -> float:
    """Single clipped Newton step from central differences (3 evaluations)."""
    e0 = energy_fn(theta0)
    ep = energy_fn(theta0 + delta)
    em = energy_fn(theta0 - delta)
    g = (ep - em) / (2 * delta)
    h = (ep - 2 * e0 + em) / delta**2
    if h <= NEWTON_CURVATURE_FLOOR:
        step = -np.sign(g) * min(max_step, abs(g))
    else:
        step = np.clip(-g / h, -max_step, max_step)
    return float(theta0 + step)


def parabolic_1d(energy_fn, theta0: float, spread: float) -> float:
    """Vertex of the parabola through 3 probes, clipped to +-2*spread."""
    thetas = (theta0 - spread, theta0, theta0 + spread)
    em, e0, ep = (energy_fn(t) for t in thetas)
    denom = em - 2 * e0 + ep
    if denom <= 0:  # concave or flat: best probe wins
        return float(thetas[int(np.argmin([em, e0, ep]))])
    vertex = theta0 + 0.5 * spread * (em - ep) / denom
    return float(np.clip(vertex, theta0 - 2 * spread, theta0 + 2 * spread))
