"""Single-angle landscape reconstruction, minimization, and local steps."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adaptforge import opt1d
from adaptforge.pools import DOUBLE, SINGLE, Excitation

coeff = st.floats(-2.0, 2.0, allow_nan=False)


@given(c0=coeff, c1=coeff, s1=coeff, c2=coeff, s2=coeff,
       theta0=st.floats(-3.0, 3.0, allow_nan=False))
@settings(max_examples=80, deadline=None)
def test_reconstruction_recovers_landscape(c0, c1, s1, c2, s2, theta0):
    truth = opt1d.TrigLandscape(c0, c1, s1, c2, s2)
    fitted = opt1d.reconstruct_1d(truth.value, theta0)
    grid = np.linspace(-np.pi, np.pi, 17)
    assert np.max(np.abs(fitted.value(grid) - truth.value(grid))) < 1e-9


def test_reconstruction_budget_is_five_evaluations():
    calls = []

    def f(t):
        calls.append(t)
        return 1.0 + np.cos(t) + 0.2 * np.sin(2 * t)

    opt1d.reconstruct_1d(f, 0.3)
    assert len(calls) == 5


def test_reconstruction_matches_circuit_energies(h2_ctx):
    """Fitted landscape reproduces 50 random direct evaluations to 1e-9."""
    rng = np.random.default_rng(11)
    ansatz = [Excitation(DOUBLE, (0, 1), (2, 3)),
              Excitation(SINGLE, (1,), (3,))]
    base = [0.3, -0.2]
    for index in (0, 1):
        def f(t, index=index):
            thetas = list(base)
            thetas[index] = t
            return h2_ctx.energy(ansatz, thetas)
        landscape = opt1d.reconstruct_1d(f, base[index])
        for t in rng.uniform(-np.pi, np.pi, size=50):
            assert landscape.value(t) == pytest.approx(f(float(t)), abs=1e-9)


def test_gradient_matches_finite_differences(h2_ctx):
    ansatz = [Excitation(DOUBLE, (0, 1), (2, 3))]

    def f(t):
        return h2_ctx.energy(ansatz, [t])

    landscape = opt1d.reconstruct_1d(f, 0.0)
    h = 1e-6
    for theta in (-1.2, -0.3, 0.0, 0.4, 1.7):
        fd = (f(theta + h) - f(theta - h)) / (2 * h)
        grad = opt1d.gradient_1d(landscape, theta)
        assert grad == pytest.approx(fd, rel=1e-6, abs=1e-9)


@given(c1=coeff, s1=coeff, c2=coeff, s2=coeff)
@settings(max_examples=60, deadline=None)
def test_minimize_is_global_over_grid(c1, s1, c2, s2):
    landscape = opt1d.TrigLandscape(0.0, c1, s1, c2, s2)
    theta, value = opt1d.minimize_1d(landscape)
    assert value == pytest.approx(landscape.value(theta), abs=1e-12)
    grid = np.linspace(-np.pi, np.pi, 2048, endpoint=False)
    assert value <= float(landscape.value(grid).min()) + 1e-9


def test_minimize_flat_landscape_returns_zero():
    theta, value = opt1d.minimize_1d(opt1d.TrigLandscape(1.5, 0, 0, 0, 0))
    assert theta == 0.0
    assert value == 1.5


def test_newton_step_frozen_oracle():
    # one clipped Newton step on cos(theta) from 0.1 (central differences,
    # delta = 1e-3); value frozen against an independent hand calculation
    theta = opt1d.newton_1d(np.cos, 0.1, max_step=0.5)
    assert theta == pytest.approx(0.19983340000796482, abs=1e-12)


def test_newton_clips_to_max_step():
    theta = opt1d.newton_1d(np.cos, 0.1, max_step=0.05)
    assert theta == pytest.approx(0.15, abs=1e-12)


def test_newton_negative_curvature_falls_back_to_gradient_step():
    # -cos has negative curvature at 0: step = -sign(g) * min(max_step, |g|)
    theta = opt1d.newton_1d(lambda t: -np.cos(t), 0.2, max_step=0.5)
    assert theta < 0.2  # moved downhill despite the bad curvature


def test_parabolic_exact_on_quadratic():
    f = lambda t: 2.0 + 3.0 * (t - 0.3) ** 2
    assert opt1d.parabolic_1d(f, 0.0, spread=0.2) == pytest.approx(0.3,
                                                                   abs=1e-12)


def test_parabolic_concave_returns_best_probe():
    f = lambda t: -t * t
    assert opt1d.parabolic_1d(f, 0.0, spread=0.3) in (-0.3, 0.3)


def test_parabolic_clips_vertex():
    f = lambda t: (t - 10.0) ** 2
    out = opt1d.parabolic_1d(f, 0.0, spread=0.1)
    assert out == pytest.approx(0.2, abs=1e-12)  # clipped to +2*spread
