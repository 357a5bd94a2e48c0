"""The jitted amplitude kernels agree with the pure-numpy reference path."""

import numpy as np

from adaptforge import kernels


def _random_amps(rng, n_qubits=6):
    amps = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return (amps / np.linalg.norm(amps)).astype(np.complex128)


def test_single_kernel_matches_numpy_reference():
    rng = np.random.default_rng(3)
    for _ in range(20):
        amps = _random_amps(rng)
        p, q = rng.choice(6, size=2, replace=False)
        theta = rng.uniform(-np.pi, np.pi)
        c, s = np.cos(theta), np.sin(theta)
        expected = kernels._single_numpy(amps.copy(), int(p), int(q), c, s)
        got = kernels.single_excitation_inplace(amps.copy(), int(p), int(q), c, s)
        assert np.max(np.abs(got - expected)) < 1e-14


def test_double_kernel_matches_numpy_reference():
    rng = np.random.default_rng(4)
    for _ in range(20):
        amps = _random_amps(rng)
        p, q, r, s = (int(x) for x in rng.choice(6, size=4, replace=False))
        theta = rng.uniform(-np.pi, np.pi)
        c, sn = np.cos(theta), np.sin(theta)
        expected = kernels._double_numpy(amps.copy(), p, q, r, s, c, sn)
        got = kernels.double_excitation_inplace(amps.copy(), p, q, r, s, c, sn)
        assert np.max(np.abs(got - expected)) < 1e-14
