"""Hot amplitude-update kernels for the dense statevector engine.

Numba-jitted by default; set ADAPTFORGE_NO_NUMBA=1 to select the pure-numpy
vectorized path (same semantics, used as fallback and benchmark baseline).
benchmarks/bench_kernels.py compares the two.
"""

import os

import numpy as np

USE_NUMBA = os.environ.get("ADAPTFORGE_NO_NUMBA", "") not in ("1", "true", "yes")


def _single_numpy(amps, p, q, c, s):
    idx = np.arange(amps.size, dtype=np.int64)
    sel = ((idx >> p) & 1 == 1) & ((idx >> q) & 1 == 0)
    u = idx[sel]
    v = u ^ ((1 << p) | (1 << q))
    au, av = amps[u].copy(), amps[v].copy()
    amps[u] = c * au - s * av
    amps[v] = s * au + c * av
    return amps


def _double_numpy(amps, p, q, r, s, c, sn):
    idx = np.arange(amps.size, dtype=np.int64)
    occ = (1 << p) | (1 << q)
    emp = (1 << r) | (1 << s)
    sel = ((idx & occ) == occ) & ((idx & emp) == 0)
    u = idx[sel]
    v = u ^ occ ^ emp
    au, av = amps[u].copy(), amps[v].copy()
    amps[u] = c * au - sn * av
    amps[v] = sn * au + c * av
    return amps


if USE_NUMBA:
    from numba import njit

    @njit(cache=True)
    def _single_numba(amps, p, q, c, s):
        pb = np.int64(1) << p
        qb = np.int64(1) << q
        flip = pb | qb
        for i in range(amps.size):
            if (i & pb) != 0 and (i & qb) == 0:
                j = i ^ flip
                au = amps[i]
                av = amps[j]
                amps[i] = c * au - s * av
                amps[j] = s * au + c * av
        return amps

    @njit(cache=True)
    def _double_numba(amps, p, q, r, s, c, sn):
        occ = (np.int64(1) << p) | (np.int64(1) << q)
        emp = (np.int64(1) << r) | (np.int64(1) << s)
        flip = occ | emp
        for i in range(amps.size):
            if (i & occ) == occ and (i & emp) == 0:
                j = i ^ flip
                au = amps[i]
                av = amps[j]
                amps[i] = c * au - sn * av
                amps[j] = sn * au + c * av
        return amps

    single_excitation_inplace = _single_numba
    double_excitation_inplace = _double_numba
else:
    single_excitation_inplace = _single_numpy
    double_excitation_inplace = _double_numpy
