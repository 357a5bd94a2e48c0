"""Determinant-based FCI in the fixed (N_alpha, N_beta) sector.

Builds the Hamiltonian matrix by applying second-quantized operator strings
directly to occupation bitstrings (spin orbital p <-> bit p, interleaved
alpha/beta ordering), which keeps this oracle independent of any qubit-mapping
code downstream.
"""

from itertools import combinations

import numpy as np


def spin_orbital_integrals(h_mo, eri_mo):
    """Interleaved spin-orbital integrals from spatial MO integrals.

    Returns (h1, h2) with H = sum h1[p,q] a+_p a_q
    + 1/2 sum h2[p,q,r,s] a+_p a+_q a_r a_s, i.e. h2[p,q,r,s] = <pq|sr>.
    """
    n = 2 * h_mo.shape[0]
    h1 = np.zeros((n, n))
    h2 = np.zeros((n, n, n, n))
    for p in range(n):
        for q in range(n):
            if p % 2 == q % 2:
                h1[p, q] = h_mo[p // 2, q // 2]
    # <pq|sr> = (ps|qr)_chemist * delta(sp,ss) * delta(sq,sr)
    for p in range(n):
        for q in range(n):
            for r in range(n):
                if q % 2 != r % 2:
                    continue
                for s in range(n):
                    if p % 2 != s % 2:
                        continue
                    h2[p, q, r, s] = eri_mo[p // 2, s // 2, q // 2, r // 2]
    return h1, h2


def sector_determinants(n_spin, n_alpha, n_beta):
    """Ascending bitmask list of determinants with the given alpha/beta counts."""
    n_spatial = n_spin // 2
    alphas = [sum(1 << (2 * i) for i in occ)
              for occ in combinations(range(n_spatial), n_alpha)]
    betas = [sum(1 << (2 * i + 1) for i in occ)
             for occ in combinations(range(n_spatial), n_beta)]
    return np.array(sorted(a | b for a in alphas for b in betas), dtype=np.int64)


def _parity_below(dets, orb):
    mask = (1 << orb) - 1
    return 1 - 2 * (np.bitwise_count(dets & mask).astype(np.int64) & 1)


def _annihilate(dets, sign, orb):
    ok = (dets >> orb) & 1 == 1
    sign = sign * _parity_below(dets, orb)
    return dets & ~np.int64(1 << orb), sign, ok


def _create(dets, sign, orb):
    ok = (dets >> orb) & 1 == 0
    sign = sign * _parity_below(dets, orb)
    return dets | np.int64(1 << orb), sign, ok


def build_hamiltonian(h1, h2, dets):
    """Dense sector Hamiltonian matrix over the determinant list."""
    dim = len(dets)
    H = np.zeros((dim, dim))
    cols = np.arange(dim)

    def scatter(new_dets, sign, ok, value):
        if not ok.any():
            return
        nd, sg, cl = new_dets[ok], sign[ok], cols[ok]
        rows = np.searchsorted(dets, nd)
        valid = (rows < dim) & (dets[np.minimum(rows, dim - 1)] == nd)
        np.add.at(H, (rows[valid], cl[valid]), value * sg[valid])

    nz1 = np.argwhere(np.abs(h1) > 1e-14)
    for p, q in nz1:
        d1, s1, ok1 = _annihilate(dets, np.ones(dim, dtype=np.int64), q)
        d2, s2, ok2 = _create(d1, s1, p)
        scatter(d2, s2, ok1 & ok2, h1[p, q])

    nz2 = np.argwhere(np.abs(h2) > 1e-14)
    for p, q, r, s in nz2:
        d1, s1, ok1 = _annihilate(dets, np.ones(dim, dtype=np.int64), s)
        d2, s2, ok2 = _annihilate(d1, s1, r)
        d3, s3, ok3 = _create(d2, s2, q)
        d4, s4, ok4 = _create(d3, s3, p)
        scatter(d4, s4, ok1 & ok2 & ok3 & ok4, 0.5 * h2[p, q, r, s])
    return H


def fci_ground_energy(h_mo, eri_mo, n_electrons, e_nuc):
    """Lowest eigenvalue of the molecular Hamiltonian in the HF spin sector."""
    n_spin = 2 * h_mo.shape[0]
    n_alpha = (n_electrons + 1) // 2
    n_beta = n_electrons // 2
    h1, h2 = spin_orbital_integrals(h_mo, eri_mo)
    dets = sector_determinants(n_spin, n_alpha, n_beta)
    H = build_hamiltonian(h1, h2, dets)
    assert np.allclose(H, H.T, atol=1e-9)
    return float(np.linalg.eigvalsh(H)[0]) + e_nuc
