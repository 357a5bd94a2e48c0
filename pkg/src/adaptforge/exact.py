"""FCI oracle: exact ground energy in the particle-number / S_z sector."""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.linalg import eigsh

from .hamio import PauliHamiltonian

DENSE_CUTOFF = 2000
ALPHA_MASK_CACHE = {}


def _alpha_mask(n_qubits: int) -> int:
    # even qubits are alpha under interleaved ordering
    if n_qubits not in ALPHA_MASK_CACHE:
        ALPHA_MASK_CACHE[n_qubits] = sum(1 << p for p in range(0, n_qubits, 2))
    return ALPHA_MASK_CACHE[n_qubits]


def sz_of_occupation(occupation: str) -> int:
    """Twice the spin projection (n_alpha - n_beta) of a bitstring."""
    n_alpha = sum(1 for p, b in enumerate(occupation) if b == "1" and p % 2 == 0)
    n_beta = occupation.count("1") - n_alpha
    return n_alpha - n_beta


def sector_basis(n_qubits: int, n_electrons: int, sz=None) -> np.ndarray:
    """Ascending basis indices with popcount n_electrons (and alpha-beta split sz)."""
    if not 0 <= n_electrons <= n_qubits:
        raise ValueError("n_electrons out of range")
    idx = np.arange(1 << n_qubits, dtype=np.int64)
    pop = np.bitwise_count(idx)
    sel = pop == n_electrons
    if sz is not None:
        amask = _alpha_mask(n_qubits)
        n_alpha = np.bitwise_count(idx & amask).astype(np.int64)
        sel &= (2 * n_alpha - n_electrons) == sz
    return idx[sel]


def project_hamiltonian(H: PauliHamiltonian, basis: np.ndarray):
    """H restricted to the span of the given computational-basis indices.

    Returns a dense array below DENSE_CUTOFF dimension, csr_matrix above.
    Pauli terms mapping outside the sector are dropped (they contribute
    nothing to sector-supported expectation values when H conserves the
    sector, which holds for all shipped Hamiltonians).
    """
    dim = len(basis)
    dense = dim <= DENSE_CUTOFF
    mat = np.zeros((dim, dim)) if dense else None
    rows_acc, cols_acc, vals_acc = [], [], []

    cols = np.arange(dim)
    for coeff, pstring in H.terms:
        x, z, ny = pstring.masks()
        targets = basis ^ x
        rows = np.searchsorted(basis, targets)
        inside = (rows < dim)
        inside &= basis[np.minimum(rows, dim - 1)] == targets
        zpar = np.bitwise_count(basis & np.int64(z)).astype(np.int64) & 1
        phase = (1j) ** ny * (1 - 2 * zpar)
        vals = coeff * phase
        if ny % 2 == 0:
            vals = vals.real
        else:
            vals = vals.imag * 1j
        # Hermitian H with real coefficients: imaginary parts cancel in the
        # merged matrix; accumulate complex and realify at the end.
        if dense:
            np.add.at(mat, (rows[inside], cols[inside]), vals[inside].real)
        else:
            rows_acc.append(rows[inside])
            cols_acc.append(cols[inside])
            vals_acc.append(vals[inside].real)

    if dense:
        mat += H.constant * np.eye(dim)
        return mat
    rows = np.concatenate(rows_acc + [cols])
    cols_all = np.concatenate(cols_acc + [cols])
    vals = np.concatenate(vals_acc + [np.full(dim, H.constant)])
    return csr_matrix((vals, (rows, cols_all)), shape=(dim, dim))


def fci_energy(H: PauliHamiltonian, n_electrons: int, sz=None) -> float:
    """Lowest eigenvalue of H in the (n_electrons, sz) sector."""
    basis = sector_basis(H.n_qubits, n_electrons, sz)
    if len(basis) == 0:
        raise ValueError("empty sector")
    mat = project_hamiltonian(H, basis)
    if isinstance(mat, np.ndarray):
        return float(np.linalg.eigvalsh(mat)[0])
    return float(eigsh(mat, k=1, which="SA")[0][0])
