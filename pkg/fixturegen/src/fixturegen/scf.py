"""Restricted Hartree-Fock with DIIS for closed-shell fixture molecules."""

import numpy as np

from .basis import build_basis, nuclear_repulsion
from .integrals import compute_integrals


class SCFError(RuntimeError):
    pass


def rhf(S, T, V, eri, n_electrons, e_nuc, max_iter=200, conv=1e-10):
    """Closed-shell RHF. Returns (E_total, mo_energies, mo_coeffs)."""
    if n_electrons % 2:
        raise SCFError(f"RHF needs an even electron count, got {n_electrons}")
    nocc = n_electrons // 2
    h = T + V

    sval, svec = np.linalg.eigh(S)
    X = svec @ np.diag(sval**-0.5) @ svec.T

    def fock(D):
        J = np.einsum("pqrs,rs->pq", eri, D)
        K = np.einsum("prqs,rs->pq", eri, D)
        return h + J - 0.5 * K

    # core guess
    e, c = np.linalg.eigh(X.T @ h @ X)
    C = X @ c
    D = 2.0 * C[:, :nocc] @ C[:, :nocc].T

    errs, focks = [], []
    e_old = 0.0
    for it in range(max_iter):
        F = fock(D)
        err = F @ D @ S - S @ D @ F
        errs.append(X.T @ err @ X)
        focks.append(F)
        if len(errs) > 8:
            errs.pop(0)
            focks.pop(0)
        if len(errs) > 1:
            m = len(errs)
            B = -np.ones((m + 1, m + 1))
            B[m, m] = 0.0
            for i in range(m):
                for j in range(m):
                    B[i, j] = np.sum(errs[i] * errs[j])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                w = np.linalg.solve(B, rhs)[:m]
                F = sum(wi * Fi for wi, Fi in zip(w, focks))
            except np.linalg.LinAlgError:
                pass

        e_mo, c = np.linalg.eigh(X.T @ F @ X)
        C = X @ c
        D = 2.0 * C[:, :nocc] @ C[:, :nocc].T
        e_elec = 0.5 * np.sum(D * (h + fock(D)))
        if abs(e_elec - e_old) < conv and np.max(np.abs(errs[-1])) < 1e-8:
            return e_elec + e_nuc, e_mo, C
        e_old = e_elec
    raise SCFError(f"SCF failed to converge in {max_iter} iterations")


def run_molecule(atoms, n_electrons):
    """Full RHF pipeline for (element, xyz-bohr) atoms.

    Returns a dict with MO-basis one-/two-electron integrals (chemist
    notation), orbital energies, coefficients, and energies.
    """
    funcs, charges, centers = build_basis(atoms)
    S, T, V, eri = compute_integrals(funcs, charges, centers)
    e_nuc = nuclear_repulsion(charges, centers)
    e_hf, mo_e, C = rhf(S, T, V, eri, n_electrons, e_nuc)
    h_mo = C.T @ (T + V) @ C
    eri_mo = np.einsum("pi,qj,rk,sl,pqrs->ijkl", C, C, C, C, eri, optimize=True)
    return {
        "e_nuc": e_nuc,
        "e_hf": e_hf,
        "mo_energies": mo_e,
        "mo_coeffs": C,
        "h_mo": h_mo,
        "eri_mo": eri_mo,
        "n_electrons": n_electrons,
    }
