"""Dense statevector engine with direct qubit-excitation gates.

Gate sign convention (used identically by the gates, the 1D landscape
reconstruction, and the test oracles): the generator G maps the
from-occupied pattern to +1 times the to-occupied pattern, so

    U(theta)|from-occ> = cos(theta)|from-occ> + sin(theta)|to-occ>
    U(theta)|to-occ>   = cos(theta)|to-occ>   - sin(theta)|from-occ>

Solvers evaluate energies through an EnergyContext, which projects the
Hamiltonian once onto the HF particle-number/S_z sector and applies gates on
the sector-compressed amplitude vector; the dense engine here implements the
same gates on full 2^n vectors and is cross-checked against it in tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .exact import project_hamiltonian, sector_basis, sz_of_occupation
from .hamio import PauliHamiltonian
from .pools import SINGLE, Excitation

NORM_TOL = 1e-10
ANGLE_KEY_DECIMALS = 12


@dataclass(frozen=True)
class State:
    """Normalized dense statevector; qubit 0 is the least significant bit."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise ValueError("amplitude vector has wrong length")
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: ||psi|| = {norm}")


class EvalCounter:
    """Monotone counter of full-ansatz energy evaluations."""

    def __init__(self):
        self.energy_evaluations = 0

    def increment(self):
        self.energy_evaluations += 1


def init_hf(n_qubits: int, occupation: str) -> State:
    """Computational-basis state with qubit p set iff occupation[p] == '1'."""
    if len(occupation) != n_qubits:
        raise ValueError(
            f"occupation length {len(occupation)} != n_qubits {n_qubits}")
    index = sum(1 << p for p, b in enumerate(occupation) if b == "1")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return State(n_qubits, amps)


def apply_single_excitation(state: State, p: int, q: int, theta: float) -> State:
    """Givens rotation on the {|1_p 0_q>, |0_p 1_q>} subspace, p -> q."""
    n = state.n_qubits
    if p == q:
        raise ValueError("p and q must differ")
    if not (0 <= p < n and 0 <= q < n):
        raise ValueError("qubit index out of range")
    amps = state.amplitudes.copy()
    kernels.single_excitation_inplace(amps, p, q, np.cos(theta), np.sin(theta))
    return State(n, amps)


def apply_double_excitation(state: State, from_pair, to_pair, theta: float) -> State:
    """Rotation mixing |from-pair occupied, to-pair empty> with its swap."""
    p, q = from_pair
    r, s = to_pair
    if len({p, q, r, s}) != 4:
        raise ValueError("double excitation needs four distinct qubits")
    for idx in (p, q, r, s):
        if not 0 <= idx < state.n_qubits:
            raise ValueError("qubit index out of range")
    amps = state.amplitudes.copy()
    kernels.double_excitation_inplace(amps, p, q, r, s,
                                      np.cos(theta), np.sin(theta))
    return State(state.n_qubits, amps)


def apply_excitation(state: State, exc: Excitation, theta: float) -> State:
    if exc.kind == SINGLE:
        return apply_single_excitation(
            state, exc.from_indices[0], exc.to_indices[0], theta)
    return apply_double_excitation(state, exc.from_indices, exc.to_indices, theta)


def expectation(state: State, H: PauliHamiltonian) -> float:
    """<psi|H|psi>, term by term on the dense vector."""
    if H.n_qubits != state.n_qubits:
        raise ValueError("qubit count mismatch between state and Hamiltonian")
    psi = state.amplitudes
    idx = np.arange(psi.size, dtype=np.int64)
    total = complex(H.constant)
    for coeff, pstring in H.terms:
        x, z, ny = pstring.masks()
        zpar = np.bitwise_count(idx & np.int64(z)).astype(np.int64) & 1
        phase = (1j) ** ny * (1 - 2 * zpar)
        total += coeff * np.sum(np.conj(psi) * phase * psi[idx ^ x])
    assert abs(total.imag) < 1e-10, f"non-real expectation: {total.imag}"
    return float(total.real)


class EnergyContext:
    """Owns the Hamiltonian for one geometry plus the evaluation counter/cache.

    Energies are computed on the sector-compressed representation: the HF
    occupation fixes (n_electrons, sz), all excitation gates preserve that
    sector, and the Hamiltonian is projected once.
    """

    def __init__(self, H: PauliHamiltonian, hf_occupation: str,
                 counter: EvalCounter | None = None):
        self.H = H
        self.hf_occupation = hf_occupation
        self.counter = counter if counter is not None else EvalCounter()
        self.n_qubits = H.n_qubits
        n_e = hf_occupation.count("1")
        self.basis = sector_basis(H.n_qubits, n_e, sz_of_occupation(hf_occupation))
        self.h_sector = project_hamiltonian(H, self.basis)
        hf_index = sum(1 << p for p, b in enumerate(hf_occupation) if b == "1")
        self.hf_position = int(np.searchsorted(self.basis, hf_index))
        self._pairs = {}   # Excitation -> (u positions, v positions)
        self._cache = {}   # (op keys, rounded angles) -> energy

    def _gate_pairs(self, exc: Excitation):
        pairs = self._pairs.get(exc)
        if pairs is None:
            occ = sum(1 << p for p in exc.from_indices)
            emp = sum(1 << p for p in exc.to_indices)
            basis = self.basis
            sel = ((basis & occ) == occ) & ((basis & emp) == 0)
            u = np.nonzero(sel)[0]
            v = np.searchsorted(basis, basis[u] ^ (occ | emp))
            pairs = (u, v)
            self._pairs[exc] = pairs
        return pairs

    def state_vector(self, ansatz, thetas) -> np.ndarray:
        """Sector-compressed (real) amplitudes of the ansatz state."""
        x = np.zeros(len(self.basis))
        x[self.hf_position] = 1.0
        for exc, theta in zip(ansatz, thetas):
            u, v = self._gate_pairs(exc)
            c, s = np.cos(theta), np.sin(theta)
            xu = x[u]
            xv = x[v]
            x[u] = c * xu - s * xv
            x[v] = s * xu + c * xv
        return x

    def energy(self, ansatz, thetas) -> float:
        """Counted, cached energy of the ansatz at the given angles."""
        ansatz = tuple(ansatz)
        thetas = tuple(float(t) for t in thetas)
        if len(ansatz) != len(thetas):
            raise ValueError("angle vector length does not match ansatz")
        # zero-angle gates are identities, so they are dropped from the key:
        # an ansatz probed at theta=0 shares the incumbent's cache entry
        rounded = [round(t, ANGLE_KEY_DECIMALS) for t in thetas]
        key = tuple((op, t) for op, t in zip(ansatz, rounded) if t != 0.0)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        x = self.state_vector(ansatz, thetas)
        value = float(x @ (self.h_sector @ x))
        self.counter.increment()
        self._cache[key] = value
        return value


def energy_of_ansatz(ctx: EnergyContext, ansatz, thetas) -> float:
    """Prepare HF, apply the ansatz, return the (counted) energy."""
    return ctx.energy(ansatz, thetas)
