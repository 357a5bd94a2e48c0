"""Molecular integral ingestion and the Jordan-Wigner qubit Hamiltonian.

Spin-orbital convention is interleaved: index 2i is the alpha spin of spatial
orbital i, index 2i+1 the beta spin. Two-body coefficients h_pqrs multiply
a+_p a+_q a_r a_s (physicist ordering); the fixture generator emits the same
convention.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

SYMMETRY_TOL = 1e-10
PRUNE_TOL = 1e-12
IMAG_TOL = 1e-12
MP2_DEGENERACY_TOL = 1e-8


class IntegralFormatError(ValueError):
    """Raised when an integral file is missing fields or violates invariants."""


class DataCorruptionError(ValueError):
    """Raised when transformed data fails an exactness check."""


@dataclass(frozen=True)
class IntegralSet:
    """One geometry's integrals and mean-field data. Immutable after load."""

    molecule_label: str
    bond_length: float
    basis_label: str
    n_spin_orbitals: int
    n_electrons: int
    constant: float
    one_body: np.ndarray
    two_body: tuple  # ((p, q, r, s, value), ...)
    orbital_energies: np.ndarray  # per spatial orbital
    hf_occupation: str
    irreps: tuple | None = None
    two_body_dense: np.ndarray = field(repr=False, default=None)

    def spin_orbital_energy(self, p: int) -> float:
        return float(self.orbital_energies[p // 2])

    @property
    def occupied(self) -> tuple:
        return tuple(p for p, b in enumerate(self.hf_occupation) if b == "1")

    @property
    def virtual(self) -> tuple:
        return tuple(p for p, b in enumerate(self.hf_occupation) if b == "0")


_REQUIRED_FIELDS = [
    "format_version", "molecule_label", "bond_length", "basis_label",
    "n_spin_orbitals", "n_electrons", "constant", "one_body", "two_body",
    "orbital_energies", "hf_occupation",
]


def load_integrals(path) -> IntegralSet:
    """Load and validate an Integral File Format document."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise IntegralFormatError(f"{path}: not valid JSON ({exc})") from exc

    for name in _REQUIRED_FIELDS:
        if name not in doc:
            raise IntegralFormatError(f"{path}: missing field {name!r}")
    if doc["format_version"] != 1:
        raise IntegralFormatError(
            f"{path}: unsupported format_version {doc['format_version']!r}")

    n = int(doc["n_spin_orbitals"])
    n_e = int(doc["n_electrons"])
    if n_e > n:
        raise IntegralFormatError(
            f"{path}: n_electrons={n_e} exceeds n_spin_orbitals={n}")

    one_body = np.asarray(doc["one_body"], dtype=float)
    if one_body.shape != (n, n):
        raise IntegralFormatError(
            f"{path}: one_body has shape {one_body.shape}, expected {(n, n)}")
    asym = np.max(np.abs(one_body - one_body.T))
    if asym > SYMMETRY_TOL:
        raise IntegralFormatError(
            f"{path}: one_body asymmetric by {asym:.3e} Ha (tol {SYMMETRY_TOL})")

    occupation = str(doc["hf_occupation"])
    if len(occupation) != n:
        raise IntegralFormatError(
            f"{path}: hf_occupation length {len(occupation)} != {n}")
    n_set = occupation.count("1")
    if n_set != n_e:
        raise IntegralFormatError(
            f"{path}: hf_occupation has {n_set} set bits but n_electrons={n_e}")

    dense = np.zeros((n, n, n, n))
    two_body = []
    for entry in doc["two_body"]:
        p, q, r, s, value = entry
        p, q, r, s = int(p), int(q), int(r), int(s)
        if max(p, q, r, s) >= n:
            raise IntegralFormatError(
                f"{path}: two_body index {(p, q, r, s)} out of range (n={n})")
        dense[p, q, r, s] = float(value)
        two_body.append((p, q, r, s, float(value)))

    energies = np.asarray(doc["orbital_energies"], dtype=float)
    if len(energies) != n // 2:
        raise IntegralFormatError(
            f"{path}: orbital_energies length {len(energies)} != {n // 2}")

    irreps = doc.get("irreps")
    return IntegralSet(
        molecule_label=str(doc["molecule_label"]),
        bond_length=float(doc["bond_length"]),
        basis_label=str(doc["basis_label"]),
        n_spin_orbitals=n,
        n_electrons=n_e,
        constant=float(doc["constant"]),
        one_body=one_body,
        two_body=tuple(two_body),
        orbital_energies=energies,
        hf_occupation=occupation,
        irreps=tuple(irreps) if irreps is not None else None,
        two_body_dense=dense,
    )


@dataclass(frozen=True)
class PauliString:
    """Tensor product of X/Y/Z factors; identity on unlisted qubits."""

    n_qubits: int
    factors: tuple  # ((qubit, letter), ...) sorted by qubit

    def __post_init__(self):
        object.__setattr__(self, "factors",
                           tuple(sorted((int(q), l) for q, l in self.factors)))
        for q, letter in self.factors:
            if not 0 <= q < self.n_qubits:
                raise ValueError(f"qubit index {q} out of range")
            if letter not in "XYZ":
                raise ValueError(f"invalid Pauli letter {letter!r}")

    def masks(self):
        """(xmask, zmask, n_y) with P = i^n_y * X^xmask Z^zmask."""
        x = z = ny = 0
        for q, letter in self.factors:
            if letter in "XY":
                x |= 1 << q
            if letter in "ZY":
                z |= 1 << q
            if letter == "Y":
                ny += 1
        return x, z, ny

    def __str__(self):
        if not self.factors:
            return "I"
        return " ".join(f"{l}{q}" for q, l in self.factors)


@dataclass(frozen=True)
class PauliHamiltonian:
    """constant + sum_k coeff_k * PauliString_k with real coefficients."""

    n_qubits: int
    constant: float
    terms: tuple  # ((coeff, PauliString), ...)

    def __len__(self):
        return len(self.terms)


def _ladder_terms(p: int, dagger: bool):
    """a_p (or a+_p) as {(xmask, zmask): coeff} with operator X^x Z^z."""
    chain = (1 << p) - 1
    bit = 1 << p
    sign = 0.5 if dagger else -0.5
    return {(bit, chain): 0.5, (bit, chain | bit): sign}


def _mask_mul(term1, term2):
    """(X^a Z^b)(X^c Z^d) -> (masks, +-1) via the symplectic sign rule."""
    (a, b), (c, d) = term1, term2
    sign = -1.0 if bin(b & c).count("1") % 2 else 1.0
    return (a ^ c, b ^ d), sign


def _accumulate_product(out, coeff, ops):
    """Add coeff * product(ops) into dict out; ops are mask-term dicts."""
    prod = {(0, 0): coeff}
    for op in ops:
        nxt = {}
        for m1, c1 in prod.items():
            for m2, c2 in op.items():
                key, sign = _mask_mul(m1, m2)
                nxt[key] = nxt.get(key, 0.0) + c1 * c2 * sign
        prod = nxt
    for key, c in prod.items():
        out[key] = out.get(key, 0.0) + c


def jw_transform(ints: IntegralSet) -> PauliHamiltonian:
    """Jordan-Wigner image of the second-quantized Hamiltonian.

    Terms are merged and pruned below 1e-12 Ha; a non-cancelling imaginary
    residue above 1e-12 raises DataCorruptionError.
    """
    n = ints.n_spin_orbitals
    create = [_ladder_terms(p, True) for p in range(n)]
    destroy = [_ladder_terms(p, False) for p in range(n)]

    acc = {}
    rows, cols = np.nonzero(np.abs(ints.one_body) > 0)
    for p, q in zip(rows.tolist(), cols.tolist()):
        _accumulate_product(acc, ints.one_body[p, q], [create[p], destroy[q]])
    for p, q, r, s, value in ints.two_body:
        _accumulate_product(acc, 0.5 * value,
                            [create[p], create[q], destroy[r], destroy[s]])

    constant = ints.constant
    terms = []
    for (x, z), coeff in sorted(acc.items()):
        ny = bin(x & z).count("1")
        # X^x Z^z = (-i)^ny * standard string with Y where both bits set
        std = coeff * (-1j) ** ny
        if abs(std.imag) > IMAG_TOL:
            raise DataCorruptionError(
                f"non-Hermitian residue {std.imag:.3e} on term x={x:b} z={z:b}")
        value = std.real
        if x == 0 and z == 0:
            constant += value
            continue
        if abs(value) < PRUNE_TOL:
            continue
        factors = []
        for q in range(n):
            bx, bz = (x >> q) & 1, (z >> q) & 1
            if bx and bz:
                factors.append((q, "Y"))
            elif bx:
                factors.append((q, "X"))
            elif bz:
                factors.append((q, "Z"))
        terms.append((value, PauliString(n, tuple(factors))))
    return PauliHamiltonian(n, float(constant), tuple(terms))


def hf_energy(ints: IntegralSet) -> float:
    """Mean-field energy of the hf_occupation determinant, from integrals only."""
    occ = ints.occupied
    h2 = ints.two_body_dense
    e = ints.constant + sum(ints.one_body[p, p] for p in occ)
    e += 0.5 * sum(h2[p, q, q, p] - h2[p, q, p, q] for p in occ for q in occ)
    return float(e)


def mp2_amplitude(ints: IntegralSet, i: int, j: int, a: int, b: int,
                  return_flag: bool = False):
    """MP2 amplitude <ab||ij> / (e_i + e_j - e_a - e_b) for a double i,j -> a,b.

    A degenerate denominator (< 1e-8 Ha) yields amplitude 0; with
    return_flag=True the degeneracy is reported alongside.
    """
    h2 = ints.two_body_dense
    # <ab|ij> = h_{a b j i} under h_pqrs = <pq|sr>
    integral = h2[a, b, j, i] - h2[a, b, i, j]
    denom = (ints.spin_orbital_energy(i) + ints.spin_orbital_energy(j)
             - ints.spin_orbital_energy(a) - ints.spin_orbital_energy(b))
    if abs(denom) < MP2_DEGENERACY_TOL:
        return (0.0, True) if return_flag else 0.0
    amp = float(integral / denom)
    return (amp, False) if return_flag else amp
