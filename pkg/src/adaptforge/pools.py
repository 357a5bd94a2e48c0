"""Operator pools of single/double qubit excitations over spin orbitals.

Interleaved ordering throughout: even indices alpha, odd beta. Doubles are
stored with canonical (low, high) index pairs and from-pair < to-pair, so the
same physical excitation never appears twice with opposite directions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

SINGLE = "single"
DOUBLE = "double"

FAMILIES = ("UCCSD", "UCCGSD", "kUpCCGSD")


@dataclass(frozen=True, order=True)
class Excitation:
    kind: str
    from_indices: tuple
    to_indices: tuple
    paired: bool = False

    def __post_init__(self):
        object.__setattr__(self, "from_indices", tuple(sorted(self.from_indices)))
        object.__setattr__(self, "to_indices", tuple(sorted(self.to_indices)))
        if self.kind == SINGLE:
            if len(self.from_indices) != 1 or len(self.to_indices) != 1:
                raise ValueError("single excitation takes one index per side")
            if self.from_indices[0] % 2 != self.to_indices[0] % 2:
                raise ValueError("single excitation must conserve spin")
        elif self.kind == DOUBLE:
            touched = set(self.from_indices) | set(self.to_indices)
            if len(self.from_indices) != 2 or len(self.to_indices) != 2 \
                    or len(touched) != 4:
                raise ValueError("double excitation needs four distinct indices")
        else:
            raise ValueError(f"unknown excitation kind {self.kind!r}")

    @property
    def indices(self) -> tuple:
        return self.from_indices + self.to_indices

    @property
    def span(self) -> int:
        return max(self.indices) - min(self.indices)

    def describe(self) -> str:
        f = ",".join(map(str, self.from_indices))
        t = ",".join(map(str, self.to_indices))
        return f"{self.kind[0]}({f}->{t})"


@dataclass(frozen=True)
class Pool:
    family: str
    excitations: tuple

    def __len__(self):
        return len(self.excitations)

    def __iter__(self):
        return iter(self.excitations)


def _spin_count(pair) -> int:
    """Number of alpha (even) indices in a pair."""
    return sum(1 for p in pair if p % 2 == 0)


def _is_paired(frm, to) -> bool:
    return (frm[0] % 2 == 0 and frm[1] == frm[0] + 1
            and to[0] % 2 == 0 and to[1] == to[0] + 1)


def generate_pool(family: str, n_spin_orbitals: int, hf_occupation: str) -> Pool:
    """Deterministic (lexicographically ordered) pool of a given family."""
    if n_spin_orbitals % 2:
        raise ValueError("n_spin_orbitals must be even")
    if family not in FAMILIES:
        raise ValueError(f"unknown pool family {family!r}")
    n = n_spin_orbitals
    occ = [p for p in range(n) if hf_occupation[p] == "1"]
    virt = [p for p in range(n) if hf_occupation[p] == "0"]

    singles, doubles = [], []
    if family == "UCCSD":
        for p in occ:
            for q in virt:
                if p % 2 == q % 2:
                    singles.append(Excitation(SINGLE, (p,), (q,)))
        for frm in itertools.combinations(occ, 2):
            for to in itertools.combinations(virt, 2):
                if _spin_count(frm) == _spin_count(to):
                    doubles.append(
                        Excitation(DOUBLE, frm, to, paired=_is_paired(frm, to)))
    elif family == "UCCGSD":
        for p, q in itertools.combinations(range(n), 2):
            if p % 2 == q % 2:
                singles.append(Excitation(SINGLE, (p,), (q,)))
        for frm in itertools.combinations(range(n), 2):
            for to in itertools.combinations(range(n), 2):
                if frm < to and not (set(frm) & set(to)) \
                        and _spin_count(frm) == _spin_count(to):
                    doubles.append(
                        Excitation(DOUBLE, frm, to, paired=_is_paired(frm, to)))
    else:  # one-layer k-UpCCGSD: generalized singles + paired doubles
        for p, q in itertools.combinations(range(n), 2):
            if p % 2 == q % 2:
                singles.append(Excitation(SINGLE, (p,), (q,)))
        for i, a in itertools.combinations(range(n // 2), 2):
            doubles.append(Excitation(
                DOUBLE, (2 * i, 2 * i + 1), (2 * a, 2 * a + 1), paired=True))

    singles.sort()
    doubles.sort()
    return Pool(family, tuple(singles) + tuple(doubles))


def _irrep_product(label1: str, label2: str, table) -> str:
    if label1 == label2:
        # abelian groups with real irreps: every label is self-inverse
        return "__identity__"
    if table is None or (label1, label2) not in table:
        raise KeyError(f"missing irrep product for ({label1}, {label2})")
    return table[(label1, label2)]


def symmetry_filter(pool: Pool, irreps, product_table=None) -> Pool:
    """Keep excitations whose created/annihilated irrep products match.

    irreps: one label per spatial orbital. product_table: mapping
    (label_a, label_b) -> label for distinct labels; pairs of equal labels
    compose to the identity automatically (real abelian irreps).
    """
    irreps = list(irreps)

    def label(p):
        return irreps[p // 2]

    def product(indices):
        labels = sorted(label(p) for p in indices)
        if len(labels) == 1:
            return labels[0]
        return _irrep_product(labels[0], labels[1], product_table)

    kept = [exc for exc in pool
            if product(exc.from_indices) == product(exc.to_indices)]
    return Pool(pool.family, tuple(kept))


def frozen_core_filter(pool: Pool, core_spatial_orbitals, relaxed: bool = False) -> Pool:
    """Remove core excitations: strict drops any touch, relaxed only pure core-core."""
    core = set(core_spatial_orbitals)
    if not core:
        return pool

    def is_core(p):
        return p // 2 in core

    kept = []
    for exc in pool:
        touched = [is_core(p) for p in exc.indices]
        if relaxed:
            if not all(touched):
                kept.append(exc)
        elif not any(touched):
            kept.append(exc)
    return Pool(pool.family, tuple(kept))
