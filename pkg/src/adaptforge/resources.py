"""Resource accounting: two-qubit gate costs and per-run result records."""

from __future__ import annotations

from dataclasses import dataclass, field

from .pools import SINGLE, Excitation

CHEMICAL_PRECISION_HA = 1.6e-3


@dataclass(frozen=True)
class CostModel:
    """Two-qubit gate counts per compiled excitation gate."""

    two_qubit_per_single: int = 2
    two_qubit_per_double: int = 13

    def __post_init__(self):
        if self.two_qubit_per_single < 1 or self.two_qubit_per_double < 1:
            raise ValueError("gate costs must be at least 1")


def gate_cost(ansatz, model: CostModel) -> int:
    """Total two-qubit gate count of an excitation sequence."""
    return sum(model.two_qubit_per_single if exc.kind == SINGLE
               else model.two_qubit_per_double for exc in ansatz)


def excitation_cost(exc: Excitation, model: CostModel) -> int:
    return (model.two_qubit_per_single if exc.kind == SINGLE
            else model.two_qubit_per_double)


@dataclass
class RunRecord:
    """Outcome of one solver run on one molecule/geometry."""

    molecule: str
    bond_length: float
    method: str
    level: int | None
    final_energy: float
    fci_energy: float
    n_operators: int
    evaluations: int
    two_qubit_gates: int
    ansatz: tuple = ()
    thetas: tuple = ()
    accepted_trace: tuple = ()
    config: dict = field(default_factory=dict)

    @property
    def error(self) -> float:
        return self.final_energy - self.fci_energy

    @property
    def error_mha(self) -> float:
        return 1e3 * self.error

    @property
    def chemically_precise(self) -> bool:
        return abs(self.error) <= CHEMICAL_PRECISION_HA


def make_record(meta, method, level, energy, ansatz, thetas, evals,
                accepted_trace=(), config=None) -> RunRecord:
    """Assemble a RunRecord from solver outputs and run metadata.

    meta: mapping with molecule, bond_length, fci, cost_model.
    """
    return RunRecord(
        molecule=meta["molecule"],
        bond_length=float(meta["bond_length"]),
        method=method,
        level=level,
        final_energy=float(energy),
        fci_energy=float(meta["fci"]),
        n_operators=len(ansatz),
        evaluations=int(evals),
        two_qubit_gates=gate_cost(ansatz, meta["cost_model"]),
        ansatz=tuple(ansatz),
        thetas=tuple(float(t) for t in thetas),
        accepted_trace=tuple(accepted_trace),
        config=dict(config or {}),
    )


CSV_COLUMNS = ("molecule", "bond_length", "method", "level", "energy", "fci",
               "error_mha", "n_ops", "evals", "two_qubit_gates")


def csv_row(record: RunRecord, precision_only: bool = False) -> dict:
    """Column -> formatted string. Energies carry 10 decimals (Ha), errors 4
    (mHa). With precision_only, resource columns of runs that miss chemical
    precision are blanked (the resources of a failed run are not comparable).
    """
    blank = precision_only and not record.chemically_precise
    return {
        "molecule": record.molecule,
        "bond_length": f"{record.bond_length:g}",
        "method": record.method,
        "level": "" if record.level is None else str(record.level),
        "energy": f"{record.final_energy:.10f}",
        "fci": f"{record.fci_energy:.10f}",
        "error_mha": f"{record.error_mha:.4f}",
        "n_ops": "" if blank else str(record.n_operators),
        "evals": "" if blank else str(record.evaluations),
        "two_qubit_gates": "" if blank else str(record.two_qubit_gates),
    }
