"""Gate-cost accounting and result-record formatting."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adaptforge.pools import DOUBLE, SINGLE, Excitation
from adaptforge.resources import (CostModel, RunRecord, csv_row, gate_cost,
                                  make_record)

S = Excitation(SINGLE, (0,), (2,))
D = Excitation(DOUBLE, (0, 1), (2, 3))


def test_gate_cost_examples():
    model = CostModel()  # (2, 13)
    assert gate_cost([], model) == 0
    assert gate_cost([S, S, S, D, D], model) == 32
    assert gate_cost([S, S, S, D, D], CostModel(1, 1)) == 5


def test_cost_model_validation():
    with pytest.raises(ValueError, match="at least 1"):
        CostModel(0, 13)
    with pytest.raises(ValueError, match="at least 1"):
        CostModel(2, 0)


excitations = st.lists(st.sampled_from([S, D]), max_size=12)


@given(ansatz=excitations, extra=excitations)
@settings(max_examples=60, deadline=None)
def test_gate_cost_additive_and_permutation_invariant(ansatz, extra):
    model = CostModel()
    assert gate_cost(ansatz + extra, model) == \
        gate_cost(ansatz, model) + gate_cost(extra, model)
    assert gate_cost(list(reversed(ansatz)), model) == gate_cost(ansatz, model)


def _record(energy=-1.13, fci=-1.1372701752):
    return RunRecord(molecule="h2", bond_length=0.7414, method="ladder",
                     level=5, final_energy=energy, fci_energy=fci,
                     n_operators=3, evaluations=42, two_qubit_gates=17)


def test_record_error_consistency():
    record = _record()
    assert record.error == record.final_energy - record.fci_energy
    assert record.error_mha == pytest.approx(1e3 * record.error)


def test_chemical_precision_threshold():
    assert _record(energy=-1.1372701752 + 1.5e-3).chemically_precise
    assert not _record(energy=-1.1372701752 + 1.7e-3).chemically_precise


def test_csv_row_formatting():
    row = csv_row(_record(energy=-1.1372701752))
    assert row["energy"] == "-1.1372701752"
    assert row["error_mha"] == "0.0000"
    assert row["bond_length"] == "0.7414"
    assert row["level"] == "5"
    assert row["n_ops"] == "3"


def test_csv_row_precision_only_blanks_resources():
    row = csv_row(_record(energy=-1.13), precision_only=True)  # 7.3 mHa off
    assert row["n_ops"] == row["evals"] == row["two_qubit_gates"] == ""
    assert row["energy"] == "-1.1300000000"  # energies stay visible
    ok = csv_row(_record(energy=-1.1372701752), precision_only=True)
    assert ok["n_ops"] == "3"


def test_make_record_fields():
    meta = dict(molecule="h2", bond_length=0.7414, fci=-1.1372701752,
                cost_model=CostModel())
    record = make_record(meta, "adapt", None, -1.137, [S, D], [0.1, 0.2], 99)
    assert record.method == "adapt"
    assert record.level is None
    assert record.n_operators == 2
    assert record.two_qubit_gates == 15
    assert record.thetas == (0.1, 0.2)
    assert record.evaluations == 99
