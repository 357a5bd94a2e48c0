"""Integral file loading, validation, JW transform, HF/MP2 helpers."""

import json

import pytest

from adaptforge.hamio import (IntegralFormatError, hf_energy, load_integrals,
                              mp2_amplitude)

from conftest import fixture_path


def _h2_doc():
    return json.loads(fixture_path("h2", "0.7414").read_text())


def _write(tmp_path, doc):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    return path


def test_load_h2_fields(h2_ints):
    assert h2_ints.n_spin_orbitals == 4
    assert h2_ints.n_electrons == 2
    assert h2_ints.hf_occupation == "1100"
    assert h2_ints.occupied == (0, 1)
    assert h2_ints.virtual == (2, 3)
    assert h2_ints.one_body.shape == (4, 4)
    assert h2_ints.two_body_dense.shape == (4, 4, 4, 4)


def test_hf_energy_matches_golden(h2_ints, golden):
    assert hf_energy(h2_ints) == pytest.approx(golden["h2"]["0.7414"]["hf"],
                                               abs=1e-10)


def test_lih_hf_energy_matches_golden(lih_ints, golden):
    assert hf_energy(lih_ints) == pytest.approx(golden["lih"]["1.5"]["hf"],
                                                abs=1e-10)


def test_invalid_json_raises(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(IntegralFormatError, match="not valid JSON"):
        load_integrals(path)


def test_missing_field_raises(tmp_path):
    doc = _h2_doc()
    del doc["one_body"]
    with pytest.raises(IntegralFormatError, match="missing field 'one_body'"):
        load_integrals(_write(tmp_path, doc))


def test_bad_format_version_raises(tmp_path):
    doc = _h2_doc()
    doc["format_version"] = 99
    with pytest.raises(IntegralFormatError, match="format_version"):
        load_integrals(_write(tmp_path, doc))


def test_asymmetric_one_body_raises(tmp_path):
    doc = _h2_doc()
    doc["one_body"][0][1] = doc["one_body"][0][1] + 1.0
    with pytest.raises(IntegralFormatError, match="asymmetric"):
        load_integrals(_write(tmp_path, doc))


def test_occupation_electron_mismatch_raises(tmp_path):
    doc = _h2_doc()
    doc["hf_occupation"] = "1110"
    with pytest.raises(IntegralFormatError, match="set bits"):
        load_integrals(_write(tmp_path, doc))


def test_occupation_length_mismatch_raises(tmp_path):
    doc = _h2_doc()
    doc["hf_occupation"] = "110"
    with pytest.raises(IntegralFormatError, match="length"):
        load_integrals(_write(tmp_path, doc))


def test_two_body_index_out_of_range_raises(tmp_path):
    doc = _h2_doc()
    doc["two_body"].append([0, 1, 2, 9, 0.1])
    with pytest.raises(IntegralFormatError, match="out of range"):
        load_integrals(_write(tmp_path, doc))


def test_jw_transform_h2_shape(h2_hamiltonian):
    assert h2_hamiltonian.n_qubits == 4
    assert len(h2_hamiltonian.terms) == 14
    # coefficients are real and merged; no term below the prune threshold
    for coeff, _ in h2_hamiltonian.terms:
        assert isinstance(coeff, float)
        assert abs(coeff) >= 1e-12


def test_mp2_amplitude_value(h2_ints):
    h2 = h2_ints.two_body_dense
    integral = h2[2, 3, 1, 0] - h2[2, 3, 0, 1]
    denom = 2 * h2_ints.spin_orbital_energy(0) - 2 * h2_ints.spin_orbital_energy(2)
    assert mp2_amplitude(h2_ints, 0, 1, 2, 3) == pytest.approx(
        integral / denom, rel=1e-12)


def test_mp2_amplitude_degenerate_flag(h2_ints):
    # i,j -> same-energy orbitals: denominator 0, flagged degenerate
    amp, degenerate = mp2_amplitude(h2_ints, 0, 1, 0, 1, return_flag=True)
    assert degenerate
    assert amp == 0.0
