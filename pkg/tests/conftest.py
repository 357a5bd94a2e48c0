"""Shared fixtures: integral-file loading plus the acceptance-line reporter."""

import json
from pathlib import Path

import pytest

from adaptforge import exact
from adaptforge.hamio import jw_transform, load_integrals
from adaptforge.statevector import EnergyContext

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

_ACCEPTANCE_RESULTS = []


def record_criterion(name: str, passed: bool, detail: str = ""):
    """Register an acceptance-criterion outcome; prints one line per criterion
    in the terminal summary, then asserts."""
    _ACCEPTANCE_RESULTS.append((name, passed, detail))
    assert passed, f"acceptance criterion failed: {name} — {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        suffix = f" — {detail}" if detail else ""
        terminalreporter.write_line(f"{status}  {name}{suffix}")


def fixture_path(molecule: str, bond: str) -> Path:
    return FIXTURES / molecule / f"{bond}.json"


@pytest.fixture(scope="session")
def golden():
    return json.loads((FIXTURES / "golden_fci.json").read_text())


@pytest.fixture(scope="session")
def h2_ints():
    return load_integrals(fixture_path("h2", "0.7414"))


@pytest.fixture(scope="session")
def h2_hamiltonian(h2_ints):
    return jw_transform(h2_ints)


@pytest.fixture(scope="session")
def h2_fci(h2_hamiltonian, h2_ints):
    return exact.fci_energy(h2_hamiltonian, h2_ints.n_electrons,
                            exact.sz_of_occupation(h2_ints.hf_occupation))


@pytest.fixture
def h2_ctx(h2_hamiltonian, h2_ints):
    return EnergyContext(h2_hamiltonian, h2_ints.hf_occupation)


@pytest.fixture(scope="session")
def lih_ints():
    return load_integrals(fixture_path("lih", "1.5"))
