"""End-to-end acceptance gate.

Each test checks one release criterion and reports a single PASS/FAIL line
in the terminal summary (see conftest.record_criterion). Tolerances are
pinned here and nowhere else.
"""

import numpy as np
import pytest

from adaptforge import baselines, cli, exact, opt1d
from adaptforge.hamio import hf_energy, jw_transform, load_integrals
from adaptforge.ladder import LadderConfig, run_ladder
from adaptforge.pools import DOUBLE, SINGLE, Excitation, generate_pool
from adaptforge.resources import CostModel
from adaptforge.statevector import EnergyContext, expectation, init_hf

from conftest import FIXTURES, fixture_path, record_criterion
from oracles import (excitation_unitary, fermionic_hamiltonian,
                     pauli_hamiltonian_matrix)

CHEMICAL_PRECISION = 1.6e-3
LIH_BONDS = ("1.5", "2", "2.5")

ALL_RECORDS = []  # every solver output, for the variational-bound criterion


def _geometry(molecule, bond):
    ints = load_integrals(fixture_path(molecule, bond))
    H = jw_transform(ints)
    fci = exact.fci_energy(H, ints.n_electrons,
                           exact.sz_of_occupation(ints.hf_occupation))
    return ints, H, fci


def _meta(molecule, bond, fci):
    return dict(molecule=molecule, bond_length=float(bond), fci=fci,
                cost_model=CostModel())


@pytest.fixture(scope="module")
def lih_ladder_runs():
    """RunRecord per (bond, level) for the LiH preset."""
    runs = {}
    for bond in LIH_BONDS:
        ints, H, fci = _geometry("lih", bond)
        for level in range(6):
            ctx = EnergyContext(H, ints.hf_occupation)
            cfg = LadderConfig.from_preset("LiH", level)
            runs[bond, level] = run_ladder(ctx, ints, cfg,
                                           _meta("lih", bond, fci))
    ALL_RECORDS.extend(runs.values())
    return runs


@pytest.fixture(scope="module")
def lih_baseline_runs():
    """ADAPT and QEB records on LiH at the two equilibrium-side bonds."""
    runs = {}
    for bond in ("1.5", "2"):
        ints, H, fci = _geometry("lih", bond)
        pool = generate_pool("UCCSD", ints.n_spin_orbitals,
                             ints.hf_occupation)
        meta = _meta("lih", bond, fci)
        ctx = EnergyContext(H, ints.hf_occupation)
        runs[bond, "adapt"] = baselines.adapt_vqe(
            ctx, pool, meta,
            baselines.AdaptConfig(energy_improvement_eps=1e-5))
        ctx = EnergyContext(H, ints.hf_occupation)
        runs[bond, "qeb"] = baselines.qeb_adapt_vqe(
            ctx, pool, meta,
            baselines.QebConfig(min_realized_improvement=1e-4))
    ALL_RECORDS.extend(runs.values())
    return runs


def test_oracle_equivalence():
    ints, H, fci = _geometry("h2", "0.7414")
    spectrum_jw = np.linalg.eigvalsh(pauli_hamiltonian_matrix(H))
    spectrum_oracle = np.linalg.eigvalsh(fermionic_hamiltonian(ints))
    spectral_gap = float(np.max(np.abs(spectrum_jw - spectrum_oracle)))

    mat = pauli_hamiltonian_matrix(H)
    basis = exact.sector_basis(4, 2, sz=0)
    fci_dense = float(np.linalg.eigvalsh(mat[np.ix_(basis, basis)])[0])

    hf_sv = expectation(init_hf(4, ints.hf_occupation), H)

    ok = (spectral_gap < 1e-9 and abs(fci - fci_dense) < 1e-10
          and abs(hf_energy(ints) - hf_sv) < 1e-10)
    record_criterion(
        "oracle equivalence (H2 spectrum 1e-9, FCI 1e-10, HF 1e-10)", ok,
        f"spectrum gap {spectral_gap:.2e}, fci gap {abs(fci - fci_dense):.2e},"
        f" hf gap {abs(hf_energy(ints) - hf_sv):.2e}")


def test_gate_correctness():
    from adaptforge import statevector as sv
    rng = np.random.default_rng(2024)
    n_qubits, occupation = 6, "110100"
    n_e = occupation.count("1")
    basis = exact.sector_basis(n_qubits, n_e,
                               exact.sz_of_occupation(occupation))

    def random_exc():
        if rng.random() < 0.5:
            parity = int(rng.integers(2))
            opts = [p for p in range(n_qubits) if p % 2 == parity]
            p, q = rng.choice(opts, size=2, replace=False)
            return Excitation(SINGLE, (int(p),), (int(q),))
        a, b, c, d = (int(x) for x in rng.choice(n_qubits, 4, replace=False))
        return Excitation(DOUBLE, (a, b), (c, d))

    amps = np.zeros(1 << n_qubits, dtype=complex)
    amps[basis] = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    amps /= np.linalg.norm(amps)
    state = sv.State(n_qubits, amps)
    worst_norm = worst_particles = 0.0
    for _ in range(1000):
        state = sv.apply_excitation(state, random_exc(),
                                    float(rng.uniform(-np.pi, np.pi)))
        worst_norm = max(worst_norm,
                         abs(np.linalg.norm(state.amplitudes) - 1.0))
        support = np.nonzero(np.abs(state.amplitudes) > 1e-12)[0]
        worst_particles = max(worst_particles, max(
            abs(bin(int(i)).count("1") - n_e) for i in support))

    worst_matrix = 0.0
    for _ in range(25):
        exc = random_exc()
        theta = float(rng.uniform(-np.pi, np.pi))
        u = excitation_unitary(n_qubits, exc.from_indices, exc.to_indices,
                               theta)
        got = sv.apply_excitation(state, exc, theta).amplitudes
        worst_matrix = max(worst_matrix,
                           float(np.max(np.abs(got - u @ state.amplitudes))))

    worst_identity = 0.0
    for _ in range(25):
        exc = random_exc()
        a, b = rng.uniform(-2, 2, size=2)
        comp = sv.apply_excitation(sv.apply_excitation(state, exc, b), exc, a)
        direct = sv.apply_excitation(state, exc, a + b)
        back = sv.apply_excitation(comp, exc, -(a + b))
        worst_identity = max(
            worst_identity,
            float(np.max(np.abs(comp.amplitudes - direct.amplitudes))),
            float(np.max(np.abs(back.amplitudes - state.amplitudes))))

    ok = (worst_norm < 1e-10 and worst_particles == 0
          and worst_matrix < 1e-10 and worst_identity < 1e-12)
    record_criterion(
        "gate correctness (1000 random applications; matrix oracles)", ok,
        f"norm {worst_norm:.2e}, matrix {worst_matrix:.2e}, "
        f"composition/inverse {worst_identity:.2e}")


def test_optimizer_fidelity():
    ints, H, fci = _geometry("h2", "0.7414")
    ctx = EnergyContext(H, ints.hf_occupation)
    ansatz = [Excitation(SINGLE, (1,), (3,)),
              Excitation(DOUBLE, (0, 1), (2, 3))]

    rng = np.random.default_rng(5)
    base = [0.23, -0.31]
    worst_fit = 0.0
    for index in (0, 1):
        def f(t, index=index):
            thetas = list(base)
            thetas[index] = t
            return ctx.energy(ansatz, thetas)
        landscape = opt1d.reconstruct_1d(f, base[index])
        for t in rng.uniform(-np.pi, np.pi, size=50):
            worst_fit = max(worst_fit,
                            abs(landscape.value(t) - f(float(t))))

    def g(t):
        return ctx.energy(ansatz, [t, base[1]])
    landscape = opt1d.reconstruct_1d(g, 0.0)
    h = 1e-6
    worst_grad = 0.0
    for theta in (-1.1, -0.4, 0.2, 0.9):
        fd = (g(theta + h) - g(theta - h)) / (2 * h)
        worst_grad = max(worst_grad,
                         abs(opt1d.gradient_1d(landscape, theta) - fd)
                         / max(abs(fd), 1e-9))

    _, energy, converged = baselines.full_reoptimize(ctx, ansatz, np.zeros(2))
    reopt_gap = abs(energy - fci)

    ok = worst_fit < 1e-9 and worst_grad < 1e-6 and converged \
        and reopt_gap < 1e-8
    record_criterion(
        "optimizer fidelity (reconstruction 1e-9, gradient 1e-6 rel, "
        "reopt 1e-8)", ok,
        f"fit {worst_fit:.2e}, grad {worst_grad:.2e}, reopt {reopt_gap:.2e}")


def test_baseline_chemical_precision(lih_baseline_runs, lih_ladder_runs):
    details = []
    ok = True
    for bond in ("1.5", "2"):
        adapt = lih_baseline_runs[bond, "adapt"]
        qeb = lih_baseline_runs[bond, "qeb"]
        ladder5 = lih_ladder_runs[bond, 5]
        ok &= abs(adapt.error) <= CHEMICAL_PRECISION
        ok &= abs(qeb.error) <= CHEMICAL_PRECISION
        ok &= qeb.evaluations >= adapt.evaluations > ladder5.evaluations
        details.append(
            f"{bond}A adapt {adapt.error_mha:.3f}mHa/{adapt.evaluations}ev, "
            f"qeb {qeb.error_mha:.3f}mHa/{qeb.evaluations}ev, "
            f"ladder {ladder5.evaluations}ev")
    record_criterion(
        "baselines reach chemical precision on LiH; "
        "evals qeb >= adapt > ladder", ok, "; ".join(details))


def test_ladder_chemical_precision(lih_ladder_runs):
    details = []
    ok = True
    for bond in LIH_BONDS:
        record = lih_ladder_runs[bond, 5]
        ok &= abs(record.error) <= CHEMICAL_PRECISION
        ok &= record.evaluations <= 2000
        ok &= record.n_operators <= 12
        details.append(f"{bond}A {record.error_mha:.3f}mHa, "
                       f"{record.evaluations}ev, {record.n_operators}ops")
    record_criterion(
        "ladder level 5 on LiH: <=1.6mHa, <=2000 evals, <=12 operators",
        ok, "; ".join(details))


def test_ablation_shape(lih_ladder_runs):
    fail_levels = [level for level in range(4)
                   if abs(lih_ladder_runs["2.5", level].error)
                   > CHEMICAL_PRECISION]
    pass_levels = [level for level in (4, 5)
                   if abs(lih_ladder_runs["2.5", level].error)
                   <= CHEMICAL_PRECISION]
    gates_ok = all(
        lih_ladder_runs[bond, 5].two_qubit_gates
        <= lih_ladder_runs[bond, 4].two_qubit_gates
        and abs(lih_ladder_runs[bond, 5].error) <= CHEMICAL_PRECISION
        for bond in LIH_BONDS)
    ok = fail_levels == [0, 1, 2, 3] and pass_levels == [4, 5] and gates_ok
    errors = ", ".join(f"L{level} {lih_ladder_runs['2.5', level].error_mha:.2f}"
                       for level in range(6))
    record_criterion(
        "ablation shape at 2.5A: L0-L3 fail, L4-L5 pass; "
        "L5 gates <= L4 gates", ok, f"mHa at 2.5A: {errors}")


def test_determinism(tmp_path):
    args = ["ablate", "--molecule", "lih", "--bonds", "1.5,2,2.5",
            "--fixtures-dir", str(FIXTURES)]
    out1, out2 = tmp_path / "run1.csv", tmp_path / "run2.csv"
    assert cli.main(args + ["--out", str(out1)]) == 0
    assert cli.main(args + ["--out", str(out2)]) == 0
    identical = out1.read_bytes() == out2.read_bytes()
    record_criterion("determinism: repeated ablate runs are byte-identical",
                     identical, f"{out1.stat().st_size} bytes")


def test_scale_check_f2():
    records = {}
    for bond in ("1.5", "2.6"):
        ints, H, fci = _geometry("f2", bond)
        ctx = EnergyContext(H, ints.hf_occupation)
        cfg = LadderConfig.from_preset("F2", 5)
        records[bond] = run_ladder(ctx, ints, cfg, _meta("f2", bond, fci))
    ALL_RECORDS.extend(records.values())
    ok = (abs(records["1.5"].error) <= CHEMICAL_PRECISION
          and abs(records["2.6"].error) <= CHEMICAL_PRECISION
          and records["2.6"].n_operators < records["1.5"].n_operators)
    record_criterion(
        "scale check: F2 level 5 <=1.6mHa at 1.5/2.6A, fewer operators "
        "when stretched", ok,
        f"1.5A {records['1.5'].error_mha:.3f}mHa/{records['1.5'].n_operators}"
        f"ops; 2.6A {records['2.6'].error_mha:.3f}mHa/"
        f"{records['2.6'].n_operators}ops")


def test_variational_bound(lih_ladder_runs, lih_baseline_runs):
    """Checked last so every record produced above is included."""
    violations = [(r.molecule, r.bond_length, r.method, r.error)
                  for r in ALL_RECORDS if r.error < -1e-9]
    record_criterion("variational bound E >= E_FCI - 1e-9 on every run",
                     not violations, f"{len(ALL_RECORDS)} records checked"
                     + (f"; violations: {violations}" if violations else ""))


def test_secondary_fixture_roundtrip(golden):
    worst = 0.0
    count = 0
    for molecule in ("h2", "lih"):
        for bond, values in golden[molecule].items():
            ints, H, fci = _geometry(molecule, bond)
            worst = max(worst, abs(fci - values["fci"]))
            count += 1
    record_criterion(
        "fixture round-trip: pipeline FCI matches driver golden to 1e-7 "
        "(H2, LiH)", worst < 1e-7, f"{count} geometries, worst {worst:.2e}")
