"""Emit Integral File Format fixtures and golden FCI values."""

import json
import math
from pathlib import Path

import numpy as np

from .basis import ANGSTROM_TO_BOHR
from .detci import fci_ground_energy, spin_orbital_integrals
from .scf import run_molecule

FORMAT_VERSION = 1
H2O_ANGLE_DEG = 104.5  # fixed internal angle along the symmetric stretch

MOLECULES = {
    "h2": {"electrons": 2, "label": "H2"},
    "lih": {"electrons": 4, "label": "LiH"},
    "h2o": {"electrons": 10, "label": "H2O"},
    "f2": {"electrons": 18, "label": "F2"},
}


def geometry(molecule: str, bond_length: float):
    """Atoms as (element, xyz in bohr) for a bond length in angstrom."""
    r = bond_length * ANGSTROM_TO_BOHR
    if molecule == "h2":
        return [("H", (0, 0, 0)), ("H", (0, 0, r))]
    if molecule == "lih":
        return [("Li", (0, 0, 0)), ("H", (0, 0, r))]
    if molecule == "f2":
        return [("F", (0, 0, 0)), ("F", (0, 0, r))]
    if molecule == "h2o":
        half = math.radians(H2O_ANGLE_DEG / 2)
        return [
            ("O", (0, 0, 0)),
            ("H", (r * math.sin(half), 0, r * math.cos(half))),
            ("H", (-r * math.sin(half), 0, r * math.cos(half))),
        ]
    raise ValueError(f"unknown molecule {molecule!r}")


def make_fixture(molecule: str, bond_length: float):
    """Run the driver for one geometry; returns (fixture dict, golden dict)."""
    info = MOLECULES[molecule]
    res = run_molecule(geometry(molecule, bond_length), info["electrons"])
    h1, h2 = spin_orbital_integrals(res["h_mo"], res["eri_mo"])
    n_spin = h1.shape[0]
    n_e = info["electrons"]

    two_body = []
    for p, q, r, s in np.argwhere(np.abs(h2) > 1e-12):
        two_body.append([int(p), int(q), int(r), int(s), float(h2[p, q, r, s])])

    fixture = {
        "format_version": FORMAT_VERSION,
        "molecule_label": info["label"],
        "bond_length": bond_length,
        "basis_label": "STO-3G",
        "n_spin_orbitals": n_spin,
        "n_electrons": n_e,
        "constant": float(res["e_nuc"]),
        "one_body": h1.tolist(),
        "two_body": two_body,
        "orbital_energies": res["mo_energies"].tolist(),
        "hf_occupation": "1" * n_e + "0" * (n_spin - n_e),
        "irreps": None,
    }
    e_fci = fci_ground_energy(res["h_mo"], res["eri_mo"], n_e, res["e_nuc"])
    golden = {"hf": float(res["e_hf"]), "fci": float(e_fci)}
    return fixture, golden


def generate(molecule: str, bond_lengths, out_dir):
    out_dir = Path(out_dir)
    mol_dir = out_dir / molecule
    mol_dir.mkdir(parents=True, exist_ok=True)

    golden_path = out_dir / "golden_fci.json"
    golden = json.loads(golden_path.read_text()) if golden_path.exists() else {}
    golden.setdefault(molecule, {})

    written = []
    for bond in bond_lengths:
        fixture, gold = make_fixture(molecule, bond)
        path = mol_dir / f"{bond:g}.json"
        path.write_text(json.dumps(fixture))
        golden[molecule][f"{bond:g}"] = gold
        written.append(path)
        print(f"{molecule} R={bond:g} A  HF={gold['hf']:.10f}  FCI={gold['fci']:.10f}")

    golden_path.write_text(json.dumps(golden, indent=1, sort_keys=True))
    return written


def parse_bonds(spec: str):
    """Bond lengths from '1.0,1.5' or '1.0:3.0:0.25' range syntax."""
    if ":" in spec:
        start, stop, step = (float(x) for x in spec.split(":"))
        n = int(round((stop - start) / step)) + 1
        return [round(start + i * step, 10) for i in range(n)]
    return [float(x) for x in spec.split(",")]
