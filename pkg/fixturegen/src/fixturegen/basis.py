"""STO-3G basis set data and contracted-Gaussian shell construction.

Exponents/coefficients are the standard published STO-3G values (EMSL basis set
exchange). Only the elements needed by the fixture molecules are tabulated.
"""

from dataclasses import dataclass, field

import numpy as np

ANGSTROM_TO_BOHR = 1.8897259886

# (shell_type, [exponents], [s coefficients], [p coefficients or None])
STO3G = {
    "H": [
        ("S", [3.42525091, 0.62391373, 0.16885540],
         [0.15432897, 0.53532814, 0.44463454], None),
    ],
    "Li": [
        ("S", [16.1195750, 2.9362007, 0.7946505],
         [0.15432897, 0.53532814, 0.44463454], None),
        ("SP", [0.6362897, 0.1478601, 0.0480887],
         [-0.09996723, 0.39951283, 0.70011547],
         [0.15591627, 0.60768372, 0.39195739]),
    ],
    "O": [
        ("S", [130.7093200, 23.8088610, 6.4436083],
         [0.15432897, 0.53532814, 0.44463454], None),
        ("SP", [5.0331513, 1.1695961, 0.3803890],
         [-0.09996723, 0.39951283, 0.70011547],
         [0.15591627, 0.60768372, 0.39195739]),
    ],
    "F": [
        ("S", [166.6791300, 30.3608120, 8.2168207],
         [0.15432897, 0.53532814, 0.44463454], None),
        ("SP", [6.4648032, 1.5022812, 0.4885885],
         [-0.09996723, 0.39951283, 0.70011547],
         [0.15591627, 0.60768372, 0.39195739]),
    ],
}

ATOMIC_NUMBER = {"H": 1, "Li": 3, "O": 8, "F": 9}


@dataclass
class BasisFunction:
    """A contracted Cartesian Gaussian x^l y^m z^n exp(-a r^2) at center A."""

    center: np.ndarray
    lmn: tuple[int, int, int]
    exps: np.ndarray
    coefs: np.ndarray
    norms: np.ndarray = field(init=False)

    def __post_init__(self):
        l, m, n = self.lmn
        L = l + m + n
        # primitive normalization
        df = _double_factorial
        self.norms = ((2 * self.exps / np.pi) ** 0.75
                      * (4 * self.exps) ** (L / 2)
                      / np.sqrt(df(2 * l - 1) * df(2 * m - 1) * df(2 * n - 1)))


def _double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


_P_SHELL = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def build_basis(atoms):
    """Build the contracted basis for a list of (element, xyz-in-bohr) atoms.

    Returns (basis functions, nuclear charges, centers).
    """
    funcs = []
    for elem, xyz in atoms:
        xyz = np.asarray(xyz, dtype=float)
        for shell, exps, cs, cp in STO3G[elem]:
            exps = np.array(exps)
            funcs.append(BasisFunction(xyz, (0, 0, 0), exps, np.array(cs)))
            if shell == "SP":
                for lmn in _P_SHELL:
                    funcs.append(BasisFunction(xyz, lmn, exps, np.array(cp)))
    charges = np.array([ATOMIC_NUMBER[e] for e, _ in atoms], dtype=float)
    centers = np.array([np.asarray(x, dtype=float) for _, x in atoms])
    return funcs, charges, centers


def nuclear_repulsion(charges, centers):
    e = 0.0
    for i in range(len(charges)):
        for j in range(i + 1, len(charges)):
            e += charges[i] * charges[j] / np.linalg.norm(centers[i] - centers[j])
    return e
