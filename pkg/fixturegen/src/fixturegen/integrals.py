"""Molecular integrals over contracted Cartesian Gaussians (McMurchie-Davidson).

Produces overlap, kinetic, nuclear-attraction, and electron-repulsion matrices
for the small STO-3G bases used by the fixture molecules. Pure python with an
8-fold-symmetry ERI loop; fast enough for <= 10 basis functions offline.
"""


import numpy as np
from scipy.special import gammainc, gammaln


def boys(n, x):
    """Boys function F_n(x)."""
    if x < 1e-12:
        return 1.0 / (2 * n + 1)
    a = n + 0.5
    return 0.5 * np.exp(gammaln(a)) * gammainc(a, x) / x**a


def _hermite_e(i, j, t, Qx, a, b):
    """Hermite expansion coefficient E_t^{ij} for a 1D Gaussian product."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return np.exp(-q * Qx * Qx)
    if j == 0:
        return (_hermite_e(i - 1, j, t - 1, Qx, a, b) / (2 * p)
                - (q * Qx / a) * _hermite_e(i - 1, j, t, Qx, a, b)
                + (t + 1) * _hermite_e(i - 1, j, t + 1, Qx, a, b))
    return (_hermite_e(i, j - 1, t - 1, Qx, a, b) / (2 * p)
            + (q * Qx / b) * _hermite_e(i, j - 1, t, Qx, a, b)
            + (t + 1) * _hermite_e(i, j - 1, t + 1, Qx, a, b))


def _overlap_prim(a, lmn1, A, b, lmn2, B):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    s1 = _hermite_e(l1, l2, 0, A[0] - B[0], a, b)
    s2 = _hermite_e(m1, m2, 0, A[1] - B[1], a, b)
    s3 = _hermite_e(n1, n2, 0, A[2] - B[2], a, b)
    return s1 * s2 * s3 * (np.pi / (a + b)) ** 1.5


def _kinetic_prim(a, lmn1, A, b, lmn2, B):
    l2, m2, n2 = lmn2

    def ov(dl, dm, dn):
        return _overlap_prim(a, lmn1, A, b, (l2 + dl, m2 + dm, n2 + dn), B)

    term0 = b * (2 * (l2 + m2 + n2) + 3) * ov(0, 0, 0)
    term1 = -2 * b**2 * (ov(2, 0, 0) + ov(0, 2, 0) + ov(0, 0, 2))
    term2 = -0.5 * (l2 * (l2 - 1) * ov(-2, 0, 0)
                    + m2 * (m2 - 1) * ov(0, -2, 0)
                    + n2 * (n2 - 1) * ov(0, 0, -2))
    return term0 + term1 + term2


def _hermite_coulomb(t, u, v, n, p, PC):
    """Auxiliary Hermite Coulomb integral R^n_{tuv}."""
    if t < 0 or u < 0 or v < 0:
        return 0.0
    if t == u == v == 0:
        x = p * (PC[0] ** 2 + PC[1] ** 2 + PC[2] ** 2)
        return (-2 * p) ** n * boys(n, x)
    if t > 0:
        return ((t - 1) * _hermite_coulomb(t - 2, u, v, n + 1, p, PC)
                + PC[0] * _hermite_coulomb(t - 1, u, v, n + 1, p, PC))
    if u > 0:
        return ((u - 1) * _hermite_coulomb(t, u - 2, v, n + 1, p, PC)
                + PC[1] * _hermite_coulomb(t, u - 1, v, n + 1, p, PC))
    return ((v - 1) * _hermite_coulomb(t, u, v - 2, n + 1, p, PC)
            + PC[2] * _hermite_coulomb(t, u, v - 1, n + 1, p, PC))


def _nuclear_prim(a, lmn1, A, b, lmn2, B, C):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    p = a + b
    P = (a * A + b * B) / p
    PC = P - C
    val = 0.0
    for t in range(l1 + l2 + 1):
        Ex = _hermite_e(l1, l2, t, A[0] - B[0], a, b)
        for u in range(m1 + m2 + 1):
            Ey = _hermite_e(m1, m2, u, A[1] - B[1], a, b)
            for v in range(n1 + n2 + 1):
                Ez = _hermite_e(n1, n2, v, A[2] - B[2], a, b)
                val += Ex * Ey * Ez * _hermite_coulomb(t, u, v, 0, p, PC)
    return 2 * np.pi / p * val


def _eri_prim(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    l3, m3, n3 = lmn3
    l4, m4, n4 = lmn4
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * A + b * B) / p
    Q = (c * C + d * D) / q
    PQ = P - Q

    e1x = [_hermite_e(l1, l2, t, A[0] - B[0], a, b) for t in range(l1 + l2 + 1)]
    e1y = [_hermite_e(m1, m2, u, A[1] - B[1], a, b) for u in range(m1 + m2 + 1)]
    e1z = [_hermite_e(n1, n2, v, A[2] - B[2], a, b) for v in range(n1 + n2 + 1)]
    e2x = [_hermite_e(l3, l4, t, C[0] - D[0], c, d) for t in range(l3 + l4 + 1)]
    e2y = [_hermite_e(m3, m4, u, C[1] - D[1], c, d) for u in range(m3 + m4 + 1)]
    e2z = [_hermite_e(n3, n4, v, C[2] - D[2], c, d) for v in range(n3 + n4 + 1)]

    val = 0.0
    for t, Ex in enumerate(e1x):
        for u, Ey in enumerate(e1y):
            for v, Ez in enumerate(e1z):
                for tt, Fx in enumerate(e2x):
                    for uu, Fy in enumerate(e2y):
                        for vv, Fz in enumerate(e2z):
                            val += (Ex * Ey * Ez * Fx * Fy * Fz
                                    * (-1) ** (tt + uu + vv)
                                    * _hermite_coulomb(t + tt, u + uu, v + vv,
                                                       0, alpha, PQ))
    return val * 2 * np.pi**2.5 / (p * q * np.sqrt(p + q))


def _contracted(prim_fn, f1, f2, *rest):
    val = 0.0
    for a, ca, na in zip(f1.exps, f1.coefs, f1.norms):
        for b, cb, nb in zip(f2.exps, f2.coefs, f2.norms):
            val += ca * cb * na * nb * prim_fn(a, f1.lmn, f1.center,
                                               b, f2.lmn, f2.center, *rest)
    return val


def _contracted_eri(f1, f2, f3, f4):
    val = 0.0
    for a, ca, na in zip(f1.exps, f1.coefs, f1.norms):
        for b, cb, nb in zip(f2.exps, f2.coefs, f2.norms):
            for c, cc, nc in zip(f3.exps, f3.coefs, f3.norms):
                for d, cd, nd in zip(f4.exps, f4.coefs, f4.norms):
                    val += (ca * cb * cc * cd * na * nb * nc * nd
                            * _eri_prim(a, f1.lmn, f1.center, b, f2.lmn, f2.center,
                                        c, f3.lmn, f3.center, d, f4.lmn, f4.center))
    return val


def compute_integrals(funcs, charges, centers):
    """All AO integrals for a basis: returns (S, T, V, eri) in chemist notation.

    Contracted functions are renormalized so the overlap diagonal is exactly 1.
    """
    n = len(funcs)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = _contracted(_overlap_prim, funcs[i], funcs[j])
            T[i, j] = T[j, i] = _contracted(_kinetic_prim, funcs[i], funcs[j])
            v = 0.0
            for Z, C in zip(charges, centers):
                v -= Z * _contracted(_nuclear_prim, funcs[i], funcs[j], C)
            V[i, j] = V[j, i] = v

    renorm = 1.0 / np.sqrt(np.diag(S))
    S = S * np.outer(renorm, renorm)
    T = T * np.outer(renorm, renorm)
    V = V * np.outer(renorm, renorm)

    eri = np.zeros((n, n, n, n))
    # 8-fold permutational symmetry of real-orbital (ij|kl)
    for i in range(n):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(n):
                for l in range(k + 1):
                    kl = k * (k + 1) // 2 + l
                    if ij < kl:
                        continue
                    val = (_contracted_eri(funcs[i], funcs[j], funcs[k], funcs[l])
                           * renorm[i] * renorm[j] * renorm[k] * renorm[l])
                    for (p, q, r, s) in ((i, j, k, l), (j, i, k, l), (i, j, l, k),
                                         (j, i, l, k), (k, l, i, j), (l, k, i, j),
                                         (k, l, j, i), (l, k, j, i)):
                        eri[p, q, r, s] = val
    return S, T, V, eri
