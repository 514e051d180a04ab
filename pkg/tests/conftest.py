"""Shared brute-force reference implementations for the test suite.

These deliberately avoid the library's own eigensolver and accumulation
paths: eigendecompositions go through numpy.linalg.eigh, means through
mpmath at 50 digits, and sums through explicit python loops.
"""

import mpmath as mp
import numpy as np

mp.mp.dps = 50


def ref_power_mean(order, a, b):
    """High-precision weighted power mean with the zero-argument convention."""
    if a == 0.0 or b == 0.0:
        return 0.0
    a_, b_ = mp.mpf(a), mp.mpf(b)
    w = mp.mpf(order.weight)
    if order.kind == "neg_inf":
        return float(min(a_, b_))
    if order.kind == "zero":
        return float(a_**w * b_ ** (1 - w))
    s = mp.mpf(order.s)
    return float((w * a_**s + (1 - w) * b_**s) ** (1 / s))


def ref_eigh_state(rho_matrix):
    """Spectral data via numpy (ascending -> descending), zeros clipped."""
    vals, vecs = np.linalg.eigh(rho_matrix)
    vals = vals[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    vals[np.abs(vals) <= 1e-12] = 0.0
    return vals, vecs


def ref_zeta(rho_matrix, order, x, y):
    """Direct evaluation of the defining double sum."""
    vals, vecs = ref_eigh_state(rho_matrix)
    d = len(vals)
    total = 0.0 + 0.0j
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            coeff = vals[i] - ref_power_mean(order, vals[i], vals[j])
            bra_i = vecs[:, i].conj()
            bra_j = vecs[:, j].conj()
            total += coeff * (bra_i @ x.conj().T @ vecs[:, j]) * (bra_j @ y @ vecs[:, i])
    return complex(total)


def ref_skew_information(rho_matrix, order, x):
    """Trace form Tr[rho x^+ x] - sum_ij m(lam_i, lam_j) |<i|x^+|j>|^2."""
    vals, vecs = ref_eigh_state(rho_matrix)
    d = len(vals)
    xt = vecs.conj().T @ x @ vecs
    total = float(np.trace(rho_matrix @ x.conj().T @ x).real)
    for i in range(d):
        for j in range(d):
            coeff = ref_power_mean(order, vals[i], vals[j])
            total -= coeff * abs(xt[j, i]) ** 2
    return total


def ref_variance(rho_matrix, x):
    return float(
        np.trace(rho_matrix @ x.conj().T @ x).real
        - abs(np.trace(rho_matrix @ x.conj().T)) ** 2
    )
