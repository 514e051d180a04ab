"""Skew information for the power-mean kernel family.

The central object is the sesquilinear form

    zeta(X, Y) = sum_{i != j} [lam_i - m(lam_i, lam_j)] <i|X^+|j><j|Y|i>

over the eigenbasis of a state, with m the (weighted) power mean of the
eigenvalue pair and the convention m(a, 0) = 0.  Its diagonal zeta(X, X)
is the information measure; the geometric-mean kernel recovers the classic
Wigner-Yanase quantity, the harmonic kernel a quantum-Fisher normalization,
and the min kernel the limiting member.  Each special case also has an
independent computation route (commutator trace, symmetric logarithmic
derivative, fractional-power trace) used for cross-checking.

All evaluation happens in the eigenbasis: the observable is rotated once
and coefficients multiply squared matrix elements.  For the diagonal the
symmetrized coefficient (lam_i + lam_j)/2 - m is used; it agrees with the
defining form for normal observables and is numerically benign because
equal eigenvalue pairs contribute exactly zero.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import BadSpectrum, BadWeight, DimMismatch, NotNormal
from .linalg import DensityMatrix, matrix_power
from .means import MeanOrder, power_mean, power_mean_grid

NORMALITY_TOL = 1e-10

_KIND_NEG_INF = 0
_KIND_ZERO = 1
_KIND_FINITE = 2
_KIND_CODE = {"neg_inf": _KIND_NEG_INF, "zero": _KIND_ZERO, "finite": _KIND_FINITE}


def _encode_order(order: MeanOrder) -> tuple[int, float, float]:
    return _KIND_CODE[order.kind], float(order.s or 0.0), order.weight


@njit(cache=True, inline="always")
def _pm_scalar(kind, s, w, a, b):  # pragma: no cover - via the sum kernels
    """Scalar twin of means.power_mean_grid; w weights the first argument."""
    if a == b:
        return a
    if a == 0.0 or b == 0.0:
        return 0.0
    if kind == 0:
        return min(a, b)
    if kind == 1:
        if w == 0.5:
            return np.sqrt(a * b)
        return a**w * b ** (1.0 - w)
    if a <= b:
        lo, hi, w_lo = a, b, w
    else:
        lo, hi, w_lo = b, a, 1.0 - w
    inner = w_lo + (1.0 - w_lo) * (hi / lo) ** s
    return lo * inner ** (1.0 / s)


@njit(cache=True)
def _info_sum(lam, xt, kind, s, w):  # pragma: no cover - via skew_information
    d = lam.shape[0]
    total = 0.0
    for p in range(d):
        for q in range(d):
            if lam[p] == lam[q]:
                continue
            coeff = 0.5 * (lam[p] + lam[q]) - _pm_scalar(kind, s, w, lam[q], lam[p])
            z = xt[p, q]
            total += coeff * (z.real * z.real + z.imag * z.imag)
    return total


@njit(cache=True)
def _zeta_sum(lam, xt, yt, kind, s, w):  # pragma: no cover - via zeta
    d = lam.shape[0]
    total = 0.0 + 0.0j
    for p in range(d):
        for q in range(d):
            if lam[p] == lam[q]:
                continue
            coeff = lam[q] - _pm_scalar(kind, s, w, lam[q], lam[p])
            total += coeff * (np.conj(xt[p, q]) * yt[p, q])
    return total


def _check_obs(rho: DensityMatrix, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (rho.dim, rho.dim):
        raise DimMismatch(
            f"observable shape {x.shape} does not match state dimension {rho.dim}"
        )
    return x


def _to_eigenbasis(rho: DensityMatrix, x: np.ndarray) -> np.ndarray:
    u = rho.eig.eigenvectors
    return u.conj().T @ x @ u


def mean_matrix(eigenvalues: np.ndarray, order: MeanOrder) -> np.ndarray:
    """M[p, q] = m(lam_q, lam_p): column eigenvalue first (carries the weight)."""
    lam = np.asarray(eigenvalues, dtype=np.float64)
    return power_mean_grid(order, lam[None, :], lam[:, None])


def zeta_coefficients(eigenvalues: np.ndarray, order: MeanOrder) -> np.ndarray:
    """Coefficient grid for the sesquilinear form; exactly zero on pairs of
    equal eigenvalues (in particular on the diagonal)."""
    lam = np.asarray(eigenvalues, dtype=np.float64)
    return lam[None, :] - mean_matrix(lam, order)


def info_coefficients(eigenvalues: np.ndarray, order: MeanOrder) -> np.ndarray:
    """Symmetrized coefficient grid (lam_p + lam_q)/2 - m(lam_q, lam_p)."""
    lam = np.asarray(eigenvalues, dtype=np.float64)
    return 0.5 * (lam[None, :] + lam[:, None]) - mean_matrix(lam, order)


def _info_from_tilde(coeff: np.ndarray, xt: np.ndarray) -> float:
    return float(np.sum(coeff * (xt.real**2 + xt.imag**2)))


def zeta(rho: DensityMatrix, order: MeanOrder, x, y) -> complex:
    """Sesquilinear skew-information form; conjugate-linear in x, linear in y.

    Satisfies zeta(x, y)* == zeta(y, x) exactly.
    """
    xt = _to_eigenbasis(rho, _check_obs(rho, x))
    yt = _to_eigenbasis(rho, _check_obs(rho, y))
    kind, s, w = _encode_order(order)
    return complex(_zeta_sum(rho.eig.eigenvalues, xt, yt, kind, s, w))


def normality_defect(x: np.ndarray) -> float:
    """Frobenius norm of X X^+ - X^+ X."""
    xh = x.conj().T
    return float(np.linalg.norm(x @ xh - xh @ x))


def skew_information(
    rho: DensityMatrix,
    order: MeanOrder,
    x,
    strict: bool = False,
    clamp: bool = True,
) -> float:
    """Generalized skew information zeta(x, x) of a Hermitian or normal x.

    With ``strict`` the normality precondition is enforced (Frobenius defect
    <= 1e-10); nonnegativity is only guaranteed for normal observables.
    ``clamp=False`` returns the raw signed value, which the verification
    sweeps use to measure slack.
    """
    x = _check_obs(rho, x)
    if strict and normality_defect(x) > NORMALITY_TOL:
        raise NotNormal(
            f"observable has normality defect {normality_defect(x):.3e}"
        )
    xt = _to_eigenbasis(rho, x)
    kind, s, w = _encode_order(order)
    value = float(_info_sum(rho.eig.eigenvalues, xt, kind, s, w))
    if clamp:
        return max(value, 0.0)
    return value


def wy_skew_information_direct(rho: DensityMatrix, x) -> float:
    """Geometric-kernel information via -1/2 Tr[[sqrt(rho), x]^2].

    Independent of the eigenbasis route apart from the shared spectrum: the
    square root is formed explicitly and the commutator trace is taken.
    """
    x = _check_obs(rho, x)
    root = matrix_power(rho, 0.5)
    c = root @ x - x @ root
    return float(-0.5 * np.trace(c @ c).real)


def qfi_sld(rho: DensityMatrix, x) -> float:
    """Harmonic-kernel information via the symmetric logarithmic derivative.

    L has eigenbasis elements 2i (lam_k - lam_l)/(lam_k + lam_l) x_kl over
    pairs with lam_k + lam_l above the rank tolerance; the value is
    1/4 Tr[rho L^2].
    """
    x = _check_obs(rho, x)
    lam = rho.eig.eigenvalues
    xt = _to_eigenbasis(rho, x)
    denom = lam[:, None] + lam[None, :]
    keep = denom > rho.eig.rank_tol
    ratio = np.where(keep, (lam[:, None] - lam[None, :]) / np.where(keep, denom, 1.0), 0.0)
    sld = 2j * ratio * xt
    diag_of_square = np.einsum("kl,lk->k", sld, sld)
    return float(0.25 * np.sum(lam * diag_of_square.real))


def wyd_skew_information(rho: DensityMatrix, w: float, x) -> float:
    """Weighted-geometric (Dyson) information via fractional-power traces:
    Tr[rho x^+ x] - Tr[rho^w x^+ rho^(1-w) x].  Symmetric under w <-> 1-w.
    """
    if not 0.0 < w < 1.0:
        raise BadWeight(f"weight must lie strictly inside (0, 1), got {w!r}")
    x = _check_obs(rho, x)
    xh = x.conj().T
    first = np.trace(rho.matrix @ xh @ x).real
    second = np.trace(matrix_power(rho, w) @ xh @ matrix_power(rho, 1.0 - w) @ x).real
    return float(first - second)


def variance(rho: DensityMatrix, x) -> float:
    """V = Tr[rho x^+ x] - |Tr[rho x^+]|^2; nonnegative for Hermitian x."""
    x = _check_obs(rho, x)
    xh = x.conj().T
    return float(np.trace(rho.matrix @ xh @ x).real - abs(np.trace(rho.matrix @ xh)) ** 2)


def covariance(rho: DensityMatrix, x, y) -> complex:
    """Cov = Tr[rho x^+ y] - Tr[rho x^+] Tr[rho y] (complex in general)."""
    x = _check_obs(rho, x)
    y = _check_obs(rho, y)
    xh = x.conj().T
    return complex(
        np.trace(rho.matrix @ xh @ y)
        - np.trace(rho.matrix @ xh) * np.trace(rho.matrix @ y)
    )


def re_zeta_polarization(rho: DensityMatrix, order: MeanOrder, x, y) -> float:
    """Re zeta via the bilinear polarization identity
    1/4 (I(x + y) - I(x - y)); x and y must be Hermitian."""
    x = _check_obs(rho, x)
    y = _check_obs(rho, y)
    plus = skew_information(rho, order, x + y, clamp=False)
    minus = skew_information(rho, order, x - y, clamp=False)
    return 0.25 * (plus - minus)


def im_zeta(rho: DensityMatrix, x, y) -> float:
    """1/(2i) Tr[rho [x, y]], real for Hermitian x, y.

    For qubits this equals Im zeta(x, y) at every symmetric order; in higher
    dimensions the agreement is reported, not asserted.
    """
    x = _check_obs(rho, x)
    y = _check_obs(rho, y)
    t = np.trace(rho.matrix @ x @ y) - np.trace(rho.matrix @ y @ x)
    return float((t / 2j).real)


def qubit_closed_form(lam1: float, lam2: float, x12: complex, order: MeanOrder) -> float:
    """Qubit information from the spectrum and one off-diagonal element:
    [1 - m(lam1, lam2) - m(lam2, lam1)] |x12|^2, i.e. (1 - 2 m) |x12|^2 for
    symmetric weights."""
    if not (lam1 >= lam2 >= 0.0):
        raise BadSpectrum(f"need lam1 >= lam2 >= 0, got ({lam1!r}, {lam2!r})")
    if abs(lam1 + lam2 - 1.0) > 1e-12:
        raise BadSpectrum(f"eigenvalues must sum to 1, got {lam1 + lam2!r}")
    coeff = 1.0 - power_mean(order, lam1, lam2) - power_mean(order, lam2, lam1)
    return max(coeff * abs(x12) ** 2, 0.0)
