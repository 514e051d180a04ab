"""Complex matrix utilities for finite-dimensional quantum states.

Everything the rest of the library needs from linear algebra lives here:
a self-contained cyclic-Jacobi Hermitian eigensolver, density-matrix
construction with cached spectral data, matrix functions of a state, and
seeded random generation of states, observables and unitaries.  All
functions are pure and all returned arrays are marked read-only, so values
can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import (
    BadRank,
    DimMismatch,
    NegativeSpectrum,
    NotHermitian,
    OutOfBall,
)

#: Eigenvalues in [NEG_EIG_TOL, RANK_TOL] are clamped to exactly 0 so the
#: zero-argument mean convention fires deterministically downstream.
RANK_TOL = 1e-12
NEG_EIG_TOL = -1e-8
HERM_TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY_2 = np.eye(2, dtype=np.complex128)

PAULIS = {"i": IDENTITY_2, "x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

for _m in (SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY_2):
    _m.setflags(write=False)


def as_complex_matrix(a) -> np.ndarray:
    """Validate and return a square, finite complex128 matrix."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def hermiticity_defect(a: np.ndarray) -> float:
    """Max-norm distance from a to its own adjoint."""
    return float(np.max(np.abs(a - a.conj().T)))


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=np.complex128).conj().T


def trace(a) -> complex:
    """Matrix trace as a python complex."""
    return complex(np.trace(np.asarray(a, dtype=np.complex128)))


def commutator(a, b) -> np.ndarray:
    """[A, B] = AB - BA."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape:
        raise DimMismatch(f"commutator of shapes {a.shape} and {b.shape}")
    return a @ b - b @ a


@njit(cache=True)
def _jacobi_cycle(a):  # pragma: no cover - exercised via hermitian_eig
    """Cyclic Jacobi diagonalization of a Hermitian complex matrix, in place.

    Sweeps rows in cyclic order, annihilating each off-diagonal entry with a
    phased Givens rotation, until the off-diagonal Frobenius norm drops below
    1e-13 times the Frobenius norm of the input, or 100 sweeps elapse.
    Returns (eigenvalues, eigenvector columns), unsorted.
    """
    d = a.shape[0]
    v = np.eye(d, dtype=np.complex128)
    norm_sq = 0.0
    for i in range(d):
        for j in range(d):
            norm_sq += a[i, j].real ** 2 + a[i, j].imag ** 2
    tol = 1e-13 * np.sqrt(norm_sq)
    for _ in range(100):
        off_sq = 0.0
        for i in range(d):
            for j in range(i + 1, d):
                off_sq += 2.0 * (a[i, j].real ** 2 + a[i, j].imag ** 2)
        if np.sqrt(off_sq) <= tol:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                u = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(1.0 + theta * theta))
                else:
                    t = 1.0 / (theta - np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                su = (t * c) * u
                suc = np.conj(su)
                for i in range(d):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - suc * aiq
                    a[i, q] = su * aip + c * aiq
                for i in range(d):
                    api = a[p, i]
                    aqi = a[q, i]
                    a[p, i] = c * api - su * aqi
                    a[q, i] = suc * api + c * aqi
                for i in range(d):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - suc * viq
                    v[i, q] = su * vip + c * viq
    w = np.empty(d, dtype=np.float64)
    for i in range(d):
        w[i] = a[i, i].real
    return w, v


@njit(cache=True)
def _spectral_build(vals, vecs):  # pragma: no cover - exercised via from_spectral
    """Max-norm orthonormality defect of the columns, plus the exactly
    Hermitian reconstruction sum_k vals_k |k><k|."""
    d = vals.shape[0]
    defect = 0.0
    for i in range(d):
        for j in range(d):
            dot = 0.0 + 0.0j
            for k in range(d):
                dot += np.conj(vecs[k, i]) * vecs[k, j]
            if i == j:
                dot -= 1.0
            mag = abs(dot)
            if mag > defect:
                defect = mag
    m = np.empty((d, d), dtype=np.complex128)
    for i in range(d):
        for j in range(i, d):
            acc = 0.0 + 0.0j
            for k in range(d):
                acc += vals[k] * vecs[i, k] * np.conj(vecs[j, k])
            if i == j:
                m[i, i] = complex(acc.real, 0.0)
            else:
                m[i, j] = acc
                m[j, i] = np.conj(acc)
    return defect, m


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral data of a Hermitian matrix: descending eigenvalues, unitary
    eigenvector columns, and the rank (count of eigenvalues above rank_tol).
    Eigenvalues at or below rank_tol (and no lower than -1e-8) are exactly 0.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    rank: int
    rank_tol: float = RANK_TOL


def _eig_core(
    work: np.ndarray, rank_tol: float, require_nonnegative: bool
) -> EigenDecomposition:
    """Shared tail of the eigensolver; ``work`` is a fresh Hermitian array."""
    vals, vecs = _jacobi_cycle(work)
    idx = np.argsort(-vals, kind="stable")
    vals = vals[idx]
    vecs = np.ascontiguousarray(vecs[:, idx])
    if require_nonnegative and vals[-1] < NEG_EIG_TOL:
        raise NegativeSpectrum(
            f"eigenvalue {vals[-1]:.3e} below {NEG_EIG_TOL:g}"
        )
    vals[(vals >= NEG_EIG_TOL) & (vals <= rank_tol)] = 0.0
    rank = int(np.count_nonzero(vals > rank_tol))
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return EigenDecomposition(vals, vecs, rank, rank_tol)


def hermitian_eig(
    h, rank_tol: float = RANK_TOL, require_nonnegative: bool = False
) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian complex matrix by cyclic Jacobi.

    Eigenvalues come back in descending order with near-zero values clamped
    to exactly 0.  With ``require_nonnegative`` (the density-matrix path),
    any eigenvalue below -1e-8 raises :class:`NegativeSpectrum`.
    """
    h = as_complex_matrix(h)
    if hermiticity_defect(h) > HERM_TOL:
        raise NotHermitian(
            f"matrix is not Hermitian within {HERM_TOL:g} "
            f"(defect {hermiticity_defect(h):.3e})"
        )
    work = np.ascontiguousarray((h + h.conj().T) / 2.0)
    return _eig_core(work, rank_tol, require_nonnegative)


class DensityMatrix:
    """A d x d positive semidefinite unit-trace operator with cached spectral
    data.  Construction validates Hermiticity and trace and performs the
    eigendecomposition once; instances are immutable.
    """

    __slots__ = ("matrix", "eig")

    def __init__(self, matrix, rank_tol: float = RANK_TOL):
        m = as_complex_matrix(matrix)
        defect = hermiticity_defect(m)
        if defect > HERM_TOL:
            raise NotHermitian(f"state has Hermiticity defect {defect:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > 1e-12:
            raise ValueError(f"state trace is {tr}, expected 1 within 1e-12")
        m = np.ascontiguousarray((m + m.conj().T) / 2.0)
        work = m.copy()
        m.setflags(write=False)
        self.matrix = m
        self.eig = _eig_core(work, rank_tol, require_nonnegative=True)

    @classmethod
    def from_spectral(
        cls, eigenvalues, eigenvectors, rank_tol: float = RANK_TOL
    ) -> "DensityMatrix":
        """Build a state from known spectral data, skipping the eigensolver.

        The caller supplies nonnegative weights summing to 1 and orthonormal
        eigenvector columns (checked to 1e-10); weights are sorted descending
        and clamped by the same policy as :func:`hermitian_eig`.
        """
        vals = np.asarray(eigenvalues, dtype=np.float64).copy()
        vecs = as_complex_matrix(eigenvectors)
        d = vecs.shape[0]
        if vals.shape != (d,):
            raise DimMismatch(
                f"{vals.shape[0]} eigenvalues for dimension-{d} eigenvectors"
            )
        if vals.min() < NEG_EIG_TOL:
            raise NegativeSpectrum(f"weight {vals.min():.3e} below {NEG_EIG_TOL:g}")
        if abs(vals.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {vals.sum()!r}, expected 1")
        idx = np.argsort(-vals, kind="stable")
        vals = vals[idx]
        vecs = np.ascontiguousarray(vecs[:, idx])
        vals[(vals >= NEG_EIG_TOL) & (vals <= rank_tol)] = 0.0
        rank = int(np.count_nonzero(vals > rank_tol))
        unit_defect, matrix = _spectral_build(vals, vecs)
        if unit_defect > 1e-10:
            raise ValueError(f"eigenvector columns not orthonormal ({unit_defect:.3e})")
        obj = cls.__new__(cls)
        matrix.setflags(write=False)
        vals.setflags(write=False)
        vecs.setflags(write=False)
        obj.matrix = matrix
        obj.eig = EigenDecomposition(vals, vecs, rank, rank_tol)
        return obj

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def purity(self) -> float:
        """Tr[rho^2], computed from the cached spectrum."""
        return float(np.sum(self.eig.eigenvalues**2))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"DensityMatrix(dim={self.dim}, rank={self.eig.rank}, purity={self.purity:.6f})"


def bloch_to_density(r) -> DensityMatrix:
    """Qubit state 1/2 (I + r . sigma) from a Bloch vector with |r| <= 1."""
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (3,):
        raise DimMismatch(f"Bloch vector must have 3 components, got shape {r.shape}")
    if np.linalg.norm(r) > 1.0 + 1e-12:
        raise OutOfBall(f"|r| = {np.linalg.norm(r)!r} exceeds 1")
    rho = 0.5 * (IDENTITY_2 + r[0] * SIGMA_X + r[1] * SIGMA_Y + r[2] * SIGMA_Z)
    return DensityMatrix(rho)


def matrix_power(rho: DensityMatrix, p: float) -> np.ndarray:
    """rho^p for p in (0, 1] via the cached spectrum, with 0^p := 0."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"exponent must lie in (0, 1], got {p!r}")
    vals = rho.eig.eigenvalues
    vecs = rho.eig.eigenvectors
    return (vecs * vals**p) @ vecs.conj().T


# --- seeded random generation -------------------------------------------

_MASK64 = (1 << 64) - 1


def rng_stream(seed: int, *salt: int) -> np.random.Generator:
    """Deterministic PCG64 stream keyed by (seed, *salt).

    Streams for different salts are independent, so sweeps can derive one
    stream per sample and aggregate in any order.
    """
    key = tuple(int(x) & _MASK64 for x in (seed, *salt))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(key)))


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return rng_stream(int(seed))


@njit(cache=True)
def _orthonormalize_columns(g):  # pragma: no cover - exercised via random_unitary
    """Two-pass modified Gram-Schmidt, in place.  Equivalent to QR with a
    positive real R diagonal, which maps Ginibre input to the Haar measure."""
    d = g.shape[0]
    for j in range(d):
        for _ in range(2):
            for k in range(j):
                dot = 0.0 + 0.0j
                for i in range(d):
                    dot += np.conj(g[i, k]) * g[i, j]
                for i in range(d):
                    g[i, j] -= dot * g[i, k]
        norm_sq = 0.0
        for i in range(d):
            norm_sq += g[i, j].real ** 2 + g[i, j].imag ** 2
        inv = 1.0 / np.sqrt(norm_sq)
        for i in range(d):
            g[i, j] *= inv
    return g


def random_unitary(d: int, seed) -> np.ndarray:
    """Haar-distributed d x d unitary (orthonormalized Ginibre matrix)."""
    if d < 1:
        raise DimMismatch(f"dimension must be >= 1, got {d}")
    rng = _as_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return _orthonormalize_columns(np.ascontiguousarray(g))


def random_hermitian(d: int, seed) -> np.ndarray:
    """Gaussian Hermitian matrix, exactly self-adjoint by construction."""
    if d < 1:
        raise DimMismatch(f"dimension must be >= 1, got {d}")
    rng = _as_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2.0


def random_normal_matrix(d: int, seed) -> np.ndarray:
    """Random normal (generally non-Hermitian) matrix U diag(z) U^dagger."""
    rng = _as_rng(seed)
    u = random_unitary(d, rng)
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return (u * z) @ u.conj().T


def random_pure_state(d: int, seed) -> DensityMatrix:
    """Haar-random pure state as a rank-1 density matrix."""
    rng = _as_rng(seed)
    u = random_unitary(d, rng)
    vals = np.zeros(d)
    vals[0] = 1.0
    return DensityMatrix.from_spectral(vals, u)


def random_density_matrix(d: int, rank: int, seed) -> DensityMatrix:
    """Random rank-``rank`` state: Haar eigenbasis with flat-Dirichlet weights.

    Deterministic in the seed; the same seed reproduces the state bit for bit.
    """
    if not 1 <= rank <= d:
        raise BadRank(f"rank must lie in 1..{d}, got {rank}")
    rng = _as_rng(seed)
    u = random_unitary(d, rng)
    if rank == 1:
        weights = np.array([1.0])
    else:
        weights = rng.dirichlet(np.ones(rank))
    vals = np.zeros(d)
    vals[:rank] = np.sort(weights)[::-1]
    return DensityMatrix.from_spectral(vals, u)
