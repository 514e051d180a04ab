"""Randomized verification sweeps for the skew-information inequalities.

Every inequality is evaluated as a signed margin (slack): nonnegative means
it holds, and only margins below ``-tolerance`` count as violations, so the
tolerance policy lives in one place.  Equality claims contribute margins of
the form ``-|lhs - rhs|``.

Sweeps are deterministic: sample ``j`` of a (dimension, order) cell draws
every random quantity from a stream keyed by (seed, suite, d, order, j), so
reports do not depend on evaluation order and any recorded instance can be
regenerated from its seed and index alone.  Aggregation is a min-reduction
over margins with ties resolved toward the earliest cell and sample index.
Chunks of samples may be dispatched to worker processes; the environment
variable ``SKEWLIB_THREADS`` caps the worker count (default 1).
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DimUnsupported
from .linalg import (
    DensityMatrix,
    bloch_to_density,
    random_density_matrix,
    random_hermitian,
    random_normal_matrix,
    random_pure_state,
    random_unitary,
    rng_stream,
)
from .means import ORDER_CHAIN, MeanOrder, format_order, parse_order
from . import skewinfo as si

_SUITE_IDS = {
    "nonneg": 1,
    "commutation": 2,
    "trace_shift": 3,
    "unitary_cov": 4,
    "monotone": 5,
    "variance": 6,
    "pure_equality": 7,
    "convexity": 8,
    "lower": 9,
    "sandwich": 10,
    "corollary": 11,
    "baselines": 12,
    "search3d": 13,
}

_NO_ORDER_SALT = (3, 0, 0)
_CHUNK = 4096


@dataclass(frozen=True)
class SweepConfig:
    """Sweep parameters: dimensions, kernel orders, per-cell sample count,
    base seed and violation tolerance."""

    dims: tuple[int, ...] = (2, 3, 4, 5, 6)
    orders: tuple[MeanOrder, ...] = ORDER_CHAIN
    samples: int = 1000
    seed: int = 0
    tolerance: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "orders", tuple(self.orders))
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not self.dims or any(d < 2 for d in self.dims):
            raise ValueError("dims must be a nonempty list of integers >= 2")
        if not self.orders:
            raise ValueError("orders must be nonempty")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass
class SweepReport:
    """Aggregate of one sweep: samples checked, count of margins below
    -tolerance, the most negative margin, and the instance attaining it."""

    checked: int
    violations: int
    max_slack: float
    worst_instance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "checked": self.checked,
            "violations": self.violations,
            "max_slack": self.max_slack,
            "worst_instance": self.worst_instance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "SweepReport":
        return cls(
            checked=data["checked"],
            violations=data["violations"],
            max_slack=data["max_slack"],
            worst_instance=data["worst_instance"],
        )


def serialize_matrix(m: np.ndarray) -> list:
    """Matrix as rows of [re, im] pairs (doubles round-trip through JSON)."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def deserialize_matrix(rows: list) -> np.ndarray:
    return np.array(
        [[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128
    )


def _order_salt(order: MeanOrder | None) -> tuple[int, int, int]:
    if order is None:
        return _NO_ORDER_SALT
    kind = {"neg_inf": 0, "zero": 1, "finite": 2}[order.kind]
    s_bits = int(np.float64(order.s or 0.0).view(np.uint64))
    w_bits = int(np.float64(order.weight).view(np.uint64))
    return kind, s_bits, w_bits


def _sample_rng(seed: int, suite: str, d: int, order: MeanOrder | None, j: int):
    return rng_stream(seed, _SUITE_IDS[suite], d, *_order_salt(order), j)


# --- per-sample instance builders -----------------------------------------


def _random_state(rng, d: int) -> DensityMatrix:
    rank = int(rng.integers(1, d + 1))
    return random_density_matrix(d, rank, rng)


def _qubit_state(rng, j: int) -> DensityMatrix:
    """Stratified qubit state: every 100th sample a near-maximally-mixed
    perturbation (purity < 1/2 + 1e-6), every 10th a pure state, generic
    Bloch radius otherwise."""
    n = rng.standard_normal(3)
    n /= np.linalg.norm(n)
    if j % 100 == 1:
        r = float(rng.uniform(0.0, 1.4e-3))
    elif j % 10 == 0:
        r = 1.0
    else:
        r = float(rng.uniform(0.0, 1.0))
    return bloch_to_density(r * n)


def _pair_xy(rng, d: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    """Two Hermitian observables; every (10k+5)-th sample makes Y a real
    multiple of X so the proportional equality stratum is exercised."""
    x = random_hermitian(d, rng)
    if j % 10 == 5:
        y = float(rng.standard_normal()) * x
    else:
        y = random_hermitian(d, rng)
    return x, y


def _payload(rho: DensityMatrix, x, y) -> dict:
    return {
        "rho": serialize_matrix(rho.matrix),
        "X": serialize_matrix(x),
        "Y": None if y is None else serialize_matrix(y),
    }


# --- samplers: (rng, d, order, j) -> (margin, payload-or-None) -------------


def _sample_nonneg(rng, d, order, j, collect=False):
    rho = _random_state(rng, d)
    if j % 2 == 0:
        x = random_hermitian(d, rng)
    else:
        x = random_normal_matrix(d, rng)
    margin = si.skew_information(rho, order, x, clamp=False)
    return margin, (_payload(rho, x, None) if collect else None)


def _sample_commutation(rng, d, order, j, collect=False):
    rho = _random_state(rng, d)
    c = rng.standard_normal(3)
    m = rho.matrix
    x = c[0] * np.eye(d, dtype=np.complex128) + c[1] * m + c[2] * (m @ m)
    margin = -abs(si.skew_information(rho, order, x, clamp=False))
    return margin, (_payload(rho, x, None) if collect else None)


def _sample_trace_shift(rng, d, order, j, collect=False):
    rho = _random_state(rng, d)
    x = random_hermitian(d, rng)
    c = float(rng.standard_normal())
    shifted = x + c * np.eye(d, dtype=np.complex128)
    margin = -abs(
        si.skew_information(rho, order, shifted, clamp=False)
        - si.skew_information(rho, order, x, clamp=False)
    )
    return margin, (_payload(rho, x, None) if collect else None)


def _sample_unitary_cov(rng, d, order, j, collect=False):
    rho = _random_state(rng, d)
    x = random_hermitian(d, rng)
    u = random_unitary(d, rng)
    rotated = DensityMatrix(u @ rho.matrix @ u.conj().T)
    margin = -abs(
        si.skew_information(rotated, order, x, clamp=False)
        - si.skew_information(rho, order, u.conj().T @ x @ u, clamp=False)
    )
    return margin, (_payload(rho, x, None) if collect else None)


def _sample_monotone(rng, d, orders, j, collect=False):
    rho = _random_state(rng, d)
    x = random_hermitian(d, rng)
    chain = sorted(orders, key=lambda o: o.sort_key())
    values = [si.skew_information(rho, o, x, clamp=False) for o in chain]
    margin = min(values[k] - values[k + 1] for k in range(len(values) - 1))
    return margin, (_payload(rho, x, None) if collect else None)


def _sample_variance(rng, d, order, j, collect=False):
    rho = _random_state(rng, d)
    x = random_hermitian(d, rng)
    margin = si.variance(rho, x) - si.skew_information(rho, order, x, clamp=False)
    return margin, (_payload(rho, x, None) if collect else None)


def _sample_pure_equality(rng, d, order, j, collect=False):
    rho = random_pure_state(d, rng)
    x = random_hermitian(d, rng)
    margin = -abs(
        si.variance(rho, x) - si.skew_information(rho, order, x, clamp=False)
    )
    return margin, (_payload(rho, x, None) if collect else None)


def _sample_convexity(rng, d, order, j, collect=False):
    k = int(rng.integers(2, 5))
    if j % 2 == 0:
        components = [_random_state(rng, d) for _ in range(k)]
    else:
        components = [random_pure_state(d, rng) for _ in range(k)]
    probs = rng.dirichlet(np.ones(k))
    x = random_hermitian(d, rng)
    mixture = DensityMatrix(
        sum(p * comp.matrix for p, comp in zip(probs, components))
    )
    lhs = sum(
        p * si.skew_information(comp, order, x, clamp=False)
        for p, comp in zip(probs, components)
    )
    margin = lhs - si.skew_information(mixture, order, x, clamp=False)
    return margin, (_payload(mixture, x, None) if collect else None)


def _sample_lower(rng, d, order, j, collect=False):
    rho = _random_state(rng, d)
    x, y = _pair_xy(rng, d, j)
    i_x = si.skew_information(rho, order, x, clamp=False)
    i_y = si.skew_information(rho, order, y, clamp=False)
    i_plus = si.skew_information(rho, order, x + y, clamp=False)
    i_minus = si.skew_information(rho, order, x - y, clamp=False)
    margin = i_x * i_y - (i_plus - i_minus) ** 2 / 16.0
    return margin, (_payload(rho, x, y) if collect else None)


def _sample_sandwich(rng, d, order, j, collect=False):
    rho = _qubit_state(rng, j)
    x, y = _pair_xy(rng, 2, j)
    z = si.zeta(rho, order, x, y)
    product = si.skew_information(rho, order, x, clamp=False) * si.skew_information(
        rho, order, y, clamp=False
    )
    lower = product - z.real**2
    upper = abs(z) ** 2 - product
    margin = min(lower, upper)
    return margin, (_payload(rho, x, y) if collect else None)


def _sample_corollary(rng, d, order, j, collect=False):
    rho = _qubit_state(rng, j)
    x, y = _pair_xy(rng, 2, j)
    i_x = si.skew_information(rho, order, x, clamp=False)
    i_y = si.skew_information(rho, order, y, clamp=False)
    re_pol = si.re_zeta_polarization(rho, order, x, y)
    cross = i_x * i_y - re_pol**2
    bound = si.im_zeta(rho, x, y) ** 2
    margin = min(bound - cross, cross)
    return margin, (_payload(rho, x, y) if collect else None)


def _sample_baselines(rng, d, order, j, collect=False):
    rho = _random_state(rng, d)
    x, y = _pair_xy(rng, d, j)
    v_x = si.variance(rho, x)
    v_y = si.variance(rho, y)
    cov = si.covariance(rho, x, y)
    robertson_rhs = si.im_zeta(rho, x, y) ** 2
    v_plus = si.variance(rho, x + y)
    v_minus = si.variance(rho, x - y)
    refined = v_x * v_y - (v_plus - v_minus) ** 2 / 16.0
    margin = min(
        v_x * v_y - abs(cov) ** 2,
        refined - robertson_rhs,
        v_x * v_y - robertson_rhs,
    )
    return margin, (_payload(rho, x, y) if collect else None)


def _sample_search3d(rng, d, order, j, collect=False):
    rho = _random_state(rng, d)
    x, y = _pair_xy(rng, d, j)
    z = si.zeta(rho, order, x, y)
    product = si.skew_information(rho, order, x, clamp=False) * si.skew_information(
        rho, order, y, clamp=False
    )
    margin = abs(z) ** 2 - product
    return margin, (_payload(rho, x, y) if collect else None)


_SAMPLERS = {
    "nonneg": _sample_nonneg,
    "commutation": _sample_commutation,
    "trace_shift": _sample_trace_shift,
    "unitary_cov": _sample_unitary_cov,
    "monotone": _sample_monotone,
    "variance": _sample_variance,
    "pure_equality": _sample_pure_equality,
    "convexity": _sample_convexity,
    "lower": _sample_lower,
    "sandwich": _sample_sandwich,
    "corollary": _sample_corollary,
    "baselines": _sample_baselines,
    "search3d": _sample_search3d,
}

#: Suites whose per-sample margin does not depend on a single kernel order.
_ORDERLESS = {"baselines"}
#: Suites that consume the whole order list at once (monotone chain).
_CHAINED = {"monotone"}


def _cell_order_arg(suite: str, cfg: SweepConfig, order: MeanOrder | None):
    if suite in _CHAINED:
        return cfg.orders
    return order


def _cells(suite: str, cfg: SweepConfig) -> list[tuple[int, MeanOrder | None]]:
    if suite in _ORDERLESS or suite in _CHAINED:
        return [(d, None) for d in cfg.dims]
    return [(d, order) for d in cfg.dims for order in cfg.orders]


def _run_chunk(args) -> tuple[int, int, float, int]:
    suite, seed, d, order_text, chain_texts, j0, j1, tolerance = args
    order = parse_order(order_text) if order_text is not None else None
    if chain_texts is not None:
        order_arg = tuple(parse_order(t) for t in chain_texts)
    else:
        order_arg = order
    sampler = _SAMPLERS[suite]
    violations = 0
    worst = np.inf
    worst_j = j0
    for j in range(j0, j1):
        rng = _sample_rng(seed, suite, d, order, j)
        margin, _ = sampler(rng, d, order_arg, j)
        if margin < -tolerance:
            violations += 1
        if margin < worst:
            worst = margin
            worst_j = j
    return j1 - j0, violations, float(worst), worst_j


def _worker_count() -> int:
    try:
        n = int(os.environ.get("SKEWLIB_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def _sweep(suite: str, cfg: SweepConfig) -> SweepReport:
    cells = _cells(suite, cfg)
    chain_texts = (
        tuple(format_order(o) for o in cfg.orders) if suite in _CHAINED else None
    )
    tasks = []
    for d, order in cells:
        order_text = format_order(order) if order is not None else None
        for j0 in range(0, cfg.samples, _CHUNK):
            j1 = min(j0 + _CHUNK, cfg.samples)
            tasks.append(
                (suite, cfg.seed, d, order_text, chain_texts, j0, j1, cfg.tolerance)
            )

    workers = _worker_count()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_chunk, tasks, chunksize=1))
    else:
        results = [_run_chunk(t) for t in tasks]

    checked = 0
    violations = 0
    best_margin = np.inf
    best_key: tuple[int, int] | None = None  # (cell position, sample index)
    task_cell = []
    for ci, (d, order) in enumerate(cells):
        for j0 in range(0, cfg.samples, _CHUNK):
            task_cell.append(ci)
    for (n, v, margin, j), ci in zip(results, task_cell):
        checked += n
        violations += v
        if margin < best_margin:
            best_margin = margin
            best_key = (ci, j)

    assert best_key is not None
    ci, j = best_key
    d, order = cells[ci]
    rng = _sample_rng(cfg.seed, suite, d, order, j)
    margin, payload = _SAMPLERS[suite](
        rng, d, _cell_order_arg(suite, cfg, order), j, collect=True
    )
    worst = {
        "seed": cfg.seed,
        "index": j,
        "d": d,
        "order": format_order(order) if order is not None else None,
        "margin": margin,
        **payload,
    }
    return SweepReport(checked, violations, float(best_margin), worst)


def replay_worst_instance(
    suite: str, worst: dict, orders: tuple[MeanOrder, ...] = ORDER_CHAIN
) -> float:
    """Recompute the margin of a recorded worst instance from its seed and
    index; bit-identical to the recorded value.  Chain suites (monotone)
    additionally need the order list the sweep ran with."""
    order_text = worst["order"]
    order = parse_order(order_text) if order_text is not None else None
    order_arg = tuple(orders) if suite in _CHAINED else order
    rng = _sample_rng(worst["seed"], suite, worst["d"], order, worst["index"])
    margin, _ = _SAMPLERS[suite](rng, worst["d"], order_arg, worst["index"])
    return margin


# --- public checks ----------------------------------------------------------


def check_nonnegativity(cfg: SweepConfig) -> SweepReport:
    """I >= 0 over random states and Hermitian or normal observables."""
    return _sweep("nonneg", cfg)


def check_commutation_zero(cfg: SweepConfig) -> SweepReport:
    """I vanishes for observables that are polynomials in the state."""
    return _sweep("commutation", cfg)


def check_trace_shift(cfg: SweepConfig) -> SweepReport:
    """I is unchanged by adding a multiple of the identity to the observable."""
    return _sweep("trace_shift", cfg)


def check_unitary_covariance(cfg: SweepConfig) -> SweepReport:
    """I(U rho U^+, X) equals I(rho, U^+ X U)."""
    return _sweep("unitary_cov", cfg)


def check_monotone_orders(cfg: SweepConfig) -> SweepReport:
    """I is non-increasing along cfg.orders sorted from -inf toward 0."""
    return _sweep("monotone", cfg)


def check_variance_dominance(cfg: SweepConfig) -> SweepReport:
    """I <= V at every order."""
    return _sweep("variance", cfg)


def check_pure_equality(cfg: SweepConfig) -> SweepReport:
    """I == V on pure states, at every order."""
    return _sweep("pure_equality", cfg)


def check_convexity(cfg: SweepConfig) -> SweepReport:
    """Mixing states never increases information: sum p_i I(rho_i) >= I(mix).

    Components alternate between random mixed states (eigen-ensembles) and
    non-orthogonal pure-state ensembles; weighted orders exercise the Dyson
    family.
    """
    return _sweep("convexity", cfg)


def check_lower_bound(cfg: SweepConfig) -> SweepReport:
    """I(X) I(Y) >= 1/16 (I(X+Y) - I(X-Y))^2 in any dimension."""
    return _sweep("lower", cfg)


def check_qubit_sandwich(cfg: SweepConfig) -> SweepReport:
    """Qubit two-sided bound |Re zeta|^2 <= I(X) I(Y) <= |zeta|^2, with
    stratified sampling over pure, near-maximally-mixed and generic states
    plus proportional observable pairs."""
    _require_qubit(cfg)
    return _sweep("sandwich", cfg)


def check_corollary(cfg: SweepConfig) -> SweepReport:
    """Qubit bound 0 <= I(X)I(Y) - (Re-polarization)^2 <= 1/4 |Tr rho[X,Y]|^2."""
    _require_qubit(cfg)
    return _sweep("corollary", cfg)


def check_uncertainty_baselines(cfg: SweepConfig) -> SweepReport:
    """Variance-based reference relations: the covariance bound, its
    polarization refinement, and the commutator bound."""
    return _sweep("baselines", cfg)


def search_upper_bound_violations(d: int, cfg: SweepConfig) -> SweepReport:
    """Exploratory d >= 3 search for |zeta|^2 - I(X)I(Y) < 0.

    Report-only: the qubit upper bound has no higher-dimensional claim, so
    violations here are findings, not failures, and the strongest violator is
    persisted for reproduction.
    """
    if d < 3:
        raise DimUnsupported(f"the upper-bound search needs d >= 3, got {d}")
    probe = SweepConfig(
        dims=(d,),
        orders=cfg.orders,
        samples=cfg.samples,
        seed=cfg.seed,
        tolerance=cfg.tolerance,
    )
    return _sweep("search3d", probe)


def _require_qubit(cfg: SweepConfig) -> None:
    if any(d != 2 for d in cfg.dims):
        raise DimUnsupported(f"qubit-only sweep got dims {cfg.dims}")


# --- pencil matrix ----------------------------------------------------------


def pencil_matrix(rho: DensityMatrix, order: MeanOrder, x, y) -> np.ndarray:
    """2x2 Hermitian Gram matrix of the form over the pair (x, y)."""
    if rho.dim != 2:
        raise DimUnsupported(f"pencil matrix is defined for qubits, got d={rho.dim}")
    zxx = si.zeta(rho, order, x, x)
    zxy = si.zeta(rho, order, x, y)
    zyy = si.zeta(rho, order, y, y)
    return np.array([[zxx, zxy], [zxy.conjugate(), zyy]], dtype=np.complex128)


def pencil_det(rho: DensityMatrix, order: MeanOrder, x, y) -> float:
    """det of the pencil matrix: I(X) I(Y) - |zeta(X, Y)|^2, always <= 0
    for qubits up to round-off (the upper bound restated)."""
    if rho.dim != 2:
        raise DimUnsupported(f"pencil det is defined for qubits, got d={rho.dim}")
    z = si.zeta(rho, order, x, y)
    product = si.skew_information(rho, order, x, clamp=False) * si.skew_information(
        rho, order, y, clamp=False
    )
    return float(product - abs(z) ** 2)


# --- purity-scaling sweep (qubit ratio law) ---------------------------------


def purity_scaling_sweep(
    samples: int,
    seed: int,
    orders: tuple[MeanOrder, ...] = ORDER_CHAIN,
) -> dict:
    """Equal-purity qubit pairs: eigenvalue sets must match and information
    ratios must follow the squared off-diagonal element ratio.

    Pairs whose reference off-diagonal element is below 1e-12 in square
    modulus are skipped (the ratio law presupposes a non-commuting reference).
    Returns the worst absolute eigenvalue discrepancy and worst relative
    ratio error observed.
    """
    max_eig_diff = 0.0
    max_rel_err = 0.0
    skipped = 0
    for j in range(samples):
        rng = rng_stream(seed, 77, j)
        purity = float(rng.uniform(0.5005, 1.0))
        radius = np.sqrt(2.0 * purity - 1.0)
        states = []
        for _ in range(2):
            n = rng.standard_normal(3)
            n /= np.linalg.norm(n)
            states.append(bloch_to_density(radius * n))
        rho, rho_ref = states
        x = random_hermitian(2, rng)
        x_ref = random_hermitian(2, rng)
        max_eig_diff = max(
            max_eig_diff,
            float(np.max(np.abs(rho.eig.eigenvalues - rho_ref.eig.eigenvalues))),
        )
        u, u_ref = rho.eig.eigenvectors, rho_ref.eig.eigenvectors
        off = u[:, 0].conj() @ x @ u[:, 1]
        off_ref = u_ref[:, 0].conj() @ x_ref @ u_ref[:, 1]
        if abs(off_ref) ** 2 < 1e-12:
            skipped += 1
            continue
        eta = abs(off) ** 2 / abs(off_ref) ** 2
        for order in orders:
            i_ref = si.skew_information(rho_ref, order, x_ref)
            i_val = si.skew_information(rho, order, x)
            expected = eta * i_ref
            scale = max(abs(expected), abs(i_val), 1e-300)
            max_rel_err = max(max_rel_err, abs(i_val - expected) / scale)
    return {
        "pairs": samples,
        "skipped": skipped,
        "max_eig_diff": max_eig_diff,
        "max_rel_err": max_rel_err,
    }
