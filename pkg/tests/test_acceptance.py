"""Acceptance suite: one test per criterion, each at its stated scale and
tolerance, printing a PASS line on success (run with -s or -rA to see them).

Criterion 6 is split: convexity is asserted for the geometric/Dyson family
and the operator-mean order range s in [-1, 0], where it provably holds.
For kernels below the harmonic point (s < -1, including the min kernel)
random mixtures yield genuine counterexamples - see
test_sweeps.test_convexity_counterexample_below_minus_one for a pinned
instance - so the corresponding sweep is expected to fail and is marked
strict-xfail rather than weakened.
"""

import math
import time

import numpy as np
import pytest

from skewlib.cli import main
from skewlib.linalg import (
    SIGMA_X,
    DensityMatrix,
    bloch_to_density,
    random_density_matrix,
    random_hermitian,
    rng_stream,
)
from skewlib.means import ORDER_CHAIN, MeanOrder
from skewlib.skewinfo import (
    qfi_sld,
    skew_information,
    variance,
    wy_skew_information_direct,
    wyd_skew_information,
    zeta,
)
from skewlib.sweeps import (
    SweepConfig,
    check_commutation_zero,
    check_convexity,
    check_corollary,
    check_lower_bound,
    check_monotone_orders,
    check_nonnegativity,
    check_pure_equality,
    check_qubit_sandwich,
    check_trace_shift,
    check_uncertainty_baselines,
    check_unitary_covariance,
    check_variance_dominance,
    purity_scaling_sweep,
)

DIMS = (2, 3, 4, 5, 6)
ZERO = MeanOrder.zero()
MIN = MeanOrder.neg_infinity()
QFI = MeanOrder.finite(-1.0)

CONVEX_RANGE_ORDERS = (
    ZERO,
    MeanOrder.zero(weight=0.1),
    MeanOrder.zero(weight=0.25),
    MeanOrder.zero(weight=0.9),
    QFI,
    MeanOrder.finite(-0.5),
)
BELOW_HARMONIC_ORDERS = (
    MIN,
    MeanOrder.finite(-8.0),
    MeanOrder.finite(-4.0),
    MeanOrder.finite(-2.0),
)


def _report(num: int, text: str) -> None:
    print(f"ACCEPTANCE {num:02d} PASS - {text}")


def _per_cell(total: int, cells: int) -> int:
    return math.ceil(total / cells)


def _cfg(samples_per_cell: int, orders=ORDER_CHAIN, dims=DIMS, tolerance=1e-9, seed=20_260_810):
    return SweepConfig(
        dims=dims, orders=orders, samples=samples_per_cell, seed=seed, tolerance=tolerance
    )


def test_criterion_01_special_value_oracle():
    start = time.perf_counter()
    rho = DensityMatrix(np.diag([0.75, 0.25]).astype(complex))
    assert abs(skew_information(rho, ZERO, SIGMA_X) - (1 - np.sqrt(3) / 2)) <= 1e-10
    assert abs(skew_information(rho, QFI, SIGMA_X) - 0.25) <= 1e-10
    assert abs(skew_information(rho, MIN, SIGMA_X) - 0.5) <= 1e-10
    assert abs(variance(rho, SIGMA_X) - 1.0) <= 1e-10
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _report(1, f"special values at 1e-10 in {elapsed:.3f}s")


def test_criterion_02_dual_path_equivalence():
    start = time.perf_counter()
    worst = {"wy": 0.0, "sld": 0.0, "wyd": 0.0}
    for k in range(1000):
        rng = rng_stream(20_260_810, 2, k)
        d = int(rng.integers(2, 7))
        rho = random_density_matrix(d, int(rng.integers(1, d + 1)), rng)
        x = random_hermitian(d, rng)
        w = float(rng.uniform(0.05, 0.95))
        worst["wy"] = max(
            worst["wy"],
            abs(wy_skew_information_direct(rho, x) - skew_information(rho, ZERO, x)),
        )
        worst["sld"] = max(
            worst["sld"], abs(qfi_sld(rho, x) - skew_information(rho, QFI, x))
        )
        worst["wyd"] = max(
            worst["wyd"],
            abs(
                wyd_skew_information(rho, w, x)
                - skew_information(rho, MeanOrder.zero(weight=w), x)
            ),
        )
    elapsed = time.perf_counter() - start
    assert max(worst.values()) <= 1e-9
    assert elapsed < 30.0
    _report(
        2,
        "dual paths on 10^3 instances: "
        + " ".join(f"{k}={v:.2e}" for k, v in worst.items())
        + f" in {elapsed:.1f}s",
    )


def test_criterion_03_theorem1_suite():
    start = time.perf_counter()
    per_cell = _per_cell(10_000, len(DIMS) * len(ORDER_CHAIN))
    results = {}
    for name, check in (
        ("nonneg", check_nonnegativity),
        ("commutation", check_commutation_zero),
        ("trace_shift", check_trace_shift),
        ("unitary_cov", check_unitary_covariance),
    ):
        rep = check(_cfg(per_cell))
        assert rep.checked >= 10_000
        assert rep.violations == 0, (name, rep.max_slack)
        results[name] = rep.max_slack
    elapsed = time.perf_counter() - start
    assert elapsed < 300.0
    _report(
        3,
        "nonnegativity/commutation/trace-shift/unitary-covariance clean: "
        + " ".join(f"{k}={v:.1e}" for k, v in results.items())
        + f" in {elapsed:.1f}s",
    )


def test_criterion_04_theorem2_suite():
    per_cell_mono = _per_cell(10_000, len(DIMS))
    rep = check_monotone_orders(_cfg(per_cell_mono, tolerance=1e-10))
    assert rep.checked >= 10_000 and rep.violations == 0

    per_cell_var = _per_cell(10_000, len(DIMS) * len(ORDER_CHAIN))
    rep_v = check_variance_dominance(_cfg(per_cell_var, tolerance=1e-10))
    assert rep_v.checked >= 10_000 and rep_v.violations == 0

    per_cell_pure = _per_cell(1_000, len(DIMS) * len(ORDER_CHAIN))
    rep_p = check_pure_equality(_cfg(per_cell_pure, tolerance=1e-9))
    assert rep_p.checked >= 1_000 and rep_p.violations == 0
    _report(
        4,
        f"monotone chain slack={rep.max_slack:.1e}, I<=V slack={rep_v.max_slack:.1e},"
        f" pure equality slack={rep_p.max_slack:.1e}",
    )


def test_criterion_05_purity_scaling():
    result = purity_scaling_sweep(10_000, 20_260_810)
    assert result["max_eig_diff"] <= 1e-10
    assert result["max_rel_err"] <= 1e-8
    _report(
        5,
        f"10^4 equal-purity pairs: eig diff {result['max_eig_diff']:.1e},"
        f" ratio-law rel err {result['max_rel_err']:.1e}"
        f" ({result['skipped']} skipped)",
    )


def test_criterion_06_convexity_geometric_family_and_operator_mean_range():
    rep = check_convexity(_cfg(10_000, orders=CONVEX_RANGE_ORDERS))
    assert rep.violations == 0, rep.max_slack
    _report(
        6,
        f"convexity clean over {rep.checked} mixtures"
        f" (weights 0.1/0.25/0.5/0.9 and s in [-1,0]), slack {rep.max_slack:.1e}",
    )


@pytest.mark.xfail(
    strict=True,
    reason="kernels below the harmonic point (s < -1, min) are not operator "
    "means and admit genuine convexity counterexamples; a pinned instance "
    "lives in test_sweeps.test_convexity_counterexample_below_minus_one",
)
def test_criterion_06_convexity_below_harmonic_orders_as_stated():
    rep = check_convexity(_cfg(10_000, orders=BELOW_HARMONIC_ORDERS))
    assert rep.violations == 0, (rep.violations, rep.max_slack)


def test_criterion_07_lower_bound():
    rep = check_lower_bound(_cfg(10_000))
    assert rep.violations == 0, rep.max_slack

    worst_eq = 0.0
    for k in range(1000):
        rng = rng_stream(20_260_810, 7, k)
        d = int(rng.integers(2, 7))
        rho = random_density_matrix(d, int(rng.integers(1, d + 1)), rng)
        x = random_hermitian(d, rng)
        order = ORDER_CHAIN[k % len(ORDER_CHAIN)]
        i_x = skew_information(rho, order, x, clamp=False)
        i_plus = skew_information(rho, order, 2.0 * x, clamp=False)
        i_minus = skew_information(rho, order, 0.0 * x, clamp=False)
        worst_eq = max(worst_eq, abs(i_x * i_x - (i_plus - i_minus) ** 2 / 16.0))
    assert worst_eq <= 1e-10
    _report(
        7,
        f"product bound clean over {rep.checked} samples (slack {rep.max_slack:.1e});"
        f" Y=X equality defect {worst_eq:.1e}",
    )


def test_criterion_08_qubit_sandwich_and_corollary():
    qdims = (2,)
    rep_s = check_qubit_sandwich(_cfg(10_000, dims=qdims))
    assert rep_s.violations == 0, rep_s.max_slack
    rep_c = check_corollary(_cfg(10_000, dims=qdims))
    assert rep_c.violations == 0, rep_c.max_slack

    # exact-equality strata: pure states, the min kernel, proportional pairs
    worst_upper = 0.0
    for k in range(2000):
        rng = rng_stream(20_260_810, 8, k)
        direction = rng.standard_normal(3)
        direction /= np.linalg.norm(direction)
        x = random_hermitian(2, rng)
        y = random_hermitian(2, rng)
        kappa = float(rng.standard_normal())
        generic = bloch_to_density(float(rng.uniform(0.0, 1.0)) * direction)
        pure = bloch_to_density(direction)
        order = ORDER_CHAIN[k % len(ORDER_CHAIN)]

        def upper_margin(rho, a, b, order=order):
            z = zeta(rho, order, a, b)
            return abs(
                abs(z) ** 2
                - skew_information(rho, order, a) * skew_information(rho, order, b)
            )

        worst_upper = max(
            worst_upper,
            upper_margin(pure, x, y),
            upper_margin(generic, x, y, order=MIN),
            upper_margin(generic, x, kappa * x),
        )
    assert worst_upper <= 1e-9
    _report(
        8,
        f"sandwich slack {rep_s.max_slack:.1e}, corollary slack {rep_c.max_slack:.1e},"
        f" equality strata defect {worst_upper:.1e}",
    )


def test_criterion_09_uncertainty_baselines():
    per_cell = _per_cell(10_000, len(DIMS))
    rep = check_uncertainty_baselines(_cfg(per_cell))
    assert rep.checked >= 10_000
    assert rep.violations == 0, rep.max_slack
    _report(9, f"variance baselines clean over {rep.checked} samples, slack {rep.max_slack:.1e}")


def _read_csv(path):
    lines = path.read_text().strip().splitlines()
    rows = [ln.split(",") for ln in lines if not ln.startswith("#")]
    return rows[0], rows[1:]


def test_criterion_10_figure_datasets(tmp_path):
    fig1 = tmp_path / "fig1.csv"
    fig1_twin = tmp_path / "fig1b.csv"
    for path in (fig1, fig1_twin):
        assert main(["sweep-s", "--out", str(path)]) == 0
    assert fig1.read_bytes() == fig1_twin.read_bytes()

    header, rows = _read_csv(fig1)
    assert header == ["purity", "s", "I_s"]
    by_purity: dict = {}
    for purity, s, value in rows:
        by_purity.setdefault(purity, []).append((s, float(value)))
    for purity, entries in by_purity.items():
        values = [v for _, v in entries]
        assert entries[0][0] == "-inf" and entries[-1][0] == "0"
        assert all(values[i] - values[i + 1] >= -1e-12 for i in range(len(values) - 1))
        min_kernel_value = values[0]
        assert all(v <= min_kernel_value + 1e-12 for v in values[1:])

    fig2 = tmp_path / "fig2.csv"
    fig2_twin = tmp_path / "fig2b.csv"
    for path in (fig2, fig2_twin):
        assert main(["sweep-bloch", "--out", str(path)]) == 0
    assert fig2.read_bytes() == fig2_twin.read_bytes()

    header, rows = _read_csv(fig2)
    assert header == ["r", "order", "product", "corollary_lhs", "corollary_rhs", "lower_bound_rhs"]
    for _, _, _, lhs, rhs, _ in rows:
        assert float(lhs) <= float(rhs) + 1e-9
    _report(10, f"figure datasets deterministic; {len(rows)} contour rows within bounds")
