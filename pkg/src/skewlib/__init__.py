"""skewlib: generalized skew information over the power-mean kernel family.

Computation of the sesquilinear information form and its special cases,
randomized verification sweeps for the associated inequalities, and CSV
export of the two reference figure datasets.
"""

__version__ = "0.1.0"

from .errors import (
    BadOrder,
    BadPurity,
    BadRank,
    BadSpectrum,
    BadWeight,
    DimMismatch,
    DimUnsupported,
    NegativeSpectrum,
    NotHermitian,
    NotNormal,
    OutOfBall,
    SkewlibError,
)
from .linalg import (
    DensityMatrix,
    EigenDecomposition,
    PAULIS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    adjoint,
    bloch_to_density,
    commutator,
    hermitian_eig,
    matrix_power,
    random_density_matrix,
    random_hermitian,
    random_normal_matrix,
    random_pure_state,
    random_unitary,
    rng_stream,
    trace,
)
from .means import MeanOrder, ORDER_CHAIN, format_order, kernel_weight, parse_order, power_mean
from .skewinfo import (
    covariance,
    im_zeta,
    qfi_sld,
    qubit_closed_form,
    re_zeta_polarization,
    skew_information,
    variance,
    wy_skew_information_direct,
    wyd_skew_information,
    zeta,
)
from .sweeps import (
    SweepConfig,
    SweepReport,
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
    pencil_det,
    pencil_matrix,
    purity_scaling_sweep,
    replay_worst_instance,
    search_upper_bound_violations,
)

__all__ = [name for name in dir() if not name.startswith("_")]
