"""Weighted power means over the closed order range [-inf, 0].

The kernel family is parameterized by an order tag rather than a bare
float: the endpoints (geometric mean, min) are limits, not values one can
plug into the finite-exponent formula, so they get explicit variants and
never go through a numerical limit.  Whenever either argument is exactly
zero the mean is defined to be zero, for every order and weight.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadOrder, BadWeight

_ZERO = "zero"
_NEG_INF = "neg_inf"
_FINITE = "finite"


@dataclass(frozen=True, slots=True)
class MeanOrder:
    """Order of a (weighted) two-argument power mean, restricted to s <= 0.

    ``kind`` is one of ``"zero"`` (geometric limit), ``"neg_inf"`` (min) or
    ``"finite"`` (strictly negative exponent ``s``).  ``weight`` is the
    weight attached to the *first* mean argument; 1/2 gives the symmetric
    family.  Use the classmethod constructors rather than ``__init__``.
    """

    kind: str
    s: float | None = None
    weight: float = 0.5

    def __post_init__(self) -> None:
        if self.kind not in (_ZERO, _NEG_INF, _FINITE):
            raise BadOrder(f"unknown mean-order kind {self.kind!r}")
        if self.kind == _FINITE:
            if self.s is None or not np.isfinite(self.s) or self.s >= 0:
                raise BadOrder(
                    f"finite order requires a finite exponent s < 0, got {self.s!r}"
                )
        elif self.s is not None:
            raise BadOrder(f"{self.kind!r} order takes no exponent")
        if not (0.0 <= self.weight <= 1.0):
            raise BadWeight(f"weight must lie in [0, 1], got {self.weight!r}")

    @classmethod
    def zero(cls, weight: float = 0.5) -> "MeanOrder":
        """Geometric-mean kernel (the s -> 0 limit); weighted for the Dyson family."""
        return cls(_ZERO, weight=weight)

    @classmethod
    def neg_infinity(cls) -> "MeanOrder":
        """Min kernel (the s -> -inf limit)."""
        return cls(_NEG_INF)

    @classmethod
    def finite(cls, s: float, weight: float = 0.5) -> "MeanOrder":
        """Finite-exponent kernel, s < 0 strictly."""
        return cls(_FINITE, s=float(s), weight=weight)

    @property
    def is_weighted(self) -> bool:
        return self.weight != 0.5

    def sort_key(self) -> float:
        """Position on the extended s axis, for ordering chains of orders."""
        if self.kind == _NEG_INF:
            return -np.inf
        if self.kind == _ZERO:
            return 0.0
        return float(self.s)  # type: ignore[arg-type]


def format_order(order: MeanOrder) -> str:
    """Stable text spelling, shared by the CLI and report serialization."""
    if order.kind == _NEG_INF:
        return "min"
    if order.kind == _ZERO:
        return "wy" if not order.is_weighted else f"wyd:w={order.weight!r}"
    if order.s == -1.0 and not order.is_weighted:
        return "qfi"
    base = f"s={order.s!r}"
    return base if not order.is_weighted else f"{base}:w={order.weight!r}"


def parse_order(text: str) -> MeanOrder:
    """Inverse of :func:`format_order`; also accepts the ``qfi`` alias."""
    text = text.strip()
    if text == "wy":
        return MeanOrder.zero()
    if text == "qfi":
        return MeanOrder.finite(-1.0)
    if text == "min":
        return MeanOrder.neg_infinity()
    if text.startswith("wyd:w="):
        return MeanOrder.zero(weight=float(text[6:]))
    if text.startswith("s="):
        body = text[2:]
        if ":w=" in body:
            s_part, w_part = body.split(":w=", 1)
            return MeanOrder.finite(float(s_part), weight=float(w_part))
        return MeanOrder.finite(float(body))
    raise BadOrder(f"cannot parse mean order {text!r}")


def power_mean_grid(order: MeanOrder, a, b) -> np.ndarray:
    """Elementwise weighted power mean of nonnegative arrays ``a`` and ``b``.

    ``order.weight`` multiplies ``a``; broadcasting follows numpy rules.
    Evaluation is overflow-safe for arbitrarily negative exponents: the
    finite-s branch factors out the smaller argument so the remaining ratio
    power is <= 1.  Equal arguments return that argument exactly, and a zero
    argument forces an exact zero.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    w = order.weight
    if order.kind == _NEG_INF:
        return np.minimum(a, b)
    if order.kind == _ZERO:
        if w == 0.5:
            m = np.sqrt(a * b)
        else:
            m = a**w * b ** (1.0 - w)
            m = np.where((a == 0.0) | (b == 0.0), 0.0, m)
        return np.where(a == b, a, m)
    s = float(order.s)  # type: ignore[arg-type]
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    w_lo = np.where(a <= b, w, 1.0 - w)
    safe_lo = np.where(lo > 0.0, lo, 1.0)
    with np.errstate(under="ignore", divide="ignore"):
        inner = w_lo + (1.0 - w_lo) * (hi / safe_lo) ** s
        m = lo * inner ** (1.0 / s)
    m = np.where(lo == 0.0, 0.0, m)
    return np.where(a == b, a, m)


def power_mean(order: MeanOrder, a: float, b: float) -> float:
    """Weighted power mean of two nonnegative scalars (zero if either is zero)."""
    if not (a >= 0.0 and b >= 0.0 and np.isfinite(a) and np.isfinite(b)):
        raise ValueError(f"power mean needs finite arguments >= 0, got {a!r}, {b!r}")
    return float(power_mean_grid(order, a, b))


def kernel_weight(order: MeanOrder, lam_i: float, lam_j: float) -> float:
    """Arithmetic-mean-minus-power-mean gap, the per-pair kernel coefficient.

    Nonnegative for the symmetric (weight 1/2) family; weighted orders can
    make individual gaps negative, but gaps summed over an index pair stay
    nonnegative.
    """
    return 0.5 * (lam_i + lam_j) - power_mean(order, lam_i, lam_j)


#: Canonical order chain used by monotonicity checks and CLI defaults,
#: running from the min kernel up toward the geometric kernel.
ORDER_CHAIN: tuple[MeanOrder, ...] = (
    MeanOrder.neg_infinity(),
    MeanOrder.finite(-8.0),
    MeanOrder.finite(-4.0),
    MeanOrder.finite(-2.0),
    MeanOrder.finite(-1.0),
    MeanOrder.finite(-0.5),
    MeanOrder.zero(),
)
