"""Scalar and operator means.

Operator means follow the usual notation: ``a nabla_nu b`` (arithmetic),
``a !_nu b`` (harmonic), ``a #_nu b`` (geometric) for positive ``a, b``, and
the quadratic geometric mean

    x (S)_nu y = x* |y x^{-1}|^{2 nu} x

for invertible, not necessarily positive, ``x`` and ``y``.  All operator
results are symmetrised before they are returned.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from . import errors
from .funcalc import power_pair, real_power_spectral
from .linalg import (
    _same_shape,
    hermitize,
    inverse,
    modulus_power,
    squared_modulus,
)


class ScalarMeans(NamedTuple):
    arithmetic: float
    geometric: float
    harmonic: float


class GapBounds(NamedTuple):
    """Max and min of the arithmetic-geometric gap on an interval."""

    Delta: float
    delta: float


def _finite_weight(nu):
    nu = float(nu)
    if not math.isfinite(nu):
        raise errors.WeightOutOfRange("weight must be finite")
    return nu


def _unit_weight(nu):
    nu = _finite_weight(nu)
    if not 0.0 <= nu <= 1.0:
        raise errors.WeightOutOfRange(f"weight {nu} outside [0, 1]")
    return nu


# ---------------------------------------------------------------- scalars


def scalar_means(a, b, nu) -> ScalarMeans:
    if not (a > 0 and b > 0):
        raise errors.NonPositiveInput("scalar means need a, b > 0")
    nu = _finite_weight(nu)
    return ScalarMeans(
        (1 - nu) * a + nu * b,
        a ** (1 - nu) * b**nu,
        1.0 / ((1 - nu) / a + nu / b),
    )


def f_nu(t, nu):
    """``1 - nu + nu t - t^nu``, the gap between A_nu(1, t) and G_nu(1, t).

    Defined for ``t >= 0`` and ``nu`` in [0, 1]; at the endpoints of the
    weight range it vanishes identically.
    """
    nu = _unit_weight(nu)
    if t < 0:
        raise errors.DomainViolation("f_nu is defined on t >= 0")
    return 1.0 - nu + nu * t - t**nu


def gap_maximiser_threshold(nu):
    """``nu^{1/(nu-1)}``: the unique t > 1 where f_nu(t) returns to 1 - nu."""
    nu = _unit_weight(nu)
    if not 0.0 < nu < 1.0:
        raise errors.WeightOutOfRange("threshold needs nu strictly inside (0, 1)")
    return nu ** (1.0 / (nu - 1.0))


def bound_functions(k, K, nu) -> GapBounds:
    """Exact max and min of ``f_nu`` over ``[k, K]``.

    ``f_nu`` decreases on [0, 1] and increases on [1, inf), so the extremes
    sit at the endpoints or at t = 1 depending on where 1 falls.
    """
    if not (0 < k <= K) or not math.isfinite(K):
        raise errors.BadInterval(f"need 0 < k <= K, got [{k}, {K}]")
    nu = _unit_weight(nu)
    fk, fK = f_nu(k, nu), f_nu(K, nu)
    if K < 1:
        return GapBounds(fk, fK)
    if k > 1:
        return GapBounds(fK, fk)
    return GapBounds(max(fk, fK), 0.0)


def sqrt_gap_bounds(m, M, nu) -> GapBounds:
    """Piecewise square-root bounds on the gap over ``[m^2, M^2]``.

    Upper ``R * ...`` and lower ``r * ...`` coefficients with
    ``r = min(nu, 1 - nu)``, ``R = max(nu, 1 - nu)``; they bracket
    ``bound_functions(m**2, M**2, nu)``.
    """
    if not (0 < m <= M) or not math.isfinite(M):
        raise errors.BadInterval(f"need 0 < m <= M, got [{m}, {M}]")
    nu = _unit_weight(nu)
    r, R = min(nu, 1 - nu), max(nu, 1 - nu)
    if M < 1:
        return GapBounds(R * (1 - m) ** 2, r * (1 - M) ** 2)
    if m > 1:
        return GapBounds(R * (M - 1) ** 2, r * (m - 1) ** 2)
    return GapBounds(R * max((1 - m) ** 2, (M - 1) ** 2), 0.0)


# ---------------------------------------------------------------- operators


def arithmetic_mean(a, b, nu):
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    _same_shape(a, b)
    nu = _finite_weight(nu)
    return hermitize((1 - nu) * a + nu * b)


def harmonic_mean(a, b, nu):
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    _same_shape(a, b)
    nu = _unit_weight(nu)
    return hermitize(inverse(hermitize((1 - nu) * inverse(a) + nu * inverse(b))))


def geometric_mean(a, b, nu):
    """``a^{1/2} (a^{-1/2} b a^{-1/2})^nu a^{1/2}`` for any real ``nu``."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    _same_shape(a, b)
    nu = _finite_weight(nu)
    root, inv_root = power_pair(a, 0.5)
    inner = hermitize(inv_root @ b @ inv_root)
    return hermitize(root @ real_power_spectral(inner, nu) @ root)


def relative_modulus_squared(x, y):
    """``|y x^{-1}|^2 = (x*)^{-1} y* y x^{-1}``."""
    return squared_modulus(np.asarray(y) @ inverse(x))


def relative_modulus_power(x, y, alpha):
    """``|y x^{-1}|^alpha``, taken from the singular vectors of ``y x^{-1}``."""
    return modulus_power(np.asarray(y) @ inverse(x), alpha)


def quadratic_geometric_mean(x, y, nu):
    """``x* |y x^{-1}|^{2 nu} x`` for invertible ``x``, ``y`` and real ``nu``."""
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    _same_shape(x, y)
    nu = _finite_weight(nu)
    return hermitize(x.conj().T @ relative_modulus_power(x, y, 2.0 * nu) @ x)


def quadratic_mean_inverse(x, y, nu):
    """``(x S_nu y)^{-1}`` as ``x^{-1} |y x^{-1}|^{-2 nu} (x^{-1})*``.

    Inverting the factors separately avoids inverting the assembled mean,
    whose condition number grows like ``cond(y x^{-1})^{2|nu|}``.
    """
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    _same_shape(x, y)
    nu = _finite_weight(nu)
    xi = inverse(x)
    return hermitize(xi @ modulus_power(y @ xi, -2.0 * nu) @ xi.conj().T)


HALF_KINDS = ("quadratic", "arithmetic", "harmonic")


def half_means(x, y, nu, kind="quadratic"):
    """Square root of the quadratic, arithmetic or harmonic mean of
    ``|x|^2`` and ``|y|^2``."""
    if kind == "quadratic":
        sq = quadratic_geometric_mean(x, y, nu)
    elif kind == "arithmetic":
        sq = arithmetic_mean(squared_modulus(x), squared_modulus(y), _unit_weight(nu))
    elif kind == "harmonic":
        sq = harmonic_mean(squared_modulus(x), squared_modulus(y), nu)
    else:
        raise ValueError(f"unknown half-mean kind {kind!r}")
    return real_power_spectral(sq, 0.5)
