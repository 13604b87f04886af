"""Real powers of positive matrices.

Two independent routes:

* ``real_power_spectral`` - ``U diag(lambda^alpha) U*`` from the Jacobi
  decomposition.  This is what every mean uses.
* ``real_power_contour`` - the Cauchy integral
  ``(1/2 pi i) \\oint z^alpha (z - a)^{-1} dz`` over a circle in the open right
  half-plane, by the trapezoid rule, with each resolvent obtained by
  Gauss-Jordan elimination on ``z I - a``.  No eigenvectors are touched, so it
  can serve as an oracle for the spectral route.

The circle is traversed through a Moebius reparameterisation
``w -> (w + skew) / (1 + skew w)`` of the unit circle.  With ``skew = 0`` this
is the plain equispaced rule.  A nonzero skew crowds nodes towards the part
of the circle that passes between the spectrum and the branch point at 0,
which is what keeps 256 nodes sufficient for spectra spread over two decades.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import errors
from ._backend import kernels
from .linalg import check_positive_spectrum, hermitian_eigen, inverse

DEFAULT_NODES = 256
ENCLOSURE_LIMIT = 0.95
RESOLVENT_PIVOT = 1e-12
_MIN_SPREAD = 1.5


class SpectrumBounds(NamedTuple):
    lo: float
    hi: float


def real_power_spectral(a, alpha):
    """``a^alpha`` for positive ``a`` and any finite real ``alpha``."""
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise errors.ParameterOutOfDomain("exponent must be finite")
    dec = hermitian_eigen(a)
    check_positive_spectrum(dec.eigenvalues)
    if alpha == 0.0:
        return np.eye(dec.vectors.shape[0], dtype=np.complex128)
    if alpha == 1.0:
        return dec.reconstruct()
    return dec.reconstruct(dec.eigenvalues**alpha)


def power_pair(a, alpha):
    """``(a^alpha, a^{-alpha})`` from one decomposition."""
    dec = hermitian_eigen(a)
    check_positive_spectrum(dec.eigenvalues)
    lam = dec.eigenvalues
    return dec.reconstruct(lam**alpha), dec.reconstruct(lam ** (-alpha))


def spectrum_bounds(a) -> SpectrumBounds:
    lam = hermitian_eigen(a).eigenvalues
    check_positive_spectrum(lam)
    return SpectrumBounds(float(lam[0]), float(lam[-1]))


@dataclass(frozen=True)
class ContourSpec:
    """Circle ``|z - center| = radius`` sampled at ``nodes`` points.

    ``skew`` in (-1, 1) selects the Moebius parameterisation; 0 gives
    equally spaced nodes.
    """

    center: float
    radius: float
    nodes: int = DEFAULT_NODES
    skew: float = 0.0

    def __post_init__(self):
        if not (self.radius > 0 and self.center - self.radius > 0):
            raise errors.ParameterOutOfDomain("contour must lie in Re z > 0")
        n = int(self.nodes)
        if n < 16 or n & (n - 1):
            raise errors.ParameterOutOfDomain("nodes must be a power of two >= 16")
        if not -1.0 < self.skew < 1.0:
            raise errors.ParameterOutOfDomain("skew must lie in (-1, 1)")

    def with_nodes(self, nodes):
        return ContourSpec(self.center, self.radius, nodes, self.skew)

    def disk_coordinate(self, z):
        """Position of ``z`` in the parameter disk; the circle is ``|w| = 1``."""
        u = (np.asarray(z) - self.center) / self.radius
        return (u - self.skew) / (1.0 - self.skew * u)

    def quadrature(self):
        """Nodes ``z_k`` and weights ``dz_k / (2 pi i)`` of the trapezoid rule."""
        n = int(self.nodes)
        w = np.exp(2j * np.pi * np.arange(n) / n)
        b = self.skew
        u = (w + b) / (1.0 + b * w)
        z = self.center + self.radius * u
        dz = self.radius * (1.0 - b * b) / (1.0 + b * w) ** 2 * w / n
        return z, dz

    def to_dict(self):
        return {"center": self.center, "radius": self.radius, "nodes": int(self.nodes), "skew": self.skew}


def default_contour(bounds: SpectrumBounds, nodes: int = DEFAULT_NODES) -> ContourSpec:
    """Circle adapted to a spectrum inside ``[lo, hi]``.

    Uses the real Moebius map sending ``0, lo, hi, inf`` to
    ``-1/r, -r, r, 1/r``; the unit circle pulls back to a circle through
    ``(0, lo)`` and ``(hi, inf)``, and ``r`` is the geometric convergence
    factor of the rule.  Nearly flat spectra are widened to a spread of 1.5
    so the circle keeps a finite radius.
    """
    lo, hi = float(bounds.lo), float(bounds.hi)
    if not 0 < lo <= hi:
        raise errors.BadInterval("spectrum bounds must satisfy 0 < lo <= hi")
    if hi / lo < _MIN_SPREAD:
        g = math.sqrt(lo * hi)
        lo, hi = g / math.sqrt(_MIN_SPREAD), g * math.sqrt(_MIN_SPREAD)
    s = 2.0 * math.sqrt(hi / (hi - lo))
    r = (s - math.sqrt(s * s - 4.0)) / 2.0
    # T(z) = (z + B) / (r z + D)
    d = -lo * (1.0 + r * r) / (r - 1.0 / r)
    b = -d / r
    left = (-d - b) / (1.0 + r)
    right = (d - b) / (1.0 - r)
    center = 0.5 * (left + right)
    radius = 0.5 * (right - left)
    skew = -(center + b) / (r * center + d)
    return ContourSpec(center, radius, nodes, skew)


def real_power_contour(a, alpha, contour: ContourSpec | None = None):
    """``a^alpha`` by trapezoid quadrature of the resolvent integral.

    Every eigenvalue must sit inside the circle with ``|w| <= 0.95`` in the
    contour's parameter disk, otherwise ``SpectrumNotEnclosed``.  Only the
    fractional part ``alpha - round(alpha)`` goes through the quadrature; the
    integer part is applied by matrix products.  Returns the raw complex
    result (not symmetrised).
    """
    a = np.ascontiguousarray(a, dtype=np.complex128)
    bounds = spectrum_bounds(a)
    if contour is None:
        contour = default_contour(bounds)
    reach = np.abs(contour.disk_coordinate(np.array([bounds.lo, bounds.hi])))
    if np.max(reach) > ENCLOSURE_LIMIT:
        raise errors.SpectrumNotEnclosed(
            f"spectrum [{bounds.lo:.4g}, {bounds.hi:.4g}] not enclosed with margin by {contour}"
        )
    # z^m (z - a)^{-1} - a^m (z - a)^{-1} is a polynomial in z, and z^(alpha-m)
    # times it is analytic inside the circle, so only the fractional exponent
    # is integrated; this keeps the integrand bounded near the pulled-in infinity
    alpha = float(alpha)
    whole = int(round(alpha))
    z, dz = contour.quadrature()
    weights = np.exp((alpha - whole) * np.log(z)) * dz
    total, status = kernels.resolvent_sum(a, z, weights, RESOLVENT_PIVOT)
    if status != 0:
        raise errors.ResolventSingular("a quadrature node is too close to an eigenvalue")
    if whole == 0:
        return total
    return integer_power(a, whole) @ total


def integer_power(a, m):
    """``a^m`` by repeated squaring; negative ``m`` goes through elimination."""
    base = np.asarray(a, dtype=np.complex128)
    if m < 0:
        base = inverse(base)
        m = -m
    out = np.eye(base.shape[0], dtype=np.complex128)
    while m:
        if m & 1:
            out = out @ base
        m >>= 1
        if m:
            base = base @ base
    return out
