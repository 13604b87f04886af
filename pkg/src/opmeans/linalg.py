"""Dense complex matrix core.

Matrices are plain ``complex128`` numpy arrays of shape (n, n) with
1 <= n <= 16.  The ``as_*`` validators enforce the carrier invariants
(finite, Hermitian, positive, invertible) at API boundaries and return the
validated array; everything downstream works on raw arrays.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import errors
from ._backend import kernels

MAX_DIM = 16

HERMITIAN_TOL = 1e-12
POSITIVE_MARGIN = 1e-10
COND_CEILING = 1e10
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 60
SVD_TOL = 1e-15
PIVOT_REL = 1e-14
DEFAULT_ORDER_TOL = 1e-9


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self, values=None):
        """``U diag(values) U*``; ``values`` defaults to the eigenvalues."""
        lam = self.eigenvalues if values is None else values
        u = self.vectors
        return hermitize((u * lam) @ u.conj().T)


class SingularDecomposition(NamedTuple):
    """``c = U diag(values) V*``; only ``V`` is kept since every use is ``|c|^alpha``."""

    values: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0

    def modulus_power(self, alpha):
        v = self.vectors
        return hermitize((v * self.values**alpha) @ v.conj().T)


class Norms(NamedTuple):
    frobenius: float
    operator: float


class Verdict(str, enum.Enum):
    STRICTLY_GREATER = "StrictlyGreater"
    GREATER_EQUAL = "GreaterEqual"
    INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class OrderReport:
    """Outcome of testing ``a >= b`` in the Loewner order."""

    min_eig_diff: float
    scale: float
    verdict: Verdict
    tol_rel: float

    @property
    def relative_margin(self):
        return self.min_eig_diff / self.scale if self.scale > 0 else self.min_eig_diff

    @property
    def holds(self):
        return self.verdict is not Verdict.INDEFINITE


# ---------------------------------------------------------------- validation


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise errors.BadDimension(f"expected a square matrix, got shape {m.shape}")
    if not 1 <= m.shape[0] <= MAX_DIM:
        raise errors.BadDimension(f"dimension {m.shape[0]} outside [1, {MAX_DIM}]")
    if not np.all(np.isfinite(m)):
        raise errors.NonFiniteEntry("matrix has NaN or Inf entries")
    return m


def hermitize(a):
    return 0.5 * (a + a.conj().T)


def as_hermitian(a) -> np.ndarray:
    m = as_matrix(a)
    fro = np.linalg.norm(m)
    if np.linalg.norm(m - m.conj().T) > HERMITIAN_TOL * max(1.0, fro):
        raise errors.NotHermitian("matrix is not Hermitian within tolerance")
    return hermitize(m)


def as_positive(a) -> np.ndarray:
    h = as_hermitian(a)
    check_positive_spectrum(hermitian_eigen(h).eigenvalues)
    return h


def check_positive_spectrum(lam):
    top = lam[-1]
    if not (top > 0 and lam[0] > POSITIVE_MARGIN * top):
        raise errors.NotPositive(
            f"spectrum [{lam[0]:.3e}, {top:.3e}] is not strictly positive"
        )


def singular_value_bounds(c):
    """(smin, smax) of ``c``."""
    sv = singular_decomposition(as_matrix(c)).values
    return float(sv[0]), float(sv[-1])


def as_invertible(a) -> np.ndarray:
    m = as_matrix(a)
    smin, smax = singular_value_bounds(m)
    if not smin > smax / COND_CEILING:
        raise errors.IllConditioned(f"condition number {smax / smin:.3e} >= {COND_CEILING:g}")
    return m


def _same_shape(a, b):
    if a.shape != b.shape:
        raise errors.DimensionMismatch(f"{a.shape} vs {b.shape}")


# ---------------------------------------------------------------- arithmetic


def matrix_arithmetic(a, b=None, kind="add", alpha=1.0):
    """One of add, sub, mul, scale (by ``alpha``) or adjoint."""
    a = as_matrix(a)
    if kind == "adjoint":
        return adjoint(a)
    if kind == "scale":
        return complex(alpha) * a
    b = as_matrix(b)
    _same_shape(a, b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a @ b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def adjoint(a):
    return np.asarray(a).conj().T.copy()


def squared_modulus(c):
    """``c* c``, Hermitian by construction."""
    c = np.asarray(c)
    return hermitize(c.conj().T @ c)


# ---------------------------------------------------------------- spectra


def hermitian_eigen(h) -> SpectralDecomposition:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi.

    Eigenvalues come back ascending with eigenvector columns permuted to
    match.  Raises ``NoConvergence`` if the off-diagonal mass does not drop
    below ``1e-14 * ||h||_F`` within 60 sweeps.
    """
    h = np.ascontiguousarray(h, dtype=np.complex128)
    w, v, sweeps, status = kernels.jacobi_eigh(h, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if status != 0:
        raise errors.NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(w[order], v[:, order], int(sweeps))


def eigenvalues(h):
    return hermitian_eigen(h).eigenvalues


def min_eig(h):
    return float(hermitian_eigen(h).eigenvalues[0])


def singular_decomposition(c) -> SingularDecomposition:
    """Singular values (ascending) and right singular vectors by one-sided Jacobi.

    Working on ``c`` itself rather than ``c* c`` keeps small singular values
    accurate relative to ``cond(c)`` instead of ``cond(c)^2``.
    """
    c = np.ascontiguousarray(c, dtype=np.complex128)
    sigma, v, sweeps, status = kernels.jacobi_svd(c, SVD_TOL, JACOBI_MAX_SWEEPS)
    if status != 0:
        raise errors.NoConvergence(f"one-sided Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    order = np.argsort(sigma, kind="stable")
    return SingularDecomposition(sigma[order], v[:, order], int(sweeps))


def modulus_power(c, alpha):
    """``|c|^alpha = (c* c)^{alpha/2}`` from the singular decomposition of ``c``."""
    dec = singular_decomposition(c)
    if alpha < 0 and not dec.values[0] > 0:
        raise errors.SingularMatrix("negative power of a singular modulus")
    if alpha == 0:
        return np.eye(dec.vectors.shape[0], dtype=np.complex128)
    return dec.modulus_power(float(alpha))


def modulus(c):
    """``|c| = (c* c)^{1/2}``."""
    return modulus_power(as_matrix(c), 1.0)


def inverse(c):
    c = np.ascontiguousarray(c, dtype=np.complex128)
    out, status = kernels.gauss_jordan_inverse(c, PIVOT_REL)
    if status != 0:
        raise errors.SingularMatrix("pivot below threshold during elimination")
    return out


def operator_norm(c):
    return float(singular_decomposition(c).values[-1])


def norms(c) -> Norms:
    c = as_matrix(c)
    return Norms(float(np.sqrt(np.sum(np.abs(c) ** 2))), operator_norm(c))


def rel_residual(a, b):
    """``||a - b||_F / max(||b||_F, tiny)``."""
    denom = np.linalg.norm(b)
    return float(np.linalg.norm(a - b) / denom) if denom > 0 else float(np.linalg.norm(a - b))


# ---------------------------------------------------------------- order


def loewner_compare(a, b, tol_rel=DEFAULT_ORDER_TOL) -> OrderReport:
    """Compare Hermitian ``a`` and ``b`` in the Loewner order.

    The verdict uses the smallest eigenvalue of ``a - b`` against
    ``tol_rel * max(||a||_2, ||b||_2)``: strictly greater above ``+tol``,
    greater-or-equal above ``-tol``, indefinite otherwise.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    _same_shape(a, b)
    if tol_rel < 0:
        raise ValueError("tol_rel must be non-negative")
    return order_report(min_eig(hermitize(a - b)), max(operator_norm(a), operator_norm(b)), tol_rel)


def order_report(min_eig_diff, scale, tol_rel=DEFAULT_ORDER_TOL) -> OrderReport:
    if min_eig_diff > tol_rel * scale:
        verdict = Verdict.STRICTLY_GREATER
    elif min_eig_diff >= -tol_rel * scale:
        verdict = Verdict.GREATER_EQUAL
    else:
        verdict = Verdict.INDEFINITE
    return OrderReport(float(min_eig_diff), float(scale), verdict, float(tol_rel))


# ---------------------------------------------------------------- JSON


def matrix_to_obj(a):
    a = np.asarray(a, dtype=np.complex128)
    return {
        "dim": int(a.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a],
    }


def matrix_from_obj(obj):
    try:
        n = int(obj["dim"])
        rows = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise errors.BadDimension(f"not a matrix object: {exc}") from exc
    if len(rows) != n or any(len(r) != n for r in rows):
        raise errors.BadDimension(f"entries do not form a {n}x{n} array")
    m = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)
    return as_matrix(m)


def matrix_to_json(a) -> str:
    return json.dumps(matrix_to_obj(a), separators=(",", ":"))


def matrix_from_json(text: str) -> np.ndarray:
    return matrix_from_obj(json.loads(text))
