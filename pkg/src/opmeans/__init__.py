"""Operator means on complex matrices and machine checks of their laws.

The quadratic weighted geometric mean ``x (S)_nu y = x* |y x^{-1}|^{2 nu} x``
sits next to the classical weighted arithmetic, harmonic and geometric
means; :mod:`opmeans.laws` checks identities and Loewner-order inequalities
between them on concrete matrices, and :mod:`opmeans.fuzz` runs those checks
on seeded random instances.
"""

from . import errors
from ._backend import BACKEND
from .funcalc import (
    ContourSpec,
    SpectrumBounds,
    default_contour,
    integer_power,
    power_pair,
    real_power_contour,
    real_power_spectral,
    spectrum_bounds,
)
from .fuzz import FuzzConfig, SuiteReport, emit_report, run_suite
from .laws import LawReport, get_law, law_ids
from .linalg import (
    OrderReport,
    SingularDecomposition,
    SpectralDecomposition,
    Verdict,
    adjoint,
    as_hermitian,
    as_invertible,
    as_matrix,
    as_positive,
    hermitian_eigen,
    inverse,
    loewner_compare,
    matrix_arithmetic,
    matrix_from_json,
    matrix_to_json,
    min_eig,
    modulus,
    modulus_power,
    norms,
    operator_norm,
    rel_residual,
    singular_decomposition,
    squared_modulus,
)
from .means import (
    GapBounds,
    ScalarMeans,
    arithmetic_mean,
    bound_functions,
    f_nu,
    gap_maximiser_threshold,
    geometric_mean,
    half_means,
    harmonic_mean,
    quadratic_geometric_mean,
    quadratic_mean_inverse,
    relative_modulus_power,
    scalar_means,
    sqrt_gap_bounds,
)
from .rng import SplitMix64, derive_seed, gen_pd_with_spectrum, gen_random_invertible, gen_random_pd

__version__ = "0.1.0"
