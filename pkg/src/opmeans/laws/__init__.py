"""Checkable identities and inequalities, each returning a LawReport."""

from .operator import (
    BOUNDED_FORMS,
    DCD_VARIANTS,
    HGA_KINDS,
    REFINEMENT_FORMS,
    check_bounded_estimates,
    check_contour_oracle,
    check_dcd_identity,
    check_geo_symmetry,
    check_geometric_extension,
    check_hga_chain,
    check_inverse_identities,
    check_loewner_heinz,
    check_mean_congruence,
    check_mean_inversion,
    check_mean_symmetry,
    check_norm_chain,
    check_operator_refinement,
    check_power_laws,
    check_representation,
    check_smt,
)
from .registry import LAWS, Context, LawSpec, get_law, law_ids, select
from .report import IDENTITY_TOL, ORDER_TOL, SCALAR_TOL, LawReport, digest
from .scalar import (
    SCALAR_FAMILIES,
    ConvexFunction,
    JensenInstance,
    check_gap_threshold,
    check_jensen_bounds,
    check_scalar_refinements,
    jensen_functional,
)
