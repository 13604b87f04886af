"""Matrix identities and Loewner-order chains for the operator means."""

from __future__ import annotations

import numpy as np

from .. import errors
from ..funcalc import power_pair, real_power_contour, real_power_spectral, spectrum_bounds
from ..linalg import (
    check_positive_spectrum,
    hermitian_eigen,
    hermitize,
    inverse,
    min_eig,
    singular_value_bounds,
    operator_norm,
    rel_residual,
    squared_modulus,
)
from ..means import (
    _unit_weight,
    arithmetic_mean,
    bound_functions,
    geometric_mean,
    harmonic_mean,
    half_means,
    quadratic_geometric_mean,
    quadratic_mean_inverse,
    relative_modulus_power,
    sqrt_gap_bounds,
)
from .report import IDENTITY_TOL, ORDER_TOL, LawReport, digest

DCD_VARIANTS = ("selfadjoint", "star")
HGA_KINDS = ("squared", "half", "positive-pair")
REFINEMENT_FORMS = ("general", "midpoint", "positive-pair", "positive-pair-midpoint")
BOUNDED_FORMS = ("delta", "sqrt", "positive-pair-delta", "positive-pair-sqrt")


def _arr(m):
    return np.asarray(m, dtype=np.complex128)


def _chain(report, upper, middle, lower, names=("upper", "lower"), tol=ORDER_TOL, scale=None):
    """Record ``upper >= middle >= lower`` as two min-eigenvalue margins."""
    if scale is None:
        scale = max(operator_norm(upper), operator_norm(middle), operator_norm(lower))
    report.extras["scale"] = scale
    report.order(names[0], min_eig(hermitize(upper - middle)), scale, tol)
    report.order(names[1], min_eig(hermitize(middle - lower)), scale, tol)
    return report


# ---------------------------------------------------------------- identities


def check_dcd_identity(c, d, lam, variant="star", tol=IDENTITY_TOL) -> LawReport:
    """``(d c d*)^lam = d c^{1/2} (c^{1/2} |d|^2 c^{1/2})^{lam-1} c^{1/2} d*``.

    The selfadjoint variant needs ``d > 0`` and is the special case where
    ``d* = d`` and ``|d|^2 = d^2``.
    """
    c, d = _arr(c), _arr(d)
    if variant not in DCD_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "selfadjoint":
        if np.abs(d - d.conj().T).max() > 1e-12 * max(1.0, np.abs(d).max()):
            raise errors.VariantPreconditionViolated("selfadjoint variant needs d = d*")
        d = hermitize(d)
        try:
            check_positive_spectrum(hermitian_eigen(d).eigenvalues)
        except errors.NotPositive as exc:
            raise errors.VariantPreconditionViolated("selfadjoint variant needs d > 0") from exc
        d_star = d
        d_sq = hermitize(d @ d)
        law_id = "dcd-power-selfadjoint"
    else:
        d_star = d.conj().T
        d_sq = squared_modulus(d)
        law_id = "dcd-power-star"
    rep = LawReport(law_id, digest({"c": c, "d": d, "lam": lam, "variant": variant}))
    lhs = real_power_spectral(hermitize(d @ c @ d_star), lam)
    c_half = real_power_spectral(c, 0.5)
    inner = real_power_spectral(hermitize(c_half @ d_sq @ c_half), lam - 1.0)
    rhs = hermitize(d @ c_half @ inner @ c_half @ d_star)
    return rep.identity("residual", rel_residual(lhs, rhs), tol)


def check_geo_symmetry(a, b, nu, tol=IDENTITY_TOL) -> LawReport:
    """``b #_{1-nu} a = a #_nu b`` for every real ``nu``."""
    a, b = _arr(a), _arr(b)
    rep = LawReport("geometric-symmetry", digest({"a": a, "b": b, "nu": nu}))
    return rep.identity(
        "residual", rel_residual(geometric_mean(b, a, 1.0 - nu), geometric_mean(a, b, nu)), tol
    )


def check_inverse_identities(x, y, nu, tol=IDENTITY_TOL) -> LawReport:
    """``(x S y)^{-1} = (x*)^{-1} S (y*)^{-1}`` and ``x^{-1} S y^{-1} = (x* S y*)^{-1}``."""
    x, y = _arr(x), _arr(y)
    rep = LawReport("quadratic-inverse", digest({"x": x, "y": y, "nu": nu}))
    xi, yi = inverse(x), inverse(y)
    lhs1 = quadratic_mean_inverse(x, y, nu)
    rhs1 = quadratic_geometric_mean(xi.conj().T, yi.conj().T, nu)
    lhs2 = quadratic_geometric_mean(xi, yi, nu)
    rhs2 = quadratic_mean_inverse(x.conj().T, y.conj().T, nu)
    rep.identity("inverse_of_mean", rel_residual(lhs1, rhs1), tol)
    return rep.identity("mean_of_inverses", rel_residual(lhs2, rhs2), tol)


def check_representation(x, y, nu, tol=IDENTITY_TOL) -> LawReport:
    """``x S_nu y`` against ``|x|^2 #_nu |y|^2`` and ``|y|^2 #_{1-nu} |x|^2``.

    The left side goes through ``y x^{-1}`` and one fractional power; the
    right sides go through square roots of ``|x|^2`` (resp. ``|y|^2``), so
    the two evaluation paths share no intermediate matrix.
    """
    x, y = _arr(x), _arr(y)
    rep = LawReport("quadratic-representation", digest({"x": x, "y": y, "nu": nu}))
    s = quadratic_geometric_mean(x, y, nu)
    ax, ay = squared_modulus(x), squared_modulus(y)
    rep.identity("geometric_form", rel_residual(s, geometric_mean(ax, ay, nu)), tol)
    return rep.identity("swapped_form", rel_residual(s, geometric_mean(ay, ax, 1.0 - nu)), tol)


# ---------------------------------------------------------------- chains


def check_hga_chain(x, y, nu, kind="squared", tol=ORDER_TOL) -> LawReport:
    """Arithmetic >= (quadratic) geometric >= harmonic, three flavours.

    ``squared``: on ``|x|^2, |y|^2`` with the quadratic mean in the middle;
    ``half``: square roots of the three; ``positive-pair``: the classical
    chain for ``a = |x|^2, b = |y|^2`` with ``a #_nu b`` in the middle.
    """
    x, y = _arr(x), _arr(y)
    nu = _unit_weight(nu)
    if kind not in HGA_KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    rep = LawReport(f"hga-{kind}", digest({"x": x, "y": y, "nu": nu, "kind": kind}))
    if kind == "half":
        upper = half_means(x, y, nu, "arithmetic")
        middle = half_means(x, y, nu, "quadratic")
        lower = half_means(x, y, nu, "harmonic")
    else:
        a, b = squared_modulus(x), squared_modulus(y)
        upper = arithmetic_mean(a, b, nu)
        middle = quadratic_geometric_mean(x, y, nu) if kind == "squared" else geometric_mean(a, b, nu)
        lower = harmonic_mean(a, b, nu)
    return _chain(rep, upper, middle, lower, ("arith_minus_geo", "geo_minus_harm"), tol)


def check_norm_chain(x, y, nu, tol=ORDER_TOL) -> LawReport:
    """``(1-nu)||x||^2 + nu||y||^2 >= ||(1-nu)|x|^2 + nu|y|^2|| >= || |yx^{-1}|^nu x ||^2``."""
    x, y = _arr(x), _arr(y)
    nu = _unit_weight(nu)
    rep = LawReport("norm-chain", digest({"x": x, "y": y, "nu": nu}))
    v1 = (1 - nu) * operator_norm(x) ** 2 + nu * operator_norm(y) ** 2
    v2 = operator_norm(arithmetic_mean(squared_modulus(x), squared_modulus(y), nu))
    v3 = operator_norm(relative_modulus_power(x, y, nu) @ x) ** 2
    rep.extras.update(values=(v1, v2, v3))
    rep.slack("outer_gap", v1 - v2, v1, tol)
    return rep.slack("inner_gap", v2 - v3, v1, tol)


def _weight_ratios(p, q):
    p = _unit_weight(p)
    q = float(q)
    if not 0.0 < q < 1.0:
        raise errors.ParameterOutOfDomain(f"q = {q} must lie in (0, 1)")
    return max(p / q, (1 - p) / (1 - q)), min(p / q, (1 - p) / (1 - q))


def check_operator_refinement(x, y, p, q=0.5, form="general", tol=ORDER_TOL) -> LawReport:
    """Ratio refinement and reverse of the arithmetic-geometric gap.

    ``hi * gap_q >= gap_p >= lo * gap_q`` with ``hi, lo`` the max and min of
    ``p/q, (1-p)/(1-q)``.  Midpoint forms fix ``q = 1/2`` and use the
    coefficients ``2 max(p, 1-p)``, ``2 min(p, 1-p)``; positive-pair forms
    use ``a = |x|^2, b = |y|^2`` and the classical geometric mean.
    """
    x, y = _arr(x), _arr(y)
    if form not in REFINEMENT_FORMS:
        raise errors.ParameterOutOfDomain(f"unknown form {form!r}")
    midpoint = form.endswith("midpoint")
    if midpoint:
        p = _unit_weight(p)
        q = 0.5
        hi, lo = 2 * max(p, 1 - p), 2 * min(p, 1 - p)
    else:
        hi, lo = _weight_ratios(p, q)
    rep = LawReport(
        f"operator-refinement-{form}", digest({"x": x, "y": y, "p": p, "q": q, "form": form})
    )
    a, b = squared_modulus(x), squared_modulus(y)
    if form.startswith("positive-pair"):
        def mean(w):
            return geometric_mean(a, b, w)
    else:
        def mean(w):
            return quadratic_geometric_mean(x, y, w)

    def gap(w):
        return hermitize(arithmetic_mean(a, b, w) - mean(w))

    gap_p = gap(p)
    gap_q = gap_p if q == p else gap(q)
    scale = max(1.0, hi) * max(operator_norm(a), operator_norm(b))
    rep.extras.update(coefficients=(hi, lo))
    return _chain(rep, hi * gap_q, gap_p, lo * gap_q, tol=tol, scale=scale)


def check_bounded_estimates(x, y, nu, form="delta", widen=1.0, tol=ORDER_TOL) -> LawReport:
    """Two-sided bounds on ``|x|^2 nabla_nu |y|^2 - x S_nu y`` under ``m <= |yx^{-1}| <= M``.

    ``m, M`` are the exact extreme eigenvalues of ``|y x^{-1}|``, relaxed
    to ``m / widen`` and ``M * widen``.  ``delta`` scales ``|x|^2`` by the
    exact max/min of the scalar gap on ``[m^2, M^2]``; ``sqrt`` uses the
    coarser ``R (M-1)^2``-type coefficients.  The positive-pair forms run the
    same bounds with ``a = |x|^2``, ``b = |y|^2`` and ``a #_nu b``.  For the
    ``delta`` form the norm consequences are recorded as extra slacks.
    """
    x, y = _arr(x), _arr(y)
    nu = _unit_weight(nu)
    widen = float(widen)
    if form not in BOUNDED_FORMS:
        raise errors.ParameterOutOfDomain(f"unknown form {form!r}")
    if not widen >= 1.0:
        raise errors.ParameterOutOfDomain("widen factor must be >= 1")
    rep = LawReport(
        f"bounded-{form}", digest({"x": x, "y": y, "nu": nu, "form": form, "widen": widen})
    )
    m, M = singular_value_bounds(y @ inverse(x))  # extreme eigenvalues of |y x^{-1}|
    m, M = m / widen, M * widen
    a, b = squared_modulus(x), squared_modulus(y)
    arith = arithmetic_mean(a, b, nu)
    middle = geometric_mean(a, b, nu) if form.startswith("positive-pair") else quadratic_geometric_mean(x, y, nu)
    gap = hermitize(arith - middle)
    if form.endswith("sqrt"):
        hi, lo = sqrt_gap_bounds(m, M, nu)
    else:
        hi, lo = bound_functions(m * m, M * M, nu)
    rep.extras.update(m=m, M=M, Delta=hi, delta=lo)
    scale = max(operator_norm(arith), hi * operator_norm(a))
    _chain(rep, hi * a, gap, lo * a, tol=tol, scale=scale)
    if form == "delta":
        nx2 = operator_norm(x) ** 2
        ngap = operator_norm(gap)
        rep.slack("norm_upper", hi * nx2 - ngap, scale, tol)
        rep.slack("norm_lower", ngap - lo * nx2, scale, tol)
        diff = operator_norm(arith) - operator_norm(relative_modulus_power(x, y, nu) @ x) ** 2
        rep.slack("norm_reverse_upper", hi * nx2 - diff, scale, tol)
        rep.slack("norm_reverse_lower", diff, scale, tol)
    return rep


# ---------------------------------------------------------------- background facts


def check_geometric_extension(a, b, nu, tol=IDENTITY_TOL) -> LawReport:
    """``a^{1/2} S_nu b^{1/2} = a #_nu b``."""
    a, b = _arr(a), _arr(b)
    rep = LawReport("geometric-extension", digest({"a": a, "b": b, "nu": nu}))
    s = quadratic_geometric_mean(real_power_spectral(a, 0.5), real_power_spectral(b, 0.5), nu)
    return rep.identity("residual", rel_residual(s, geometric_mean(a, b, nu)), tol)


def check_mean_symmetry(a, b, tol=IDENTITY_TOL) -> LawReport:
    a, b = _arr(a), _arr(b)
    rep = LawReport("mean-symmetry", digest({"a": a, "b": b}))
    rep.identity("geometric", rel_residual(geometric_mean(a, b, 0.5), geometric_mean(b, a, 0.5)), tol)
    return rep.identity("harmonic", rel_residual(harmonic_mean(a, b, 0.5), harmonic_mean(b, a, 0.5)), tol)


def check_mean_congruence(a, b, c, tol=IDENTITY_TOL) -> LawReport:
    """``c*(a # b)c = (c*ac) # (c*bc)`` and the same for ``!``."""
    a, b, c = _arr(a), _arr(b), _arr(c)
    rep = LawReport("mean-congruence", digest({"a": a, "b": b, "c": c}))
    ca = hermitize(c.conj().T @ a @ c)
    cb = hermitize(c.conj().T @ b @ c)
    for name, mean in (("geometric", geometric_mean), ("harmonic", harmonic_mean)):
        lhs = hermitize(c.conj().T @ mean(a, b, 0.5) @ c)
        rep.identity(name, rel_residual(lhs, mean(ca, cb, 0.5)), tol)
    return rep


def check_mean_inversion(a, b, nu, tol=IDENTITY_TOL) -> LawReport:
    """``(a #_nu b)^{-1} = a^{-1} #_nu b^{-1}`` and ``(a !_nu b)^{-1} = a^{-1} nabla_nu b^{-1}``."""
    a, b = _arr(a), _arr(b)
    nu = _unit_weight(nu)
    rep = LawReport("mean-inversion", digest({"a": a, "b": b, "nu": nu}))
    ai, bi = inverse(a), inverse(b)
    rep.identity("geometric", rel_residual(inverse(geometric_mean(a, b, nu)), geometric_mean(ai, bi, nu)), tol)
    return rep.identity("harmonic", rel_residual(inverse(harmonic_mean(a, b, nu)), arithmetic_mean(ai, bi, nu)), tol)


def check_loewner_heinz(a, b, p, tol=ORDER_TOL) -> LawReport:
    """``a >= b > 0`` implies ``a^p >= b^p`` for ``p`` in [0, 1]."""
    a, b = _arr(a), _arr(b)
    p = _unit_weight(p)
    rep = LawReport("loewner-heinz", digest({"a": a, "b": b, "p": p}))
    scale = max(operator_norm(a), operator_norm(b))
    rep.order("hypothesis", min_eig(hermitize(a - b)), scale, tol)
    ap, bp = real_power_spectral(a, p), real_power_spectral(b, p)
    return rep.order("powers", min_eig(hermitize(ap - bp)), max(operator_norm(ap), operator_norm(bp)), tol)


def check_power_laws(a, alpha, beta, tol=1e-9) -> LawReport:
    """Exponent additivity, inversion and ``(a^2)^{1/2} = a``."""
    a = _arr(a)
    rep = LawReport("power-laws", digest({"a": a, "alpha": alpha, "beta": beta}))
    pa, pb = real_power_spectral(a, alpha), real_power_spectral(a, beta)
    rep.identity("additive", rel_residual(pa @ pb, real_power_spectral(a, alpha + beta)), tol)
    pos, neg = power_pair(a, alpha)
    rep.identity("inverse", rel_residual(inverse(pos), neg), tol)
    return rep.identity("square_root", rel_residual(real_power_spectral(hermitize(a @ a), 0.5), a), tol)


def check_contour_oracle(a, alpha, nodes=256, tol=1e-8) -> LawReport:
    """Spectral power against the resolvent-integral power."""
    from ..funcalc import default_contour

    a = _arr(a)
    rep = LawReport("power-contour-oracle", digest({"a": a, "alpha": alpha, "nodes": nodes}))
    contour = default_contour(spectrum_bounds(a), nodes)
    spectral = real_power_spectral(a, alpha)
    return rep.identity("residual", rel_residual(real_power_contour(a, alpha, contour), spectral), tol)


def check_smt(a, alpha, tol=1e-10) -> LawReport:
    """Spectrum of ``a^alpha`` equals the spectrum of ``a`` raised to ``alpha``."""
    a = _arr(a)
    rep = LawReport("spectral-mapping", digest({"a": a, "alpha": alpha}))
    lam = hermitian_eigen(a).eigenvalues
    got = hermitian_eigen(real_power_spectral(a, alpha)).eigenvalues
    want = np.sort(lam**alpha)
    return rep.identity("residual", float(np.max(np.abs(got - want) / np.abs(want))), tol)
