"""Scalar convexity checks: Jensen ratio bounds and two-point refinements."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import errors
from ..means import _unit_weight
from .report import SCALAR_TOL, LawReport, digest

FUNCTION_KINDS = ("exp", "power", "neglog", "gap")
SCALAR_FAMILIES = (
    "exp-weighted",
    "exp-midpoint",
    "power-weighted",
    "power-midpoint",
    "kittaneh-manasrah",
    "amgm-weighted",
)


@dataclass(frozen=True)
class ConvexFunction:
    """A member of the closed convex family used by Jensen instances.

    ``exp``: ``exp(param t)``, param != 0, all reals;
    ``power``: ``t^param`` with param < 0 or >= 1, on t > 0 (t >= 0 if param >= 1);
    ``neglog``: ``-ln t`` on t > 0;
    ``gap``: ``1 - param + param t - t^param`` with param in [0, 1], on t >= 0.
    """

    kind: str
    param: float = 1.0

    def __post_init__(self):
        if self.kind not in FUNCTION_KINDS:
            raise errors.DomainViolation(f"unknown convex function {self.kind!r}")
        p = self.param
        if self.kind == "exp" and p == 0:
            raise errors.DomainViolation("exp family needs a nonzero rate")
        if self.kind == "power" and 0 <= p < 1:
            raise errors.DomainViolation("t^alpha is convex only for alpha < 0 or alpha >= 1")
        if self.kind == "gap" and not 0 <= p <= 1:
            raise errors.DomainViolation("gap family needs a weight in [0, 1]")

    def in_domain(self, t):
        if self.kind == "exp":
            return math.isfinite(t)
        if self.kind == "neglog" or (self.kind == "power" and self.param < 0):
            return t > 0
        return t >= 0

    def __call__(self, t):
        if not self.in_domain(t):
            raise errors.DomainViolation(f"{t} outside the domain of {self.kind}")
        p = self.param
        if self.kind == "exp":
            return math.exp(p * t)
        if self.kind == "power":
            return t**p
        if self.kind == "neglog":
            return -math.log(t)
        return 1.0 - p + p * t - t**p

    def to_dict(self):
        return {"kind": self.kind, "param": float(self.param)}


@dataclass(frozen=True)
class JensenInstance:
    points: tuple
    weights: tuple
    function: ConvexFunction

    def __post_init__(self):
        pts = tuple(float(t) for t in self.points)
        wts = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)
        if isinstance(self.function, dict):
            object.__setattr__(self, "function", ConvexFunction(**self.function))
        if len(pts) != len(wts) or not pts:
            raise errors.DomainViolation("points and weights must have equal nonzero length")
        if any(w < 0 for w in wts) or abs(math.fsum(wts) - 1.0) > 1e-12:
            raise errors.DomainViolation("weights must be nonnegative and sum to 1")
        for t in pts:
            if not self.function.in_domain(t):
                raise errors.DomainViolation(f"point {t} outside the function's domain")

    def to_dict(self):
        return {"points": list(self.points), "weights": list(self.weights), "function": self.function.to_dict()}


def _jensen_terms(inst: JensenInstance):
    f = inst.function
    vals = [f(t) for t in inst.points]
    mean_val = math.fsum(w * v for w, v in zip(inst.weights, vals))
    centre = math.fsum(w * t for w, t in zip(inst.weights, inst.points))
    return mean_val - f(centre), math.fsum(w * abs(v) for w, v in zip(inst.weights, vals))


def jensen_functional(inst: JensenInstance) -> float:
    """``sum p_i f(x_i) - f(sum p_i x_i)``, nonnegative for convex ``f``."""
    return _jensen_terms(inst)[0]


def check_jensen_bounds(inst_p: JensenInstance, inst_q: JensenInstance, tol=SCALAR_TOL) -> LawReport:
    """``max(p_i/q_i) J(q) >= J(p) >= min(p_i/q_i) J(q)`` on shared points."""
    if inst_p.points != inst_q.points or inst_p.function != inst_q.function:
        raise errors.DomainViolation("both instances must share points and function")
    if any(q <= 0 for q in inst_q.weights):
        raise errors.ZeroDenominatorWeight("reference weights must be strictly positive")
    ratios = [p / q for p, q in zip(inst_p.weights, inst_q.weights)]
    hi, lo = max(ratios), min(ratios)
    jp, size_p = _jensen_terms(inst_p)
    jq, size_q = _jensen_terms(inst_q)
    rep = LawReport("jensen-ratio-bounds", digest({"p": inst_p, "q": inst_q}))
    scale = max(1.0, size_p, hi * size_q)
    rep.extras.update(J_p=jp, J_q=jq, ratios=(hi, lo))
    rep.slack("upper", hi * jq - jp, scale, tol)
    return rep.slack("lower", jp - lo * jq, scale, tol)


def _a(w, s, t):
    return (1 - w) * s + w * t


def check_scalar_refinements(a, b, p, q=0.5, alpha=1.0, family="amgm-weighted", tol=SCALAR_TOL) -> LawReport:
    """Two-point refinement/reverse of a convexity gap, one of six families.

    ``exp-*`` read ``a, b`` as arbitrary reals and use ``exp(alpha t)``;
    the others need ``a, b > 0`` and compare ``A_p(a^alpha, b^alpha)`` with
    ``G_p(a, b)^alpha``.  ``*-midpoint`` and ``kittaneh-manasrah`` fix
    ``q = 1/2``; ``kittaneh-manasrah`` and ``amgm-weighted`` fix ``alpha = 1``.
    """
    if family not in SCALAR_FAMILIES:
        raise errors.ParameterOutOfDomain(f"unknown family {family!r}")
    p = _unit_weight(p)
    a, b, alpha = float(a), float(b), float(alpha)
    if family in ("kittaneh-manasrah", "amgm-weighted"):
        alpha = 1.0
    if alpha == 0 or not math.isfinite(alpha):
        raise errors.ParameterOutOfDomain("alpha must be finite and nonzero")
    midpoint = family.endswith("midpoint") or family == "kittaneh-manasrah"
    if midpoint:
        q = 0.5
    q = float(q)
    if not 0 < q < 1:
        raise errors.ParameterOutOfDomain(f"q = {q} must lie in (0, 1)")
    if not family.startswith("exp") and not (a > 0 and b > 0):
        raise errors.ParameterOutOfDomain("power families need a, b > 0")
    if not (math.isfinite(a) and math.isfinite(b)):
        raise errors.ParameterOutOfDomain("a, b must be finite")

    rep = LawReport(
        f"scalar-refinement-{family}",
        digest({"a": a, "b": b, "p": p, "q": q, "alpha": alpha, "family": family}),
    )
    if family.startswith("exp"):
        ea, eb = math.exp(alpha * a), math.exp(alpha * b)

        def gap(w):
            return _a(w, ea, eb) - math.exp(alpha * _a(w, a, b))

        size = max(ea, eb)
    else:
        pa, pb = a**alpha, b**alpha

        def gap(w):
            return _a(w, pa, pb) - (a ** (1 - w) * b**w) ** alpha

        size = max(pa, pb)

    middle = gap(p)
    if family in ("power-midpoint", "kittaneh-manasrah"):
        sq = (b ** (alpha / 2) - a ** (alpha / 2)) ** 2
        hi, lo = max(p, 1 - p), min(p, 1 - p)
        upper, lower = hi * sq, lo * sq
    else:
        if midpoint:
            hi, lo = 2 * max(p, 1 - p), 2 * min(p, 1 - p)
        else:
            hi, lo = max(p / q, (1 - p) / (1 - q)), min(p / q, (1 - p) / (1 - q))
        gq = middle if q == p else gap(q)
        upper, lower = hi * gq, lo * gq
    scale = max(1.0, size * max(1.0, 2 * hi))
    rep.extras.update(upper=upper, middle=middle, lower=lower)
    rep.slack("upper", upper - middle, scale, tol)
    return rep.slack("lower", middle - lower, scale, tol)


def check_gap_threshold(nu, samples=64, tol=SCALAR_TOL) -> LawReport:
    """``f_nu <= 1 - nu`` on ``[0, nu^{1/(nu-1)}]`` and ``>= 1 - nu`` beyond, sampled."""
    from ..means import f_nu, gap_maximiser_threshold

    nu = _unit_weight(nu)
    rep = LawReport("gap-threshold", digest({"nu": nu, "samples": int(samples)}))
    if not 0.0 < nu < 1.0:
        # f_nu vanishes identically and the threshold is undefined
        return rep.slack("inside", 0.0, 1.0, tol).slack("outside", 0.0, 1.0, tol)
    t_star = gap_maximiser_threshold(nu)
    inside = np.linspace(0.0, t_star, samples)
    outside = t_star * np.linspace(1.0, 10.0, samples)
    rep.extras["threshold"] = t_star
    rep.slack("inside", min((1 - nu) - f_nu(t, nu) for t in inside), max(1.0, t_star), tol)
    return rep.slack("outside", min(f_nu(t, nu) - (1 - nu) for t in outside), max(1.0, 10 * t_star), tol)
