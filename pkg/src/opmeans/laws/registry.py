"""Every checkable law, with a seeded instance sampler and a replay entry point.

A law's inputs are a flat dict of matrices, reals and strings, so one
encoding serves digests, failure artifacts and ``opmeans check`` replay.
"""

from __future__ import annotations

import fnmatch
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .. import errors
from ..rng import SplitMix64, gen_pd_with_spectrum, gen_random_invertible, gen_random_pd
from . import operator as op
from . import scalar as sc

DEFAULT_NU_GRID = (0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0, -0.5, 1.5)
DCD_EXPONENTS = (-1.0, -0.5, 0.5, 2.0, 3.0)
Q_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
POWER_EXPONENTS = (-2.0, -1.0, -0.5, 0.5, 1.5, 2.0, 3.0)


@dataclass(frozen=True)
class Context:
    """What a sampler may use: trial index, dimension, conditioning and weights."""

    trial: int
    dim: int
    cond_max: float
    nu_grid: tuple = DEFAULT_NU_GRID

    def nu(self, unit=False):
        grid = [v for v in self.nu_grid if 0.0 <= v <= 1.0] if unit else list(self.nu_grid)
        if not grid:
            raise errors.ConfigError("nu grid has no weights in [0, 1]")
        return grid[self.trial % len(grid)]


@dataclass(frozen=True)
class LawSpec:
    law_id: str
    run: Callable  # run(inputs, tol) -> LawReport
    sample: Callable  # sample(rng, ctx) -> inputs
    summary: str = ""


def _tol(tol):
    return {} if tol is None else {"tol": tol}


# ---------------------------------------------------------------- samplers


def _pair_xy(rng, ctx, unit=False):
    n, c = ctx.dim, ctx.cond_max
    return {
        "x": gen_random_invertible(rng, n, c),
        "y": gen_random_invertible(rng, n, c),
        "nu": ctx.nu(unit),
    }


def _pair_ab(rng, ctx, unit=False):
    n, c = ctx.dim, ctx.cond_max
    return {"a": gen_random_pd(rng, n, c), "b": gen_random_pd(rng, n, c), "nu": ctx.nu(unit)}


def _dcd(variant):
    def sample(rng, ctx):
        n, c = ctx.dim, ctx.cond_max
        d = gen_random_pd(rng, n, c) if variant == "selfadjoint" else gen_random_invertible(rng, n, c)
        return {
            "c": gen_random_pd(rng, n, c),
            "d": d,
            "lam": DCD_EXPONENTS[ctx.trial % len(DCD_EXPONENTS)],
            "variant": variant,
        }

    return sample


def _refinement(form):
    def sample(rng, ctx):
        inputs = _pair_xy(rng, ctx)
        del inputs["nu"]
        inputs["p"] = rng.integer(0, 10) / 10.0
        inputs["q"] = 0.5 if form.endswith("midpoint") else rng.choice(Q_GRID)
        inputs["form"] = form
        return inputs

    return sample


def _bounded(form):
    def sample(rng, ctx):
        inputs = _pair_xy(rng, ctx, unit=True)
        inputs["form"] = form
        inputs["widen"] = 1.0 if ctx.trial % 2 == 0 else 2.0
        return inputs

    return sample


def _congruence(rng, ctx):
    n, c = ctx.dim, ctx.cond_max
    return {
        "a": gen_random_pd(rng, n, c),
        "b": gen_random_pd(rng, n, c),
        "c": gen_random_invertible(rng, n, c),
    }


def _heinz(rng, ctx):
    n, c = ctx.dim, ctx.cond_max
    b = gen_random_pd(rng, n, c)
    return {"a": b + gen_random_pd(rng, n, c), "b": b, "p": ctx.nu(unit=True)}


def _power_laws(rng, ctx):
    return {
        "a": gen_random_pd(rng, ctx.dim, ctx.cond_max),
        "alpha": ctx.nu(),
        "beta": rng.choice(POWER_EXPONENTS),
    }


def _contour(rng, ctx):
    # spectrum in [0.1, 10] scaled by the configured spread
    spread = max(min(ctx.cond_max, 100.0), 1.0 + 1e-9)
    lam = 0.1 * rng.log_uniform(1.0, spread, ctx.dim)
    return {"a": gen_pd_with_spectrum(rng, lam), "alpha": rng.choice(POWER_EXPONENTS + (2.7, 0.3))}


def _smt(rng, ctx):
    return {"a": gen_random_pd(rng, ctx.dim, ctx.cond_max), "alpha": ctx.nu()}


def _normalised(raw):
    raw = np.asarray(raw, dtype=np.float64)
    return [float(v) for v in raw / math.fsum(raw)]


def _jensen(rng, ctx):
    n = max(2, ctx.dim)
    kind = ("exp", "power", "neglog", "gap")[ctx.trial % 4]
    if kind == "exp":
        param = rng.choice((-2.0, -1.0, -0.5, 0.5, 1.0, 2.0))
        points = rng.uniform_range(-3.0, 3.0, n)
    elif kind == "power":
        param = rng.choice((-2.0, -1.0, -0.5, 1.0, 1.5, 2.0, 3.0))
        points = rng.log_uniform(0.1, 10.0, n)
    elif kind == "neglog":
        param = 1.0
        points = rng.log_uniform(0.01, 100.0, n)
    else:
        param = rng.choice((0.1, 0.25, 0.5, 0.75, 0.9))
        points = rng.uniform_range(0.0, 10.0, n)
    p = rng.uniform(n)
    p[p < 0.15] = 0.0  # exercise zero weights
    if not p.any():
        p[0] = 1.0
    return {
        "points": [float(t) for t in points],
        "p": _normalised(p),
        "q": _normalised(0.05 + rng.uniform(n)),
        "function": {"kind": kind, "param": float(param)},
    }


def _scalar_family(family):
    def sample(rng, ctx):
        if family.startswith("exp"):
            a, b = rng.uniform_range(-3.0, 3.0, 2)
        else:
            a, b = rng.log_uniform(0.01, 100.0, 2)
        return {
            "a": float(a),
            "b": float(b),
            "p": float(rng.uniform()) if ctx.trial % 3 else rng.integer(0, 10) / 10.0,
            "q": float(rng.uniform_range(0.05, 0.95)),
            "alpha": rng.choice((-2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0)),
            "family": family,
        }

    return sample


def _gap_threshold(rng, ctx):
    return {"nu": float(rng.uniform_range(0.01, 0.99))}


# ---------------------------------------------------------------- runners


def _call(fn, *names):
    def run(inputs, tol=None):
        return fn(*(inputs[k] for k in names), **_tol(tol))

    return run


def _run_jensen(inputs, tol=None):
    f = sc.ConvexFunction(**inputs["function"])
    inst_p = sc.JensenInstance(inputs["points"], inputs["p"], f)
    inst_q = sc.JensenInstance(inputs["points"], inputs["q"], f)
    return sc.check_jensen_bounds(inst_p, inst_q, **_tol(tol))


def _build():
    specs = [
        LawSpec("dcd-power-selfadjoint", _call(op.check_dcd_identity, "c", "d", "lam", "variant"), _dcd("selfadjoint"),
                "(dcd)^lam through (c^1/2 d^2 c^1/2)^(lam-1), d > 0"),
        LawSpec("dcd-power-star", _call(op.check_dcd_identity, "c", "d", "lam", "variant"), _dcd("star"),
                "(dcd*)^lam through (c^1/2 |d|^2 c^1/2)^(lam-1), d invertible"),
        LawSpec("geometric-symmetry", _call(op.check_geo_symmetry, "a", "b", "nu"), _pair_ab,
                "b #_(1-nu) a = a #_nu b, any real nu"),
        LawSpec("quadratic-inverse", _call(op.check_inverse_identities, "x", "y", "nu"), _pair_xy,
                "inverses commute with the quadratic mean"),
        LawSpec("quadratic-representation", _call(op.check_representation, "x", "y", "nu"), _pair_xy,
                "x S_nu y = |x|^2 #_nu |y|^2 = |y|^2 #_(1-nu) |x|^2"),
        *[
            LawSpec(f"hga-{kind}", (lambda k: lambda i, tol=None: op.check_hga_chain(i["x"], i["y"], i["nu"], k, **_tol(tol)))(kind),
                    (lambda rng, ctx: _pair_xy(rng, ctx, unit=True)), f"arithmetic >= geometric >= harmonic ({kind})")
            for kind in op.HGA_KINDS
        ],
        LawSpec("norm-chain", _call(op.check_norm_chain, "x", "y", "nu"), lambda rng, ctx: _pair_xy(rng, ctx, unit=True),
                "operator-norm consequence of the mean chain"),
        *[
            LawSpec(f"operator-refinement-{form}", _call(op.check_operator_refinement, "x", "y", "p", "q", "form"),
                    _refinement(form), "ratio refinement and reverse of the A-G gap")
            for form in op.REFINEMENT_FORMS
        ],
        *[
            LawSpec(f"bounded-{form}", _call(op.check_bounded_estimates, "x", "y", "nu", "form", "widen"),
                    _bounded(form), "A-G gap bracketed through m <= |yx^-1| <= M")
            for form in op.BOUNDED_FORMS
        ],
        LawSpec("geometric-extension", _call(op.check_geometric_extension, "a", "b", "nu"), _pair_ab,
                "a^1/2 S_nu b^1/2 = a #_nu b"),
        LawSpec("mean-symmetry", _call(op.check_mean_symmetry, "a", "b"),
                lambda rng, ctx: {k: v for k, v in _pair_ab(rng, ctx).items() if k != "nu"}, "# and ! are symmetric"),
        LawSpec("mean-congruence", _call(op.check_mean_congruence, "a", "b", "c"), _congruence,
                "# and ! commute with congruence"),
        LawSpec("mean-inversion", _call(op.check_mean_inversion, "a", "b", "nu"), lambda rng, ctx: _pair_ab(rng, ctx, unit=True),
                "inverse of # and ! means"),
        LawSpec("loewner-heinz", _call(op.check_loewner_heinz, "a", "b", "p"), _heinz, "t^p is operator monotone on [0, 1]"),
        LawSpec("power-laws", _call(op.check_power_laws, "a", "alpha", "beta"), _power_laws,
                "a^s a^t = a^(s+t), (a^s)^-1 = a^-s, (a^2)^1/2 = a"),
        LawSpec("power-contour-oracle", _call(op.check_contour_oracle, "a", "alpha"), _contour,
                "spectral power against the resolvent integral"),
        LawSpec("spectral-mapping", _call(op.check_smt, "a", "alpha"), _smt, "spectrum of a^alpha"),
        LawSpec("jensen-ratio-bounds", _run_jensen, _jensen, "Jensen functional bracketed by weight ratios"),
        *[
            LawSpec(f"scalar-refinement-{family}",
                    _call(sc.check_scalar_refinements, "a", "b", "p", "q", "alpha", "family"),
                    _scalar_family(family), "two-point refinement of a convexity gap")
            for family in sc.SCALAR_FAMILIES
        ],
        LawSpec("gap-threshold", _call(sc.check_gap_threshold, "nu"), _gap_threshold,
                "f_nu crosses 1 - nu at nu^(1/(nu-1))"),
    ]
    return {s.law_id: s for s in specs}


LAWS = _build()


def law_ids():
    return sorted(LAWS)


def get_law(law_id) -> LawSpec:
    try:
        return LAWS[law_id]
    except KeyError:
        raise errors.UnknownLawId(law_id) from None


def select(globs) -> list:
    """Law ids matching any of ``globs``; a glob matching nothing is an error."""
    chosen = set()
    for g in globs:
        hits = fnmatch.filter(LAWS, g)
        if not hits:
            raise errors.UnknownLawId(g)
        chosen.update(hits)
    return sorted(chosen)


def sample_instance(law_id, seed, ctx: Context) -> dict:
    return get_law(law_id).sample(SplitMix64(seed), ctx)
