"""The nine acceptance criteria at their stated tolerances.

Each test records one PASS/FAIL line, printed in the terminal summary.
"""

import json
import time

import numpy as np
import pytest

from opmeans import (
    arithmetic_mean,
    bound_functions,
    default_contour,
    f_nu,
    quadratic_geometric_mean,
    real_power_contour,
    real_power_spectral,
    spectrum_bounds,
)
from opmeans.fuzz import DEFAULT_DIMS, FuzzConfig, render_report, run_suite
from opmeans.laws import operator as op
from opmeans.laws import scalar as sc
from opmeans.laws.registry import Context, DCD_EXPONENTS, get_law
from opmeans.rng import SplitMix64, derive_seed, gen_pd_with_spectrum, gen_random_invertible, gen_random_pd

from conftest import record_criterion

MASTER = 20240917
COND = 100.0


def seeds(tag, count):
    return (derive_seed(MASTER, tag, i) for i in range(count))


def test_criterion_1_representation():
    nus = (-0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5)
    worst, count = 0.0, 0
    t0 = time.perf_counter()
    for n in DEFAULT_DIMS:
        for k, nu in enumerate(nus):
            for s in seeds(100 * n + k, 1000):
                rng = SplitMix64(s)
                x, y = gen_random_invertible(rng, n, COND), gen_random_invertible(rng, n, COND)
                rep = op.check_representation(x, y, nu, tol=1e-8)
                worst = max(worst, *rep.residuals.values())
                count += 1
    secs = time.perf_counter() - t0
    ok = worst <= 1e-8
    record_criterion(1, "representation", ok, f"{count} instances, worst residual {worst:.2e}, {secs:.1f} s")
    assert ok


def test_criterion_2_hga_and_half_chains():
    report = run_suite(FuzzConfig(master_seed=MASTER, suites=["hga-*"]))
    worst = min(e["worst_margin"] for e in report.per_law.values())
    chains_ok = report.failures == 0 and worst >= -1e-9

    eq_worst = 0.0
    for n in DEFAULT_DIMS:
        for s in seeds(200 + n, 50):
            rng = SplitMix64(s)
            x, y = gen_random_invertible(rng, n, COND), gen_random_invertible(rng, n, COND)
            cases = [(x, y, 0.0), (x, y, 1.0), (x, x, rng.uniform())]
            for kind in op.HGA_KINDS:
                for a, b, nu in cases:
                    rep = op.check_hga_chain(a, b, nu, kind)
                    eq_worst = max(eq_worst, *(abs(v) for v in rep.residuals.values()))
    eq_ok = eq_worst <= 1e-10
    ok = chains_ok and eq_ok
    record_criterion(
        2, "HGA and half-power chains", ok,
        f"worst margin {worst:.2e} over {sum(e['trials'] for e in report.per_law.values())} trials, "
        f"equality cases within {eq_worst:.1e}",
    )
    assert ok


def test_criterion_3_dcd_identities():
    worst, count = 0.0, 0
    for v, variant in enumerate(op.DCD_VARIANTS):
        for j, lam in enumerate(DCD_EXPONENTS):
            for i, s in enumerate(seeds(300 + 10 * v + j, 500)):
                n = DEFAULT_DIMS[i % len(DEFAULT_DIMS)]
                rng = SplitMix64(s)
                c = gen_random_pd(rng, n, COND)
                d = gen_random_pd(rng, n, COND) if variant == "selfadjoint" else gen_random_invertible(rng, n, COND)
                worst = max(worst, op.check_dcd_identity(c, d, lam, variant).residuals["residual"])
                count += 1
    ok = worst <= 1e-8
    record_criterion(3, "dcd power identities", ok, f"{count} instances, worst residual {worst:.2e}")
    assert ok


def test_criterion_4_refinement_grid():
    ps = [i / 10 for i in range(11)]
    qs = [i / 10 for i in range(1, 10)]
    worst, eq_worst, mid_worst, count = np.inf, 0.0, 0.0, 0
    for n in DEFAULT_DIMS:
        for s in seeds(400 + n, 4):
            rng = SplitMix64(s)
            x, y = gen_random_invertible(rng, n, COND), gen_random_invertible(rng, n, COND)
            for pair_form, mid_form in (("general", "midpoint"), ("positive-pair", "positive-pair-midpoint")):
                for p in ps:
                    for q in qs:
                        rep = op.check_operator_refinement(x, y, p, q, pair_form)
                        worst = min(worst, rep.margin)
                        count += 1
                        if p == q:
                            eq_worst = max(eq_worst, *(abs(v) for v in rep.residuals.values()))
                        if q == 0.5:
                            mid = op.check_operator_refinement(x, y, p, 0.5, mid_form)
                            for k, v in rep.residuals.items():
                                mid_worst = max(mid_worst, abs(v - mid.residuals[k]))
    ok = worst >= -1e-9 and eq_worst <= 1e-10 and mid_worst <= 1e-12
    record_criterion(
        4, "refinement and reverse", ok,
        f"{count} checks, worst margin {worst:.2e}, p = q within {eq_worst:.1e}, midpoint form within {mid_worst:.1e}",
    )
    assert ok


def test_criterion_5_bounded_estimates():
    worst, count = np.inf, 0
    for n in DEFAULT_DIMS:
        for i, s in enumerate(seeds(500 + n, 60)):
            rng = SplitMix64(s)
            x, y = gen_random_invertible(rng, n, COND), gen_random_invertible(rng, n, COND)
            nu = rng.uniform()
            for form in op.BOUNDED_FORMS:
                for widen in (1.0, 2.0):
                    worst = min(worst, op.check_bounded_estimates(x, y, nu, form, widen).margin)
                    count += 1

    rep = op.check_bounded_estimates(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]), 0.5)
    computed_gap = arithmetic_mean(np.diag([1.0, 4.0]), np.diag([9.0, 16.0]), 0.5) - quadratic_geometric_mean(
        np.diag([1.0, 2.0]), np.diag([3.0, 4.0]), 0.5
    )
    hand_err = max(
        np.abs(computed_gap - np.diag([2.0, 2.0])).max(),
        abs(rep.extras["Delta"] - 2.0),
        abs(rep.extras["delta"] - 0.5),
    )
    ok = worst >= -1e-9 and hand_err <= 1e-12
    record_criterion(
        5, "boundedness estimates", ok,
        f"{count} checks (tight and widened), worst margin {worst:.2e}, hand instance within {hand_err:.1e}",
    )
    assert ok


def test_criterion_6_bound_functions_vs_grid():
    rng = SplitMix64(derive_seed(MASTER, 600))
    worst, branches = 0.0, set()
    for i in range(200):
        branch = i % 3
        if branch == 0:  # [k, K] below 1
            k, big = sorted(rng.log_uniform(0.01, 0.99, 2))
        elif branch == 1:  # above 1
            k, big = sorted(rng.log_uniform(1.01, 100.0, 2))
        else:  # straddling 1
            k, big = rng.log_uniform(0.01, 0.99), rng.log_uniform(1.01, 100.0)
        nu = rng.uniform()
        hi, lo = bound_functions(k, big, nu)
        t = np.linspace(k, big, 100_000)
        vals = 1.0 - nu + nu * t - t**nu
        assert abs(vals[0] - f_nu(k, nu)) < 1e-12
        worst = max(worst, abs(hi - vals.max()), abs(lo - vals.min()))
        branches.add(branch)
    ok = worst <= 1e-6 and branches == {0, 1, 2}
    record_criterion(6, "bound functions vs grid search", ok, f"200 triples over 3 branches, worst gap {worst:.1e}")
    assert ok


def test_criterion_7_contour_oracle():
    rng = SplitMix64(derive_seed(MASTER, 700))
    worst256, worst_ratio = 0.0, np.inf
    for i in range(100):
        n = (2, 3, 4, 6, 8)[i % 5]
        # pin the extremes so every instance spans the full [0.1, 10]
        lam = np.concatenate(([0.1, 10.0], rng.log_uniform(0.1, 10.0, n - 2)))
        a = gen_pd_with_spectrum(rng, lam)
        alpha = float(rng.uniform_range(-2.0, 3.0))
        ref = real_power_spectral(a, alpha)
        contour = default_contour(spectrum_bounds(a), 256)
        errs = [
            np.linalg.norm(real_power_contour(a, alpha, contour.with_nodes(m)) - ref) / np.linalg.norm(ref)
            for m in (256, 128)
        ]
        worst256 = max(worst256, errs[0])
        worst_ratio = min(worst_ratio, errs[1] / max(errs[0], 1e-300))
    ok = worst256 <= 1e-8 and worst_ratio >= 100
    record_criterion(
        7, "contour oracle", ok, f"100 instances, worst error at 256 nodes {worst256:.1e}, min 128/256 ratio {worst_ratio:.1e}"
    )
    assert ok


def test_criterion_8_scalar_suites():
    ids = ["jensen-ratio-bounds"] + [f"scalar-refinement-{f}" for f in sc.SCALAR_FAMILIES]
    worst = {}
    for j, law_id in enumerate(ids):
        law = get_law(law_id)
        w = np.inf
        for i in range(10_000):
            ctx = Context(trial=i, dim=2 + i % 7, cond_max=COND)
            rep = law.run(law.sample(SplitMix64(derive_seed(MASTER, 800 + j, i)), ctx))
            w = min(w, rep.margin)
        worst[law_id] = w
    km = sc.check_scalar_refinements(1.0, 4.0, 0.5, family="kittaneh-manasrah")
    km_err = max(abs(v) for v in km.residuals.values())
    low = min(worst.values())
    ok = low >= -1e-12 and km_err <= 1e-14
    record_criterion(
        8, "scalar suites", ok, f"{len(ids)} families x 10^4 draws, worst slack {low:.1e}, equality case {km_err:.1e}"
    )
    assert ok


@pytest.fixture(scope="module")
def default_runs():
    config = FuzzConfig(keep_worst=True)
    return [run_suite(config, threads=t) for t in (1, 4)]


def _strip_time(report):
    d = json.loads(render_report(report))
    del d["wall_time_ms"]
    return json.dumps(d, sort_keys=True)


def test_criterion_9_determinism(default_runs):
    first, second = default_runs
    same = _strip_time(first) == _strip_time(second)
    raw = render_report(first).replace(f'"wall_time_ms":{first.wall_time_ms}', "")
    raw2 = render_report(second).replace(f'"wall_time_ms":{second.wall_time_ms}', "")
    ok = same and raw == raw2
    record_criterion(
        9, "determinism", ok,
        f"default suite at 1 and 4 threads, {len(render_report(first))} bytes, identical apart from wall_time_ms: {ok}",
    )
    assert ok


def test_default_suite_has_no_false_alarms(default_runs):
    report = default_runs[0]
    assert report.failures == 0, {k: v for k, v in report.per_law.items() if v["failures"]}
    assert len(report.per_law) == 33
