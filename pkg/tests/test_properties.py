"""Invariants over seeded random matrices, driven by hypothesis."""

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from opmeans import (
    arithmetic_mean,
    bound_functions,
    f_nu,
    geometric_mean,
    harmonic_mean,
    hermitian_eigen,
    inverse,
    loewner_compare,
    min_eig,
    modulus,
    modulus_power,
    operator_norm,
    quadratic_geometric_mean,
    real_power_spectral,
    squared_modulus,
)
from opmeans.laws import scalar as sc
from opmeans.linalg import Verdict
from opmeans.rng import SplitMix64, derive_seed

from conftest import random_inv, random_pd

seeds = st.integers(0, 2**64 - 1)
dims = st.integers(1, 8)
conds = st.floats(1.0, 100.0)
unit = st.sampled_from([0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0]) | st.floats(0.0, 1.0)
reals = st.floats(-2.0, 2.0).filter(lambda t: abs(t) > 1e-3)

settings.register_profile("opmeans", max_examples=60, deadline=None)
settings.load_profile("opmeans")


def rel(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300)


@given(seeds, dims)
def test_eigen_reconstruction(seed, n):
    g = random_inv(seed, n)
    h = g + g.conj().T
    dec = hermitian_eigen(h)
    assert np.all(np.diff(dec.eigenvalues) >= 0)
    u = dec.vectors
    assert rel((u * dec.eigenvalues) @ u.conj().T, h) < 1e-12
    assert np.linalg.norm(u.conj().T @ u - np.eye(n)) < 1e-12


@given(seeds, dims, conds)
def test_modulus_positive_and_squares_back(seed, n, cond):
    c = random_inv(seed, n, cond)
    m = modulus(c)
    assert min_eig(m) > 0
    assert rel(m @ m, c.conj().T @ c) < 1e-11


@given(seeds, dims, conds)
def test_c_star_identity(seed, n, cond):
    c = random_inv(seed, n, cond)
    assert math.isclose(operator_norm(c) ** 2, operator_norm(c.conj().T @ c), rel_tol=1e-12)


@given(seeds, dims, conds, reals, reals)
def test_power_semigroup(seed, n, cond, s, t):
    a = random_pd(seed, n, cond)
    assert rel(real_power_spectral(a, s) @ real_power_spectral(a, t), real_power_spectral(a, s + t)) < 1e-9


@given(seeds, dims, conds, reals)
def test_modulus_power_matches_square_route(seed, n, cond, alpha):
    c = random_inv(seed, n, cond)
    assert rel(modulus_power(c, alpha), real_power_spectral(squared_modulus(c), alpha / 2)) < 1e-9


@given(seeds, dims, unit)
def test_hga_chain_in_loewner_order(seed, n, nu):
    x, y = random_inv(seed, n), random_inv(seed ^ 1, n)
    a, b = squared_modulus(x), squared_modulus(y)
    ar, q, hm = arithmetic_mean(a, b, nu), quadratic_geometric_mean(x, y, nu), harmonic_mean(a, b, nu)
    scale = operator_norm(ar)
    assert min_eig(ar - q) >= -1e-9 * scale
    assert min_eig(q - hm) >= -1e-9 * scale


@given(seeds, dims, st.floats(-1.0, 2.0))
def test_representation(seed, n, nu):
    x, y = random_inv(seed, n), random_inv(seed ^ 2, n)
    q = quadratic_geometric_mean(x, y, nu)
    assert rel(q, geometric_mean(squared_modulus(x), squared_modulus(y), nu)) < 1e-8


@given(seeds, dims, st.floats(-1.0, 2.0))
def test_congruence_of_geometric_mean(seed, n, nu):
    a, b, c = random_pd(seed, n), random_pd(seed ^ 3, n), random_inv(seed ^ 4, n, 10.0)
    lhs = geometric_mean(c.conj().T @ a @ c, c.conj().T @ b @ c, nu)
    assert rel(lhs, c.conj().T @ geometric_mean(a, b, nu) @ c) < 1e-8


@given(seeds, dims)
def test_loewner_antisymmetry(seed, n):
    a = random_pd(seed, n)
    b = a + random_pd(seed ^ 5, n)
    assert loewner_compare(b, a).verdict == Verdict.STRICTLY_GREATER
    assert loewner_compare(a, b).verdict == Verdict.INDEFINITE
    # both directions hold only for equal matrices
    assert loewner_compare(a, a).holds and loewner_compare(a, a).min_eig_diff == 0.0


@given(seeds, dims)
def test_inverse_is_two_sided(seed, n):
    c = random_inv(seed, n)
    ci = inverse(c)
    assert np.linalg.norm(ci @ c - np.eye(n)) < 1e-11
    assert np.linalg.norm(c @ ci - np.eye(n)) < 1e-11


@given(st.floats(0.0, 1e3), unit)
def test_gap_function_nonnegative(t, nu):
    assert f_nu(t, nu) >= -1e-12 * max(1.0, t)


@given(st.floats(1e-3, 30.0), st.floats(1.0, 30.0), unit)
def test_bound_functions_bracket_a_grid(k, ratio, nu):
    big = k * ratio
    hi, lo = bound_functions(k, big, nu)
    grid = np.append(np.linspace(k, big, 257), 1.0 if k <= 1 <= big else k)
    vals = [f_nu(t, nu) for t in grid]
    tol = 1e-12 * max(1.0, big)
    assert max(vals) <= hi + tol and min(vals) >= lo - tol


@given(
    st.lists(st.floats(0.05, 20.0), min_size=2, max_size=8),
    st.sampled_from([("exp", 0.5), ("power", 2.0), ("power", -1.0), ("neglog", 1.0), ("gap", 0.3)]),
    st.data(),
)
def test_jensen_functional_nonnegative(points, fn, data):
    w = np.array(data.draw(st.lists(st.floats(0.0, 1.0), min_size=len(points), max_size=len(points))))
    if w.sum() == 0:
        w[0] = 1.0
    w = w / math.fsum(w)
    inst = sc.JensenInstance(points, list(w), sc.ConvexFunction(*fn))
    vals = [abs(inst.function(t)) for t in points]
    assert sc.jensen_functional(inst) >= -1e-12 * max(1.0, max(vals))


@given(seeds, st.integers(0, 1000), st.integers(0, 2**32))
def test_rng_determinism(master, i, j):
    s = derive_seed(master, i, j)
    assert s == derive_seed(master, i, j)
    a, b = SplitMix64(s), SplitMix64(s)
    np.testing.assert_array_equal(a.normal(7), b.normal(7))
    c = SplitMix64(s)
    c.words(3)
    np.testing.assert_array_equal(c.uniform(4), SplitMix64(s).uniform(7)[3:])
