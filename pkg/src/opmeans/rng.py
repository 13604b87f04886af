"""Counter-based SplitMix64 stream and seeded matrix generators.

The stream is fully specified so any implementation reproduces it:

* word ``k`` (k = 0, 1, ...) of the stream with seed ``s`` is
  ``mix64(s + (k + 1) * 0x9E3779B97F4A7C15 mod 2^64)`` where
  ``mix64(z) = z3 ^ (z3 >> 31)`` with
  ``z1 = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9``,
  ``z3 = (z1 ^ (z1 >> 27)) * 0x94D049BB133111EB`` (all mod 2^64);
* a uniform double is ``(word >> 11) * 2^-53`` in [0, 1);
* Gaussians come in Box-Muller pairs from two consecutive uniforms
  ``u1, u2``: ``r = sqrt(-2 ln(1 - u1))``, ``(r cos 2 pi u2, r sin 2 pi u2)``;
* the seed for trial ``i`` of law ``j`` is
  ``mix64(mix64(master + (i + 1) G) + (j + 1) G)`` with ``G`` the golden
  increment above.
"""

from __future__ import annotations

import numpy as np

from . import errors
from ._backend import kernels
from .linalg import MAX_DIM, hermitize

GOLDEN = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, *keys: int) -> int:
    s = master & MASK64
    for key in keys:
        s = mix64((s + (key + 1) * GOLDEN) & MASK64)
    return s


def _mix64_array(z):
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_M1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


class SplitMix64:
    """Counter-based stream; draws are vectorised over the counter."""

    def __init__(self, seed: int):
        self.seed = int(seed) & MASK64
        self.counter = 0

    def words(self, count: int) -> np.ndarray:
        k = np.arange(self.counter + 1, self.counter + 1 + count, dtype=np.uint64)
        self.counter += count
        with np.errstate(over="ignore"):
            return _mix64_array(np.uint64(self.seed) + k * np.uint64(GOLDEN))

    def next_u64(self) -> int:
        return int(self.words(1)[0])

    def uniform(self, size=None):
        u = (self.words(1 if size is None else int(np.prod(size))) >> np.uint64(11)).astype(
            np.float64
        ) * 2.0**-53
        return float(u[0]) if size is None else u.reshape(size)

    def uniform_range(self, lo, hi, size=None):
        return lo + (hi - lo) * self.uniform(size)

    def log_uniform(self, lo, hi, size=None):
        return np.exp(self.uniform_range(np.log(lo), np.log(hi), size))

    def normal(self, size):
        count = int(np.prod(size))
        pairs = (count + 1) // 2
        u = self.uniform(2 * pairs).reshape(pairs, 2)
        r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
        ang = 2.0 * np.pi * u[:, 1]
        z = np.column_stack((r * np.cos(ang), r * np.sin(ang))).ravel()
        return z[:count].reshape(size)

    def complex_normal(self, n):
        return self.normal((n, n, 2)) @ np.array([1.0, 1.0j])

    def choice(self, seq):
        return seq[int(self.uniform() * len(seq))]

    def integer(self, lo, hi):
        """Uniform integer in [lo, hi]."""
        return lo + min(int(self.uniform() * (hi - lo + 1)), hi - lo)


def random_unitary(rng: SplitMix64, n: int) -> np.ndarray:
    """Haar unitary from QR of a complex Gaussian matrix, phases fixed so R
    has a positive diagonal.  Consumes ``2 n^2`` words either way."""
    if hasattr(kernels, "gaussian_unitary"):
        q = kernels.gaussian_unitary(np.uint64(rng.seed), rng.counter, n)
        rng.counter += 2 * n * n
        return q
    q, r = np.linalg.qr(rng.complex_normal(n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _check(n, cond_max):
    if not 1 <= int(n) <= MAX_DIM:
        raise errors.BadDimension(f"dimension {n} outside [1, {MAX_DIM}]")
    if not cond_max >= 1:
        raise errors.ConfigError("cond_max must be >= 1")


def _spread(rng, n, cond_max):
    if cond_max == 1:
        rng.uniform(n)  # keep the stream layout independent of cond_max
        return np.ones(n)
    return rng.log_uniform(1.0, cond_max, n)


def gen_random_invertible(seed, n, cond_max) -> np.ndarray:
    """``U diag(s) V*`` with Haar ``U, V`` and ``s`` log-uniform on [1, cond_max]."""
    _check(n, cond_max)
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    u = random_unitary(rng, n)
    v = random_unitary(rng, n)
    s = _spread(rng, n, cond_max)
    return (u * s) @ v.conj().T


def gen_random_pd(seed, n, cond_max) -> np.ndarray:
    """``U diag(lambda) U*`` with Haar ``U`` and ``lambda`` log-uniform on [1, cond_max]."""
    _check(n, cond_max)
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    u = random_unitary(rng, n)
    lam = _spread(rng, n, cond_max)
    if n == 1:
        return lam.reshape(1, 1).astype(np.complex128)
    return hermitize((u * lam) @ u.conj().T)


def gen_pd_with_spectrum(rng: SplitMix64, lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=np.float64)
    n = lam.shape[0]
    if n == 1:
        return lam.reshape(1, 1).astype(np.complex128)
    u = random_unitary(rng, n)
    return hermitize((u * lam) @ u.conj().T)
