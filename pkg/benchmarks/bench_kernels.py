"""Time the compiled kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Both kernel modules are imported directly, so one process covers both
backends.  The last column is numpy time over numba time.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from opmeans import _kernels_numba as kb
from opmeans import _kernels_numpy as kn
from opmeans.rng import SplitMix64


def _cases():
    rng = np.random.default_rng(0)
    for n in (2, 4, 8):
        g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = g + g.conj().T
        z = 2 + 2 * np.exp(2j * np.pi * np.arange(256) / 256)
        w = (z - 2) / 256
        a = np.diag(np.linspace(0.5, 3.5, n)).astype(complex)
        yield f"jacobi_eigh n={n}", lambda k, h=h: k.jacobi_eigh(h, 1e-14, 60)
        yield f"jacobi_svd n={n}", lambda k, g=g: k.jacobi_svd(g, 1e-15, 60)
        yield f"gauss_jordan n={n}", lambda k, g=g: k.gauss_jordan_inverse(g, 1e-14)
        yield f"resolvent_sum n={n} nodes=256", lambda k, a=a, z=z, w=w: k.resolvent_sum(a, z, w, 1e-12)
    data = np.frombuffer(b"x" * 4096, dtype=np.uint8)
    yield "fnv1a64 4 KiB", lambda k: k.fnv1a64(data)


def _unitary(k, n=8):
    if hasattr(k, "gaussian_unitary"):
        return k.gaussian_unitary(np.uint64(1), 0, n)
    q, r = np.linalg.qr(SplitMix64(1).complex_normal(n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _suite_time(no_jit):
    env = dict(os.environ, OPMEANS_NO_JIT="1" if no_jit else "0")
    code = (
        "import time; from opmeans.fuzz import FuzzConfig, run_suite;"
        "run_suite(FuzzConfig(trials=2));"  # warm caches
        "t = time.perf_counter(); run_suite(FuzzConfig(trials=120));"
        "print(time.perf_counter() - t)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--no-suite", action="store_true", help="skip the end-to-end fuzz timing")
    args = ap.parse_args(argv)

    cases = list(_cases()) + [("random unitary n=8", _unitary)]
    print(f"{'kernel':34s} {'numba us':>10s} {'numpy us':>10s} {'speedup':>8s}")
    for name, fn in cases:
        fn(kb)  # compile / load cache
        tb = min(timeit.repeat(lambda: fn(kb), number=args.repeat, repeat=3)) / args.repeat
        tn = min(timeit.repeat(lambda: fn(kn), number=args.repeat, repeat=3)) / args.repeat
        print(f"{name:34s} {tb * 1e6:10.1f} {tn * 1e6:10.1f} {tn / tb:8.1f}")
    if not args.no_suite:
        tb, tn = _suite_time(False), _suite_time(True)
        print(f"{'fuzz: 33 laws x 120 trials (s)':34s} {tb:10.2f} {tn:10.2f} {tn / tb:8.1f}")


if __name__ == "__main__":
    main()
