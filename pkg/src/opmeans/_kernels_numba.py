"""Compiled hot loops: complex Jacobi sweeps (two-sided for Hermitian
eigenproblems, one-sided for singular values), Gauss-Jordan inversion and
the resolvent quadrature sum.

All kernels return a status code instead of raising, because exceptions
inside nopython code lose their type. ``0`` means success.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _off_norm(a):
    n = a.shape[0]
    s = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                s += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
    return np.sqrt(s)


@njit(cache=True, nogil=True)
def jacobi_eigh(h, tol, max_sweeps):
    """Cyclic Jacobi for a Hermitian matrix.

    Returns ``(eigenvalues, vectors, sweeps, status)`` with eigenvalues
    unsorted; status 1 means the sweep cap was hit.
    """
    n = h.shape[0]
    a = h.copy()
    v = np.eye(n, dtype=np.complex128)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
    thresh = tol * np.sqrt(fro)
    sweeps = 0
    status = 1
    for sweep in range(max_sweeps + 1):
        if _off_norm(a) <= thresh:
            status = 0
            break
        if sweep == max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * g)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ph = np.conj(apq / g)
                v00 = c + 0j
                v01 = s + 0j
                v10 = -s * ph
                v11 = c * ph
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * v00 + akq * v10
                    a[k, q] = akp * v01 + akq * v11
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(v00) * apk + np.conj(v10) * aqk
                    a[q, k] = np.conj(v01) * apk + np.conj(v11) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * g
                a[q, q] = aqq + t * g
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * v00 + vkq * v10
                    v[k, q] = vkp * v01 + vkq * v11
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, sweeps, status


@njit(cache=True, nogil=True)
def jacobi_svd(z, tol, max_sweeps):
    """One-sided (Hestenes) Jacobi: rotate columns of ``z`` until pairwise
    orthogonal to ``tol``.

    Returns ``(sigma, v, sweeps, status)`` with ``z = U diag(sigma) v*``,
    ``sigma`` unsorted.  Works on ``z`` directly, so ``z* z`` is never formed.
    """
    n = z.shape[1]
    m = z.shape[0]
    g = z.copy()
    v = np.eye(n, dtype=np.complex128)
    sweeps = 0
    status = 1
    for sweep in range(max_sweeps + 1):
        rotated = False
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0j
                for k in range(m):
                    gp = g[k, p]
                    gq = g[k, q]
                    alpha += gp.real * gp.real + gp.imag * gp.imag
                    beta += gq.real * gq.real + gq.imag * gq.imag
                    gamma += np.conj(gp) * gq
                mag = abs(gamma)
                if mag == 0.0 or mag <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                theta = (beta - alpha) / (2.0 * mag)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ph = np.conj(gamma / mag)
                r10 = -s * ph
                r11 = c * ph
                for k in range(m):
                    gp = g[k, p]
                    gq = g[k, q]
                    g[k, p] = gp * c + gq * r10
                    g[k, q] = gp * s + gq * r11
                for k in range(n):
                    vp = v[k, p]
                    vq = v[k, q]
                    v[k, p] = vp * c + vq * r10
                    v[k, q] = vp * s + vq * r11
        if not rotated:
            status = 0
            break
        sweeps += 1
    sigma = np.empty(n)
    for j in range(n):
        acc = 0.0
        for k in range(m):
            acc += g[k, j].real * g[k, j].real + g[k, j].imag * g[k, j].imag
        sigma[j] = np.sqrt(acc)
    return sigma, v, sweeps, status


@njit(cache=True, nogil=True)
def _gauss_jordan_inplace(m, out, pivot_floor):
    # m is destroyed; out must hold the identity on entry
    n = m.shape[0]
    for k in range(n):
        piv = k
        best = abs(m[k, k])
        for i in range(k + 1, n):
            cand = abs(m[i, k])
            if cand > best:
                best = cand
                piv = i
        if best <= pivot_floor:
            return 1
        if piv != k:
            for j in range(n):
                tmp = m[k, j]
                m[k, j] = m[piv, j]
                m[piv, j] = tmp
                tmp = out[k, j]
                out[k, j] = out[piv, j]
                out[piv, j] = tmp
        inv_p = 1.0 / m[k, k]
        for j in range(n):
            m[k, j] *= inv_p
            out[k, j] *= inv_p
        for i in range(n):
            if i != k:
                f = m[i, k]
                if f != 0.0:
                    for j in range(n):
                        m[i, j] -= f * m[k, j]
                        out[i, j] -= f * out[k, j]
    return 0


@njit(cache=True, nogil=True)
def gauss_jordan_inverse(a, pivot_rel):
    n = a.shape[0]
    m = a.copy()
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale = max(scale, abs(m[i, j]))
    out = np.eye(n, dtype=np.complex128)
    status = _gauss_jordan_inplace(m, out, pivot_rel * scale)
    return out, status


@njit(cache=True, nogil=True)
def pairwise_sum(terms):
    """Adjacent-pair tree reduction over the leading axis (length a power of two)."""
    buf = terms.copy()
    m = buf.shape[0]
    while m > 1:
        half = m // 2
        for k in range(half):
            buf[k] = buf[2 * k] + buf[2 * k + 1]
        m = half
    return buf[0].copy()


@njit(cache=True, nogil=True)
def resolvent_sum(a, z, w, pivot_rel):
    """sum_k w[k] * (z[k] I - a)^{-1}, reduced pairwise over k."""
    n = a.shape[0]
    nodes = z.shape[0]
    terms = np.empty((nodes, n, n), dtype=np.complex128)
    for k in range(nodes):
        m = -a.copy()
        for i in range(n):
            m[i, i] += z[k]
        scale = 0.0
        for i in range(n):
            for j in range(n):
                scale = max(scale, abs(m[i, j]))
        out = np.eye(n, dtype=np.complex128)
        if _gauss_jordan_inplace(m, out, pivot_rel * scale) != 0:
            return np.zeros((n, n), dtype=np.complex128), 1
        for i in range(n):
            for j in range(n):
                terms[k, i, j] = w[k] * out[i, j]
    return pairwise_sum(terms), 0


@njit(cache=True, nogil=True)
def fnv1a64(data):
    """64-bit FNV-1a over a uint8 array."""
    h = np.uint64(0xCBF29CE484222325)
    prime = np.uint64(0x100000001B3)
    for byte in data:
        h = (h ^ np.uint64(byte)) * prime
    return h


_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True, nogil=True)
def _uniform_at(seed, k):
    z = seed + k * _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    z = z ^ (z >> np.uint64(31))
    return float(z >> np.uint64(11)) * 2.0**-53


@njit(cache=True, nogil=True)
def gaussian_unitary(seed, counter, n):
    """Haar unitary from the complex Gaussian block at stream position ``counter``.

    Entry (i, j) takes uniforms ``2(i n + j)`` and ``2(i n + j) + 1`` through
    Box-Muller; columns are then orthonormalised by Gram-Schmidt (two passes),
    which is QR with a positive diagonal in R.
    """
    g = np.empty((n, n), dtype=np.complex128)
    k = np.uint64(counter)
    for i in range(n):
        for j in range(n):
            u1 = _uniform_at(seed, k + np.uint64(1))
            u2 = _uniform_at(seed, k + np.uint64(2))
            k += np.uint64(2)
            r = np.sqrt(-2.0 * np.log1p(-u1))
            ang = 2.0 * np.pi * u2
            g[i, j] = complex(r * np.cos(ang), r * np.sin(ang))
    for j in range(n):
        for _ in range(2):
            for i in range(j):
                dot = 0j
                for t in range(n):
                    dot += np.conj(g[t, i]) * g[t, j]
                for t in range(n):
                    g[t, j] -= dot * g[t, i]
        nrm = 0.0
        for t in range(n):
            nrm += g[t, j].real * g[t, j].real + g[t, j].imag * g[t, j].imag
        nrm = np.sqrt(nrm)
        for t in range(n):
            g[t, j] /= nrm
    return g
