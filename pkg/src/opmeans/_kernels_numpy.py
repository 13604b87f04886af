"""Pure-numpy versions of the compiled kernels.

Same algorithms, same signatures and status codes as ``_kernels_numba``;
the inner element loops become row/column slices or batched updates.
"""

import numpy as np


def jacobi_eigh(h, tol, max_sweeps):
    n = h.shape[0]
    a = np.array(h, dtype=np.complex128)
    v = np.eye(n, dtype=np.complex128)
    thresh = tol * np.linalg.norm(a)
    offmask = ~np.eye(n, dtype=bool)
    sweeps = 0
    status = 1
    for sweep in range(max_sweeps + 1):
        if np.sqrt(np.sum(np.abs(a[offmask]) ** 2)) <= thresh:
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
                with np.errstate(over="ignore"):
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ph = np.conj(apq / g)
                rot = np.array([[c, s], [-s * ph, c * ph]], dtype=np.complex128)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * g
                a[q, q] = aqq + t * g
                v[:, idx] = v[:, idx] @ rot
    return a.diagonal().real.copy(), v, sweeps, status


def jacobi_svd(z, tol, max_sweeps):
    n = z.shape[1]
    g = np.array(z, dtype=np.complex128)
    v = np.eye(n, dtype=np.complex128)
    sweeps = 0
    status = 1
    for sweep in range(max_sweeps + 1):
        rotated = False
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                gp, gq = g[:, p], g[:, q]
                alpha = float(np.vdot(gp, gp).real)
                beta = float(np.vdot(gq, gq).real)
                gamma = np.vdot(gp, gq)
                mag = abs(gamma)
                if mag == 0.0 or mag <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                theta = (beta - alpha) / (2.0 * mag)
                with np.errstate(over="ignore"):
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ph = np.conj(gamma / mag)
                rot = np.array([[c, s], [-s * ph, c * ph]], dtype=np.complex128)
                idx = [p, q]
                g[:, idx] = g[:, idx] @ rot
                v[:, idx] = v[:, idx] @ rot
        if not rotated:
            status = 0
            break
        sweeps += 1
    return np.sqrt(np.sum(np.abs(g) ** 2, axis=0)), v, sweeps, status


def _batched_gauss_jordan(m, out, floors):
    """Invert a stack ``m`` of shape (B, n, n) in place into ``out``."""
    batch, n, _ = m.shape
    rows = np.arange(batch)
    for k in range(n):
        piv = k + np.argmax(np.abs(m[:, k:, k]), axis=1)
        if np.any(np.abs(m[rows, piv, k]) <= floors):
            return 1
        swap = piv != k
        if np.any(swap):
            sel = rows[swap]
            pk = piv[swap]
            for arr in (m, out):
                tmp = arr[sel, k, :].copy()
                arr[sel, k, :] = arr[sel, pk, :]
                arr[sel, pk, :] = tmp
        inv_p = 1.0 / m[:, k, k]
        m[:, k, :] *= inv_p[:, None]
        out[:, k, :] *= inv_p[:, None]
        f = m[:, :, k].copy()
        f[:, k] = 0.0
        m -= f[:, :, None] * m[:, k, None, :]
        out -= f[:, :, None] * out[:, k, None, :]
    return 0


def gauss_jordan_inverse(a, pivot_rel):
    n = a.shape[0]
    m = np.array(a, dtype=np.complex128)[None].copy()
    out = np.eye(n, dtype=np.complex128)[None].copy()
    floor = pivot_rel * np.max(np.abs(m))
    status = _batched_gauss_jordan(m, out, np.array([floor]))
    return out[0], status


def pairwise_sum(terms):
    buf = np.array(terms, copy=True)
    m = buf.shape[0]
    while m > 1:
        buf[: m // 2] = buf[0:m:2] + buf[1:m:2]
        m //= 2
    return buf[0].copy()


def resolvent_sum(a, z, w, pivot_rel):
    n = a.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    m = z[:, None, None] * eye - a[None]
    out = np.broadcast_to(eye, m.shape).copy()
    floors = pivot_rel * np.max(np.abs(m), axis=(1, 2))
    if _batched_gauss_jordan(m, out, floors) != 0:
        return np.zeros((n, n), dtype=np.complex128), 1
    return pairwise_sum(w[:, None, None] * out), 0


def fnv1a64(data):
    h = 0xCBF29CE484222325
    for byte in data.tobytes():
        h = ((h ^ byte) * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h
