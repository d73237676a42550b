"""Hot numeric kernels: numba fast path with a pure-NumPy fallback.

Two kernels dominate runtime: the cyclic Jacobi eigensolver for symmetric
indefinite Gram matrices and the fixed-step RK4 integrator for the radial
eigenfunction equation.  Backend selection happens once at import:

* ``HARMONIC_EMBED_PURE_NUMPY=1`` in the environment forces the NumPy path;
* otherwise numba is used when importable (falling back silently if not).

Both implementations of each kernel stay importable under explicit names so
tests and ``benchmarks/bench_kernels.py`` can compare them.  The env flag
changes the compute backend only; results agree to floating-point roundoff
and all public interfaces are unchanged.
"""

from __future__ import annotations

import math
import os

import numpy as np

BLOWUP_LIMIT = 1e12


class JacobiConvergenceError(RuntimeError):
    """Cyclic Jacobi failed to reach the off-diagonal target within max_sweeps."""


def _jacobi_cyclic_scalar(a, v, tol, max_sweeps):
    # In-place cyclic Jacobi; returns sweeps used, or -1 if not converged.
    # Rotation convention: A <- J^T A J with J the (p,q) Givens rotation,
    # phi = 0.5 atan2(2 a_pq, a_qq - a_pp) zeroing a_pq; V accumulates V <- V J.
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        if math.sqrt(off) <= tol:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                phi = 0.5 * math.atan2(2.0 * apq, a[q, q] - a[p, p])
                c = math.cos(phi)
                s = math.sin(phi)
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - s * aiq
                    a[i, q] = s * aip + c * aiq
                for i in range(n):
                    api = a[p, i]
                    aqi = a[q, i]
                    a[p, i] = c * api - s * aqi
                    a[q, i] = s * api + c * aqi
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - s * viq
                    v[i, q] = s * vip + c * viq
    return -1


def _jacobi_cyclic_vectorized(a, v, tol, max_sweeps):
    # Same rotation schedule as the scalar kernel, with whole-row/column
    # NumPy updates.  Kept as the fallback when numba is unavailable.
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= tol:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                phi = 0.5 * math.atan2(2.0 * apq, a[q, q] - a[p, p])
                c = math.cos(phi)
                s = math.sin(phi)
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return -1


def _rk4_radial_loop(f0, df0, r0, step, nsteps, half_nm1, half_b, lam):
    # Classical RK4 for f'' + P(r) f' + lam f = 0 with
    # P(r) = half_nm1 * coth(r/2) + half_b * tanh(r/2), r > 0 throughout.
    # Returns (f values, f' values, steps completed); stops early once
    # |f| leaves [0, BLOWUP_LIMIT].
    fs = np.empty(nsteps + 1)
    dfs = np.empty(nsteps + 1)
    f = f0
    g = df0
    fs[0] = f
    dfs[0] = g
    for i in range(nsteps):
        r = r0 + i * step
        x = 0.5 * r
        p1 = half_nm1 * math.cosh(x) / math.sinh(x) + half_b * math.tanh(x)
        x = 0.5 * (r + 0.5 * step)
        p2 = half_nm1 * math.cosh(x) / math.sinh(x) + half_b * math.tanh(x)
        x = 0.5 * (r + step)
        p3 = half_nm1 * math.cosh(x) / math.sinh(x) + half_b * math.tanh(x)
        k1f = g
        k1g = -p1 * g - lam * f
        y2f = f + 0.5 * step * k1f
        y2g = g + 0.5 * step * k1g
        k2f = y2g
        k2g = -p2 * y2g - lam * y2f
        y3f = f + 0.5 * step * k2f
        y3g = g + 0.5 * step * k2g
        k3f = y3g
        k3g = -p2 * y3g - lam * y3f
        y4f = f + step * k3f
        y4g = g + step * k3g
        k4f = y4g
        k4g = -p3 * y4g - lam * y4f
        f = f + step * (k1f + 2.0 * k2f + 2.0 * k3f + k4f) / 6.0
        g = g + step * (k1g + 2.0 * k2g + 2.0 * k3g + k4g) / 6.0
        fs[i + 1] = f
        dfs[i + 1] = g
        if not abs(f) < BLOWUP_LIMIT:
            return fs, dfs, i + 1
    return fs, dfs, nsteps


_FORCE_NUMPY = os.environ.get("HARMONIC_EMBED_PURE_NUMPY", "0").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

_jacobi_numba = None
_rk4_numba = None
if not _FORCE_NUMPY:
    try:
        from numba import njit
    except ImportError:
        pass
    else:
        _jacobi_numba = njit(cache=True)(_jacobi_cyclic_scalar)
        _rk4_numba = njit(cache=True)(_rk4_radial_loop)

BACKEND = "numba" if _jacobi_numba is not None else "numpy"
_jacobi_cycle = _jacobi_numba if _jacobi_numba is not None else _jacobi_cyclic_vectorized
_rk4_kernel = _rk4_numba if _rk4_numba is not None else _rk4_radial_loop


def _jacobi_eigh_with(cycle, matrix, rel_tol=1e-13, max_sweeps=60):
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix must be symmetric")
    n = a.shape[0]
    v = np.eye(n)
    fro = math.sqrt(float(np.sum(a * a)))
    if n == 1 or fro == 0.0:
        return np.diag(a).copy(), v, 0
    sweeps = cycle(a, v, rel_tol * fro, max_sweeps)
    if sweeps < 0:
        raise JacobiConvergenceError(
            f"off-diagonal norm above {rel_tol:g}*||A||_F after {max_sweeps} sweeps"
        )
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order], sweeps


def jacobi_eigh(matrix, rel_tol=1e-13, max_sweeps=60):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvector columns in matching order,
    sweeps used).  Convergence target: off-diagonal Frobenius norm at or
    below rel_tol * ||A||_F.
    """
    return _jacobi_eigh_with(_jacobi_cycle, matrix, rel_tol, max_sweeps)


def jacobi_eigh_numpy(matrix, rel_tol=1e-13, max_sweeps=60):
    return _jacobi_eigh_with(_jacobi_cyclic_vectorized, matrix, rel_tol, max_sweeps)


def jacobi_eigh_numba(matrix, rel_tol=1e-13, max_sweeps=60):
    if _jacobi_numba is None:
        raise RuntimeError("numba backend unavailable (env flag set or numba missing)")
    return _jacobi_eigh_with(_jacobi_numba, matrix, rel_tol, max_sweeps)


def rk4_radial(f0, df0, r0, step, nsteps, half_nm1, half_b, lam):
    """Selected-backend RK4 march; see ``_rk4_radial_loop`` for the contract."""
    return _rk4_kernel(
        float(f0), float(df0), float(r0), float(step), int(nsteps),
        float(half_nm1), float(half_b), float(lam),
    )


def rk4_radial_numpy(f0, df0, r0, step, nsteps, half_nm1, half_b, lam):
    return _rk4_radial_loop(
        float(f0), float(df0), float(r0), float(step), int(nsteps),
        float(half_nm1), float(half_b), float(lam),
    )


def rk4_radial_numba(f0, df0, r0, step, nsteps, half_nm1, half_b, lam):
    if _rk4_numba is None:
        raise RuntimeError("numba backend unavailable (env flag set or numba missing)")
    return _rk4_numba(
        float(f0), float(df0), float(r0), float(step), int(nsteps),
        float(half_nm1), float(half_b), float(lam),
    )


def warmup() -> str:
    """Force JIT compilation (no-op on the NumPy path); returns the backend name."""
    a = np.array([[2.0, 1.0], [1.0, 2.0]])
    jacobi_eigh(a)
    rk4_radial(1.0, 0.0, 0.5, 0.01, 4, 1.0, 0.5, -3.0)
    return BACKEND
