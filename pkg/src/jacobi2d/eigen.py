"""Dense Hermitian eigenvalues: Householder tridiagonalization + implicit QL.

The reduction runs vectorized over a stack of matrices so that a whole
Brillouin-zone sweep is reduced in one pass; the tridiagonal QL iteration
then runs per matrix on Python floats.  Only eigenvalues are produced.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import NonFinite, NotHermitian

HERMITIAN_RTOL = 1e-12
MAX_QL_SWEEPS = 60


def _check(M: np.ndarray) -> None:
    if M.ndim < 2 or M.shape[-1] != M.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NonFinite("matrix contains NaN or Inf")
    scale = np.max(np.abs(M), axis=(-2, -1), initial=0.0)
    asym = np.max(np.abs(M - np.conj(np.swapaxes(M, -1, -2))), axis=(-2, -1), initial=0.0)
    if np.any(asym > HERMITIAN_RTOL * scale):
        raise NotHermitian(f"matrix is not Hermitian (max asymmetry {np.max(asym):.3e})")


def tridiagonalize(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unitary reduction of Hermitian matrices to real symmetric tridiagonal form.

    ``M`` has shape (..., n, n).  Returns ``(d, e)`` with d of shape (..., n)
    and the nonnegative off-diagonal e of shape (..., n-1).
    """
    A = np.array(M, dtype=complex, copy=True)
    batch_shape = A.shape[:-2]
    n = A.shape[-1]
    A = A.reshape((-1, n, n))
    for k in range(n - 2):
        x = A[:, k + 1:, k]                                   # (B, r)
        xnorm = np.sqrt(np.sum(x.real**2 + x.imag**2, axis=1))
        x0 = x[:, 0]
        ax0 = np.abs(x0)
        ph = np.where(ax0 > 0, x0 / np.where(ax0 > 0, ax0, 1.0), 1.0)
        alpha = -ph * xnorm
        v = x.copy()
        v[:, 0] = x0 - alpha
        vv = 2.0 * xnorm * (xnorm + ax0)
        active = xnorm > 0
        tau = np.where(active, 2.0 / np.where(active, vv, 1.0), 0.0)

        S = A[:, k + 1:, k + 1:]
        p = tau[:, None] * np.einsum("bij,bj->bi", S, v)
        K = 0.5 * tau * np.einsum("bi,bi->b", v.conj(), p).real
        w = p - K[:, None] * v
        S -= v[:, :, None] * w.conj()[:, None, :] + w[:, :, None] * v.conj()[:, None, :]
        newcol = np.zeros_like(x)
        newcol[:, 0] = np.where(active, alpha, x0)
        A[:, k + 1:, k] = newcol
        A[:, k, k + 1:] = newcol.conj()
    d = np.real(np.diagonal(A, axis1=1, axis2=2)).copy()
    e = np.abs(np.diagonal(A, offset=-1, axis1=1, axis2=2))
    return d.reshape(batch_shape + (n,)), e.reshape(batch_shape + (max(n - 1, 0),))


def tridiagonal_eigenvalues(d, e) -> list[float]:
    """Eigenvalues (ascending) of the symmetric tridiagonal matrix with
    diagonal ``d`` and off-diagonal ``e``, by implicit-shift QL."""
    d = [float(v) for v in d]
    n = len(d)
    e = [float(v) for v in e] + [0.0]
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= 2.220446049250313e-16 * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > MAX_QL_SWEEPS:
                raise ArithmeticError("implicit QL failed to converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    d.sort()
    return d


def hermitian_eigenvalues_batch(Ms: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues for a stack of Hermitian matrices, shape (..., n)."""
    Ms = np.asarray(Ms)
    _check(Ms)
    d, e = tridiagonalize(Ms)
    n = Ms.shape[-1]
    flat_d = d.reshape(-1, n)
    flat_e = e.reshape(flat_d.shape[0], max(n - 1, 0))
    out = np.array([tridiagonal_eigenvalues(dk, ek) for dk, ek in zip(flat_d, flat_e)], dtype=float)
    return out.reshape(d.shape)


def hermitian_eigenvalues(M) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending, with multiplicity."""
    M = np.asarray(M)
    if M.ndim != 2:
        raise ValueError(f"expected a single matrix, got shape {M.shape}")
    return hermitian_eigenvalues_batch(M[None])[0]


def min_eigenvalue(M) -> float:
    return float(hermitian_eigenvalues(M)[0])
