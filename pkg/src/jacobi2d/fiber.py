"""Floquet-Bloch fiber matrices J(x, y), the splitting J = J0 + J1, and C.

Flattened index of lattice site (n, m) inside a fiber is ``(n-1)*p2 + (m-1)``.
Block (n+1, n) of J carries A_hat_n(x) and block (n, n+1) its adjoint; the
corner block (1, p1) carries exp(iy) A_hat_{p1}(x).  Every off-diagonal entry
is written together with its conjugate from a single source value, so all
assembled matrices are exactly Hermitian.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import CoefficientField
from .errors import IndexOutOfRange


@dataclass(frozen=True, eq=False)
class FiberMatrix:
    entries: np.ndarray
    quasimomentum: tuple[float, float] | None = None

    @property
    def size(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class ComparisonDiagonal:
    """Diagonal of C, flattened in block order C_1, ..., C_p1."""

    values: np.ndarray

    @property
    def trace(self) -> float:
        return math.fsum(self.values)

    def matrix(self) -> np.ndarray:
        return np.diag(self.values).astype(complex)


def phase(t: float) -> complex:
    # cos/sin rather than cmath.exp so that phase(-t) == conj(phase(t)) bit for bit
    return complex(math.cos(t), math.sin(t))


def _check_layer(field: CoefficientField, n: int) -> None:
    if not 1 <= n <= field.p1:
        raise IndexOutOfRange(f"layer n={n} outside [1, {field.p1}]")


def _jacobi_block(off: np.ndarray, diag: np.ndarray, x: float | None) -> np.ndarray:
    """p2 x p2 matrix with ``diag`` on the diagonal, ``off[m]`` at (m+1, m) and
    conj(off[m]) at (m, m+1).  With ``x`` given, the periodic corner pair is
    exp(ix) off[p2] at (1, p2) and its conjugate at (p2, 1); with ``x=None``
    the corners are left zero."""
    p2 = diag.shape[0]
    out = np.zeros((p2, p2), dtype=complex)
    idx = np.arange(p2)
    out[idx, idx] = diag
    out[idx[1:], idx[:-1]] = off[:-1]
    out[idx[:-1], idx[1:]] = np.conj(off[:-1])
    if x is not None:
        corner = phase(x) * off[-1]
        out[0, p2 - 1] = corner
        out[p2 - 1, 0] = corner.conjugate()
    return out


def assemble_A_hat(field: CoefficientField, n: int, x: float) -> np.ndarray:
    _check_layer(field, n)
    return _jacobi_block(field.a0[n - 1], field.a1[n - 1], x)


def assemble_B_hat(field: CoefficientField, n: int, x: float) -> np.ndarray:
    _check_layer(field, n)
    return _jacobi_block(field.b0[n - 1], field.b1[n - 1].astype(complex), x)


def _place_blocks(field: CoefficientField, x: float | None, y: float | None) -> np.ndarray:
    p1, p2 = field.p1, field.p2
    J = np.zeros((p1 * p2, p1 * p2), dtype=complex)

    def blk(i: int) -> slice:
        return slice((i - 1) * p2, i * p2)

    for n in range(1, p1 + 1):
        J[blk(n), blk(n)] = _jacobi_block(field.b0[n - 1], field.b1[n - 1].astype(complex), x)
    for n in range(1, p1):
        A = _jacobi_block(field.a0[n - 1], field.a1[n - 1], x)
        J[blk(n + 1), blk(n)] = A
        J[blk(n), blk(n + 1)] = A.conj().T
    if y is not None:
        corner = phase(y) * _jacobi_block(field.a0[p1 - 1], field.a1[p1 - 1], x)
        J[blk(1), blk(p1)] = corner
        J[blk(p1), blk(1)] = corner.conj().T
    return J


def assemble_J(field: CoefficientField, x: float, y: float) -> FiberMatrix:
    """Fiber matrix J(x, y) of size p1*p2."""
    return FiberMatrix(_place_blocks(field, x, y), (float(x), float(y)))


def assemble_J0(field: CoefficientField) -> FiberMatrix:
    """J with every quasimomentum-carrying corner entry removed."""
    return FiberMatrix(_place_blocks(field, None, None))


def assemble_J1(field: CoefficientField, x: float, y: float) -> FiberMatrix:
    return FiberMatrix(assemble_J(field, x, y).entries - assemble_J0(field).entries, (float(x), float(y)))


def assemble_C(field: CoefficientField) -> ComparisonDiagonal:
    """Diagonal comparison matrix C with -C <= J1(x, y) <= C for all (x, y).

    |M| of the corner-only matrices is diag(|corner|, 0, ..., 0, |corner|),
    so no matrix square root is needed.
    """
    p1, p2 = field.p1, field.p2
    b0_last = np.abs(field.b0[:, p2 - 1])
    a0_last = np.abs(field.a0[:, p2 - 1])
    top_a0 = np.abs(field.a0[p1 - 1])
    D = np.abs(field.a1[p1 - 1]) + top_a0 + np.roll(top_a0, 1)

    blocks = np.zeros((p1, p2))
    for n in range(1, p1 + 1):
        c = b0_last[n - 1]
        if n < p1:
            c += a0_last[n - 1]
        if n > 1:
            c += a0_last[n - 2]
        blocks[n - 1, 0] = c
        blocks[n - 1, p2 - 1] = c
    blocks[0] += D
    blocks[p1 - 1] += D
    return ComparisonDiagonal(blocks.reshape(-1))


def fiber_stack(field: CoefficientField, xs, ys) -> np.ndarray:
    """Array of J(x_i, y_i) for paired sequences ``xs``, ``ys``; shape (k, N, N)."""
    return np.stack([_place_blocks(field, float(x), float(y)) for x, y in zip(xs, ys)])
