"""Brute-force check of the Floquet-Bloch decomposition on a finite torus.

The lattice operator is restricted to N1 periods in the n direction and N2
periods in the m direction with periodic identification.  Its spectrum is
exactly the pooled spectra of the fibers J(x, y) at x = 2*pi*k/N2,
y = 2*pi*l/N1.  The torus side is assembled site by site from the
coefficients and diagonalized with LAPACK (numpy.linalg.eigvalsh), so it
shares neither matrix assembly nor eigensolver with the fiber side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .coefficients import CoefficientField
from .eigen import hermitian_eigenvalues_batch
from .errors import DimensionCap
from .fiber import fiber_stack
from .spectrum import IntervalSet, band_intervals, merge_tolerance

DEFAULT_DIMENSION_CAP = 4096
DEFAULT_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class TorusOperator:
    entries: np.ndarray
    N1: int
    N2: int
    p1: int
    p2: int

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]


@dataclass
class DirectIntegralReport:
    passed: bool
    max_abs_diff: float
    tol: float
    dimensions: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "max_abs_diff": self.max_abs_diff,
            "tol": self.tol,
            "dimensions": self.dimensions,
        }


def build_torus(field: CoefficientField, N1: int, N2: int, cap: int = DEFAULT_DIMENSION_CAP) -> TorusOperator:
    """Dense matrix of the operator on the (p1*N1) x (p2*N2) periodic lattice.

    Site (n, m), 0-based, has flat index ``n*L2 + m`` with ``L2 = p2*N2``.
    Layer n couples to layer n+1 through the Jacobi matrix A_n: the site pair
    ((n+1, m), (n, m)) carries a1[n, m], ((n+1, m+1), (n, m)) carries a0[n, m]
    and ((n+1, m), (n, m+1)) carries conj(a0[n, m]).  Within a layer
    ((n, m+1), (n, m)) carries b0[n, m].  Indices of a0, a1, b0, b1 are
    reduced into the fundamental cell.
    """
    if N1 < 1 or N2 < 1:
        raise ValueError("torus period counts must be >= 1")
    p1, p2 = field.p1, field.p2
    L1, L2 = p1 * N1, p2 * N2
    dim = L1 * L2
    if dim > cap:
        raise DimensionCap(f"DimensionCap: torus dimension {dim} exceeds cap {cap}")

    T = np.zeros((dim, dim), dtype=complex)

    def site(n: int, m: int) -> int:
        return (n % L1) * L2 + (m % L2)

    def couple(i: int, j: int, value: complex) -> None:
        # value at (i, j), its conjugate at (j, i)
        T[i, j] += value
        T[j, i] += np.conj(value)

    for n in range(L1):
        cn = n % p1
        for m in range(L2):
            cm = m % p2
            here = site(n, m)
            T[here, here] += field.b1[cn, cm]
            couple(site(n, m + 1), here, field.b0[cn, cm])
            couple(site(n + 1, m), here, field.a1[cn, cm])
            couple(site(n + 1, m + 1), here, field.a0[cn, cm])
            couple(site(n + 1, m), site(n, m + 1), np.conj(field.a0[cn, cm]))
    return TorusOperator(T, N1, N2, p1, p2)


def torus_eigenvalues(torus: TorusOperator) -> np.ndarray:
    return np.linalg.eigvalsh(torus.entries)


def discrete_momenta(N1: int, N2: int) -> tuple[np.ndarray, np.ndarray]:
    """(xs, ys) of all fibers present on the torus, ordered by (k, l)."""
    x = 2.0 * math.pi * np.arange(N2) / N2
    y = 2.0 * math.pi * np.arange(N1) / N1
    X, Y = np.meshgrid(x, y, indexing="ij")
    return X.ravel(), Y.ravel()


def fiber_eigenvalues(field: CoefficientField, N1: int, N2: int) -> np.ndarray:
    xs, ys = discrete_momenta(N1, N2)
    return hermitian_eigenvalues_batch(fiber_stack(field, xs, ys))


def verify_direct_integral(
    field: CoefficientField,
    N1: int,
    N2: int,
    rtol: float = DEFAULT_RTOL,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> DirectIntegralReport:
    """Compare sorted torus eigenvalues with the pooled sorted fiber eigenvalues.

    Passes iff every paired difference is at most ``rtol * (1 + ||T||_F)``.
    """
    torus = build_torus(field, N1, N2, cap=cap)
    s_torus = np.sort(torus_eigenvalues(torus))
    s_fiber = np.sort(fiber_eigenvalues(field, N1, N2).ravel())
    tol = rtol * (1.0 + float(np.linalg.norm(torus.entries)))
    diff = float(np.max(np.abs(s_torus - s_fiber))) if s_torus.size else 0.0
    return DirectIntegralReport(
        passed=bool(diff <= tol),
        max_abs_diff=diff,
        tol=tol,
        dimensions={"torus": torus.dimension, "fibers": N1 * N2, "fiber_size": field.size,
                    "N1": N1, "N2": N2},
    )


def sector_matrix(torus: TorusOperator, x: float, y: float) -> np.ndarray:
    """Compression of the torus onto its Bloch sector with phases (x, y).

    The sector is spanned by ``u_s(n, m) = exp(-i*(x*(m // p2) + y*(n // p1)))``
    supported on the orbit of cell site s.  The result is a p1*p2 matrix in
    the fiber's site ordering; x must be a multiple of 2*pi/N2 and y of
    2*pi/N1 for the sector to be invariant.
    """
    p1, p2, N1, N2 = torus.p1, torus.p2, torus.N1, torus.N2
    L2 = p2 * N2
    n = np.arange(p1 * N1)
    m = np.arange(L2)
    cell = ((n % p1)[:, None] * p2 + (m % p2)[None, :]).ravel()
    cell_n = np.repeat(n // p1, L2)
    cell_m = np.tile(m // p2, p1 * N1)
    U = np.zeros((torus.dimension, p1 * p2), dtype=complex)
    U[np.arange(torus.dimension), cell] = np.exp(-1j * (x * cell_m + y * cell_n))
    U /= math.sqrt(N1 * N2)
    return U.conj().T @ torus.entries @ U


def sector_eigenvalues(torus: TorusOperator) -> np.ndarray:
    """LAPACK eigenvalues of every sector, shape (N2*N1, p1*p2), ordered as discrete_momenta."""
    out = []
    for x, y in zip(*discrete_momenta(torus.N1, torus.N2)):
        H = sector_matrix(torus, x, y)
        out.append(np.linalg.eigvalsh(0.5 * (H + H.conj().T)))
    return np.array(out)


def brute_measure(field: CoefficientField, N1: int, N2: int, cap: int = DEFAULT_DIMENSION_CAP) -> IntervalSet:
    """Hull-union of band values at the torus momenta, from the torus alone."""
    torus = build_torus(field, N1, N2, cap=cap)
    hulls = band_intervals(sector_eigenvalues(torus))
    return IntervalSet.union(hulls, merge_tolerance(hulls))
