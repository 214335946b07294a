"""Brillouin-zone sweeps, band intervals and numerical checks of the band bounds."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .coefficients import CoefficientField
from .eigen import hermitian_eigenvalues_batch, min_eigenvalue
from .errors import DimensionMismatch
from .fiber import assemble_C, assemble_J1, fiber_stack

DEFAULT_GRID = (64, 64)


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances used by every numerical check.

    Each is multiplied by a problem scale, stated where it is applied.
    """

    psd: float = 1e-10
    enclosure: float = 1e-9
    measure: float = 1e-6
    relabel: float = 1e-8
    merge: float = 1e-12


TOL = Tolerances()


@dataclass(frozen=True)
class MomentumGrid:
    """x_k = 2 pi k / nx and y_l = 2 pi l / ny; the endpoint 2 pi is excluded."""

    nx: int = DEFAULT_GRID[0]
    ny: int = DEFAULT_GRID[1]

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError(f"grid sizes must be positive, got {self.nx}x{self.ny}")

    @property
    def xs(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.nx) / self.nx

    @property
    def ys(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.ny) / self.ny


@dataclass(frozen=True, eq=False)
class BandTable:
    grid: MomentumGrid
    values: np.ndarray  # (nx, ny, p1*p2), ascending along the last axis

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x,y,band,lambda\n")
        xs, ys = self.grid.xs, self.grid.ys
        for k, x in enumerate(xs):
            for l, y in enumerate(ys):
                for n, lam in enumerate(self.values[k, l], start=1):
                    buf.write(f"{x:.12g},{y:.12g},{n},{lam:.12g}\n")
        return buf.getvalue()


class IntervalSet:
    """Sorted, pairwise disjoint closed intervals.

    Overlapping or touching intervals are merged, as are intervals separated
    by a gap of at most ``gap_tol``.
    """

    def __init__(self, intervals=(), gap_tol: float = 0.0):
        self.intervals: list[tuple[float, float]] = self._merge(intervals, gap_tol)

    @staticmethod
    def _merge(intervals, gap_tol: float) -> list[tuple[float, float]]:
        items = sorted((float(lo), float(hi)) for lo, hi in intervals)
        merged: list[tuple[float, float]] = []
        for lo, hi in items:
            if hi < lo:
                raise ValueError(f"empty interval [{lo}, {hi}]")
            if merged and lo - merged[-1][1] <= gap_tol:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        return merged

    @classmethod
    def union(cls, intervals, gap_tol: float = 0.0) -> "IntervalSet":
        return cls(intervals, gap_tol)

    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.intervals + other.intervals)

    @property
    def measure(self) -> float:
        return math.fsum(hi - lo for lo, hi in self.intervals)

    def contains(self, other: "IntervalSet", tol: float = 0.0) -> bool:
        """True if every interval of ``other`` lies inside one of ours (with slack ``tol``)."""
        return all(
            any(lo - tol <= olo and ohi <= hi + tol for lo, hi in self.intervals)
            for olo, ohi in other.intervals
        )

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __repr__(self) -> str:
        return f"IntervalSet({self.intervals!r})"

    def to_list(self) -> list[list[float]]:
        return [[lo, hi] for lo, hi in self.intervals]


def sweep_bands(field: CoefficientField, grid: MomentumGrid = MomentumGrid()) -> BandTable:
    X, Y = np.meshgrid(grid.xs, grid.ys, indexing="ij")
    mats = fiber_stack(field, X.ravel(), Y.ravel())
    vals = hermitian_eigenvalues_batch(mats)
    return BandTable(grid, vals.reshape(grid.nx, grid.ny, field.size))


def band_intervals(table) -> list[tuple[float, float]]:
    """[min, max] of each band over all samples; accepts a BandTable or a raw (.., .., N) array."""
    values = table.values if isinstance(table, BandTable) else np.asarray(table)
    flat = values.reshape(-1, values.shape[-1])
    return [(float(lo), float(hi)) for lo, hi in zip(flat.min(axis=0), flat.max(axis=0))]


def merge_tolerance(intervals, rel: float = TOL.merge) -> float:
    """Gaps below this are rounding noise between bands that touch exactly."""
    return rel * (1.0 + max((max(abs(lo), abs(hi)) for lo, hi in intervals), default=0.0))


def spectrum_estimate(
    field: CoefficientField, grid: MomentumGrid = MomentumGrid(), merge_rel: float = TOL.merge
) -> IntervalSet:
    """Union of band hulls over the grid; approaches the spectrum from inside as the grid refines."""
    hulls = band_intervals(sweep_bands(field, grid))
    return IntervalSet.union(hulls, merge_tolerance(hulls, merge_rel))


# --- verification ---------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    passed: bool
    worst: float   # most negative margin seen (negative means violated)
    tol: float
    details: dict

    def to_dict(self) -> dict:
        return {"pass": self.passed, "worst_margin": self.worst, "tol": self.tol, **self.details}


def sandwich_tolerance(C: np.ndarray, J1: np.ndarray, rel: float = TOL.psd) -> float:
    return rel * (1.0 + float(np.max(C, initial=0.0)) + float(np.max(np.abs(J1), initial=0.0)))


def check_sandwich(
    field: CoefficientField,
    sample_count: int = 100,
    seed: int = 0,
    rel_tol: float = TOL.psd,
    c_scale: float = 1.0,
) -> CheckReport:
    """Sample (x, y) uniformly and test that C - J1 and C + J1 are positive semidefinite.

    ``c_scale`` multiplies C; values below 1 are for demonstrating that the
    bound is tight enough to fail when weakened.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    rng = np.random.default_rng(seed)
    C = c_scale * assemble_C(field).values
    worst = math.inf
    worst_at = None
    passed = True
    tol_max = 0.0
    for x, y in rng.uniform(0.0, 2.0 * math.pi, size=(sample_count, 2)):
        J1 = assemble_J1(field, x, y).entries
        tol = sandwich_tolerance(C, J1, rel_tol)
        tol_max = max(tol_max, tol)
        for sign in (-1.0, 1.0):
            lam = min_eigenvalue(np.diag(C).astype(complex) + sign * J1)
            if lam < worst:
                worst, worst_at = lam, (float(x), float(y), "C+J1" if sign > 0 else "C-J1")
            if lam < -tol:
                passed = False
    return CheckReport(
        "sandwich", passed, float(worst), tol_max,
        {"samples": sample_count, "seed": seed, "worst_at": list(worst_at)},
    )


def check_enclosure(table: BandTable, envelope, rel_tol: float = TOL.enclosure) -> CheckReport:
    """Every sampled band value must lie in [lower[n] - tol, upper[n] + tol]."""
    values = table.values
    lower, upper = np.asarray(envelope.lower), np.asarray(envelope.upper)
    if values.shape[-1] != lower.shape[0] or lower.shape != upper.shape:
        raise DimensionMismatch(
            f"DimensionMismatch: table has {values.shape[-1]} bands, envelope has {lower.shape[0]}/{upper.shape[0]}"
        )
    tol = rel_tol * (1.0 + float(np.max(np.abs(values), initial=0.0)))
    margin = np.minimum(values - lower, upper - values)
    worst = float(np.min(margin)) if margin.size else 0.0
    k, l, n = np.unravel_index(int(np.argmin(margin)), margin.shape) if margin.size else (0, 0, 0)
    return CheckReport(
        "enclosure", bool(worst >= -tol), worst, tol,
        {"grid": [table.grid.nx, table.grid.ny], "worst_at": [int(k), int(l), int(n) + 1]},
    )
