"""Band envelopes and upper bounds on the Lebesgue measure of the spectrum.

Sums over coefficient moduli use :func:`math.fsum`.  Being correctly rounded,
it is independent of summation order, so r_value is bit-identical under
relabeling of the cell.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import CoefficientField, relabel
from .eigen import hermitian_eigenvalues
from .errors import IndexOutOfRange, NotDiagonalHopping
from .fiber import assemble_C, assemble_J0


@dataclass(frozen=True, eq=False)
class BandEnvelope:
    lower: np.ndarray  # eigenvalues of J0 - C
    upper: np.ndarray  # eigenvalues of J0 + C

    def to_dict(self) -> dict:
        return {"lower": self.lower.tolist(), "upper": self.upper.tolist(),
                "envelope_sum": envelope_sum(self)}


@dataclass
class BoundReport:
    r_table: np.ndarray
    r_min: float
    argmin_alpha: int
    argmin_beta: int
    norm_bound: float
    schrodinger_bound: float | None
    envelope_sum: float

    def to_dict(self) -> dict:
        return {
            "r_table": self.r_table.tolist(),
            "r_min": {"alpha": self.argmin_alpha, "beta": self.argmin_beta, "value": self.r_min},
            "norm_bound": self.norm_bound,
            "schrodinger_bound": self.schrodinger_bound,
            "envelope_sum": self.envelope_sum,
        }


def band_envelope(field: CoefficientField) -> BandEnvelope:
    """lambda_n^- <= lambda_n(x, y) <= lambda_n^+ for every quasimomentum."""
    J0 = assemble_J0(field).entries
    C = np.diag(assemble_C(field).values)
    return BandEnvelope(hermitian_eigenvalues(J0 - C), hermitian_eigenvalues(J0 + C))


def envelope_sum(envelope: BandEnvelope) -> float:
    return math.fsum(envelope.upper) - math.fsum(envelope.lower)


def r_value(field: CoefficientField, alpha: int, beta: int) -> float:
    """Measure bound attached to cell (alpha, beta), 1-based."""
    if not (1 <= alpha <= field.p1 and 1 <= beta <= field.p2):
        raise IndexOutOfRange(f"(alpha, beta)=({alpha}, {beta}) outside [1,{field.p1}]x[1,{field.p2}]")
    i, j = alpha - 1, beta - 1
    a0 = np.abs(field.a0)
    return float(
        4.0 * math.fsum(np.abs(field.b0[:, j]))
        + 8.0 * math.fsum(a0[:, j])
        - 8.0 * a0[i, j]
        + 8.0 * math.fsum(a0[i, :])
        + 4.0 * math.fsum(np.abs(field.a1[i, :]))
    )


def r_table(field: CoefficientField) -> np.ndarray:
    return np.array([[r_value(field, a, b) for b in range(1, field.p2 + 1)]
                     for a in range(1, field.p1 + 1)])


def r_min(field: CoefficientField) -> tuple[int, int, float]:
    """(alpha, beta, value) minimizing r over one cell; ties go to the smallest (alpha, beta)."""
    best = (1, 1, r_value(field, 1, 1))
    for a in range(1, field.p1 + 1):
        for b in range(1, field.p2 + 1):
            v = r_value(field, a, b)
            if v < best[2]:
                best = (a, b, v)
    return best


def norm_bound(field: CoefficientField) -> float:
    """Twice an explicit bound on the operator norm."""
    a_part = 8.0 * np.abs(field.a0).max(axis=1) + 4.0 * np.abs(field.a1).max(axis=1)
    b_part = 4.0 * np.abs(field.b0).max(axis=1) + 2.0 * np.abs(field.b1).max(axis=1)
    return float(a_part.max() + b_part.max())


def schrodinger_bound(field: CoefficientField) -> float:
    """Measure bound for diagonal inter-layer coupling (a0 identically zero)."""
    if np.any(field.a0 != 0):
        raise NotDiagonalHopping("NotDiagonalHopping: schrodinger_bound needs a0 == 0 everywhere")
    col = min(math.fsum(np.abs(field.b0[:, j])) for j in range(field.p2))
    row = min(math.fsum(np.abs(field.a1[i, :])) for i in range(field.p1))
    return 4.0 * col + 4.0 * row


def sharpened(field: CoefficientField) -> CoefficientField:
    """Relabel so the minimizing cell sits at (p1, p2); its envelope sum is then r_min."""
    alpha, beta, _ = r_min(field)
    return relabel(field, alpha, beta)


def bound_report(field: CoefficientField, sharp: bool = False) -> BoundReport:
    alpha, beta, value = r_min(field)
    env_field = relabel(field, alpha, beta) if sharp else field
    try:
        schrod = schrodinger_bound(field)
    except NotDiagonalHopping:
        schrod = None
    return BoundReport(
        r_table=r_table(field),
        r_min=value,
        argmin_alpha=alpha,
        argmin_beta=beta,
        norm_bound=norm_bound(field),
        schrodinger_bound=schrod,
        envelope_sum=envelope_sum(band_envelope(env_field)),
    )
