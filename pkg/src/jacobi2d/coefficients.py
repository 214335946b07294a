"""Doubly periodic coefficient data for 2D Jacobi operators.

Only one fundamental cell of each sequence is stored.  Arrays are indexed
``[n - 1, m - 1]`` for the 1-based lattice labels ``n in [1, p1]`` and
``m in [1, p2]``; every public function taking ``n``, ``m``, ``alpha`` or
``beta`` uses the 1-based labels.
"""
from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import (
    IndexOutOfRange,
    NonFinite,
    NonRealDiagonal,
    PeriodTooSmall,
    ShapeMismatch,
    ValidationError,
)

MIN_PERIOD = 3
COMPLEX_KEYS = ("a0", "a1", "b0")


@dataclass(frozen=True, eq=False)
class CoefficientField:
    """Validated coefficients ``a0, a1, b0`` (complex) and ``b1`` (real).

    Construct through :func:`validate`; the arrays are read-only.
    """

    p1: int
    p2: int
    a0: np.ndarray
    a1: np.ndarray
    b0: np.ndarray
    b1: np.ndarray

    @property
    def size(self) -> int:
        return self.p1 * self.p2

    def arrays(self) -> dict[str, np.ndarray]:
        return {"a0": self.a0, "a1": self.a1, "b0": self.b0, "b1": self.b1}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoefficientField):
            return NotImplemented
        return (self.p1, self.p2) == (other.p1, other.p2) and all(
            np.array_equal(u, v) for u, v in zip(self.arrays().values(), other.arrays().values())
        )

    __hash__ = None  # type: ignore[assignment]


def _as_array(value: Any, name: str) -> np.ndarray:
    """Accept ndarrays, nested lists of numbers, or nested lists of [re, im] pairs."""
    if isinstance(value, np.ndarray):
        return value.astype(complex)
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        try:
            return np.asarray(value, dtype=complex)
        except (TypeError, ValueError):
            raise ValidationError(f"{name}: cannot interpret entries as numbers") from exc
    if arr.ndim == 3:
        if arr.shape[-1] != 2:
            raise ShapeMismatch(f"{name}: complex entries must be [re, im] pairs, got shape {arr.shape}")
        return arr[..., 0] + 1j * arr[..., 1]
    return arr.astype(complex)


def validate(raw: Mapping[str, Any]) -> CoefficientField:
    """Check raw coefficient data and return an immutable :class:`CoefficientField`.

    ``raw`` needs ``p1``, ``p2`` and the four arrays ``a0, a1, b0, b1``.  Array
    entries may be numbers, complex numbers or ``[re, im]`` pairs.  ``b1`` must
    have an imaginary part that is exactly zero.
    """
    try:
        p1 = raw["p1"]
        p2 = raw["p2"]
    except KeyError as exc:
        raise ValidationError(f"missing field {exc.args[0]!r}") from None
    if isinstance(p1, bool) or isinstance(p2, bool) or int(p1) != p1 or int(p2) != p2:
        raise ValidationError(f"periods must be integers, got p1={p1!r}, p2={p2!r}")
    p1, p2 = int(p1), int(p2)
    if p1 < MIN_PERIOD or p2 < MIN_PERIOD:
        raise PeriodTooSmall(f"PeriodTooSmall: need p1, p2 >= {MIN_PERIOD}, got p1={p1}, p2={p2}")

    arrays = {}
    for key in (*COMPLEX_KEYS, "b1"):
        if key not in raw:
            raise ValidationError(f"missing field {key!r}")
        arr = _as_array(raw[key], key)
        if arr.shape != (p1, p2):
            raise ShapeMismatch(f"ShapeMismatch: {key} has shape {arr.shape}, expected {(p1, p2)}")
        if not np.all(np.isfinite(arr)):
            raise NonFinite(f"NonFinite: {key} contains NaN or Inf")
        arrays[key] = arr

    if np.any(arrays["b1"].imag != 0):
        n, m = np.argwhere(arrays["b1"].imag != 0)[0]
        raise NonRealDiagonal(
            f"NonRealDiagonal: b1[{n + 1},{m + 1}] = {arrays['b1'][n, m]} has nonzero imaginary part"
        )
    arrays["b1"] = arrays["b1"].real.copy()

    for arr in arrays.values():
        arr.setflags(write=False)
    return CoefficientField(p1=p1, p2=p2, **arrays)


def relabel(field: CoefficientField, alpha: int, beta: int) -> CoefficientField:
    """Cyclically shift indices so that cell ``(alpha, beta)`` lands on ``(p1, p2)``."""
    p1, p2 = field.p1, field.p2
    if not (1 <= alpha <= p1 and 1 <= beta <= p2):
        raise IndexOutOfRange(f"(alpha, beta)=({alpha}, {beta}) outside [1,{p1}]x[1,{p2}]")
    # new[n, m] = old[n + alpha - p1, m + beta - p2]  (0-based, mod period)
    shifts = (p1 - alpha, p2 - beta)
    moved = {k: np.roll(v, shifts, axis=(0, 1)) for k, v in field.arrays().items()}
    return validate({"p1": p1, "p2": p2, **moved})


def example_shifted_schrodinger(p1: int, p2: int) -> CoefficientField:
    """A_n = 0 and B_n = S + S^-1 + 4n I: spectrum [2, 2 + 4 p1]."""
    _check_periods(p1, p2)
    n = np.arange(1, p1 + 1, dtype=float)
    return validate({
        "p1": p1, "p2": p2,
        "a0": np.zeros((p1, p2)),
        "a1": np.zeros((p1, p2)),
        "b0": np.ones((p1, p2)),
        "b1": np.repeat(4.0 * n[:, None], p2, axis=1),
    })


def example_diagonal_hopping(p1: int, p2: int) -> CoefficientField:
    """A_n = I and B_n = diag(4m mod 4 p2): spectrum of measure 4 p2."""
    _check_periods(p1, p2)
    m = np.arange(1, p2 + 1)
    row = (4 * m) % (4 * p2)
    return validate({
        "p1": p1, "p2": p2,
        "a0": np.zeros((p1, p2)),
        "a1": np.ones((p1, p2)),
        "b0": np.zeros((p1, p2)),
        "b1": np.tile(row.astype(float), (p1, 1)),
    })


EXAMPLES = {
    "shifted-schrodinger": example_shifted_schrodinger,
    "diagonal-hopping": example_diagonal_hopping,
}


def random_field(p1: int, p2: int, rng: np.random.Generator, scale: float = 1.0) -> CoefficientField:
    """Field with independent standard complex normal a0, a1, b0 and normal b1."""
    def cplx():
        return scale * (rng.standard_normal((p1, p2)) + 1j * rng.standard_normal((p1, p2)))

    a0, a1, b0 = cplx(), cplx(), cplx()
    b1 = scale * rng.standard_normal((p1, p2))
    return validate({"p1": p1, "p2": p2, "a0": a0, "a1": a1, "b0": b0, "b1": b1})


def _check_periods(p1: int, p2: int) -> None:
    if p1 < MIN_PERIOD or p2 < MIN_PERIOD:
        raise PeriodTooSmall(f"PeriodTooSmall: need p1, p2 >= {MIN_PERIOD}, got p1={p1}, p2={p2}")


# --- serialization -------------------------------------------------------

def to_dict(field: CoefficientField) -> dict[str, Any]:
    out: dict[str, Any] = {"p1": field.p1, "p2": field.p2}
    for key in COMPLEX_KEYS:
        arr = getattr(field, key)
        out[key] = [[[float(z.real), float(z.imag)] for z in row] for row in arr]
    out["b1"] = [[float(v) for v in row] for row in field.b1]
    return out


def dumps(field: CoefficientField) -> str:
    return json.dumps(to_dict(field), indent=1) + "\n"


def loads(text: str) -> CoefficientField:
    return validate(json.loads(text))


def load(path) -> CoefficientField:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(field: CoefficientField, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(field))
