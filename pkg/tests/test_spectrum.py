import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobi2d import example_diagonal_hopping, example_shifted_schrodinger, random_field, relabel, validate
from jacobi2d.bounds import BandEnvelope, band_envelope, norm_bound, r_min
from jacobi2d.errors import DimensionMismatch
from jacobi2d.spectrum import (
    IntervalSet,
    MomentumGrid,
    band_intervals,
    check_enclosure,
    check_sandwich,
    spectrum_estimate,
    sweep_bands,
)

from conftest import fields, zero_field

G64 = MomentumGrid(64, 64)


def example_1_exact(p1):
    """Union of [4n - 2, 4n + 2] for n = 1..p1, built by hand."""
    return [(4 * n - 2.0, 4 * n + 2.0) for n in range(1, p1 + 1)]


# --- IntervalSet ----------------------------------------------------------

def test_interval_merge_touching_and_overlap():
    s = IntervalSet([(3, 4), (0, 1), (1, 2), (3.5, 5)])
    assert s.intervals == [(0.0, 2.0), (3.0, 5.0)]
    assert s.measure == 4.0


def test_interval_gap_tolerance():
    assert len(IntervalSet([(0, 1), (1 + 1e-15, 2)])) == 2
    assert len(IntervalSet([(0, 1), (1 + 1e-15, 2)], gap_tol=1e-12)) == 1


def test_interval_rejects_reversed():
    with pytest.raises(ValueError):
        IntervalSet([(1, 0)])


@given(st.lists(st.tuples(st.floats(-100, 100), st.floats(0, 10)), max_size=30))
def test_interval_set_invariants(raw):
    ivs = [(lo, lo + w) for lo, w in raw]
    s = IntervalSet(ivs)
    for (lo, hi), (nlo, _) in zip(s.intervals, s.intervals[1:]):
        assert hi < nlo
    assert all(lo <= hi for lo, hi in s)
    assert s.measure >= 0
    assert s.measure <= math.fsum(hi - lo for lo, hi in ivs) + 1e-9
    assert s.contains(IntervalSet(ivs))


def test_example_1_exact_union_measure():
    for p1 in (3, 4, 7):
        assert IntervalSet(example_1_exact(p1)).measure == 4 * p1
        assert IntervalSet(example_1_exact(p1)).intervals == [(2.0, 2.0 + 4 * p1)]


# --- sweeps ---------------------------------------------------------------

def test_zero_field_sweep():
    f = zero_field()
    table = sweep_bands(f, MomentumGrid(4, 5))
    assert table.values.shape == (4, 5, 9)
    assert not np.any(table.values)
    assert band_intervals(table) == [(0.0, 0.0)] * 9
    s = spectrum_estimate(f, MomentumGrid(4, 4))
    assert s.intervals == [(0.0, 0.0)] and s.measure == 0.0


def test_example_1_independent_of_y(ex1):
    v = sweep_bands(ex1, G64).values
    assert np.array_equal(v, np.broadcast_to(v[:, :1, :], v.shape))


def test_example_2_independent_of_x(ex2):
    v = sweep_bands(ex2, G64).values
    assert np.array_equal(v, np.broadcast_to(v[:1, :, :], v.shape))


def test_example_1_hull(ex1):
    hull = band_intervals(sweep_bands(ex1, G64))
    assert min(lo for lo, _ in hull) == pytest.approx(2.0, abs=1e-6)
    assert max(hi for _, hi in hull) == pytest.approx(14.0, abs=1e-6)
    env = band_envelope(ex1)
    for (lo, hi), el, eu in zip(hull, env.lower, env.upper):
        assert el - 1e-9 * 15 <= lo and hi <= eu + 1e-9 * 15


@pytest.mark.parametrize("p1", [3, 4])
def test_example_1_estimate(p1):
    s = spectrum_estimate(example_shifted_schrodinger(p1, 3), G64)
    exact = IntervalSet(example_1_exact(p1))
    assert len(s) == 1
    assert s.intervals[0] == pytest.approx(exact.intervals[0], abs=1e-6)
    assert s.measure == pytest.approx(4 * p1, abs=1e-6)


@pytest.mark.parametrize("p2", [3, 5])
def test_example_2_estimate(p2):
    s = spectrum_estimate(example_diagonal_hopping(3, p2), G64)
    assert len(s) == 1
    assert s.intervals[0] == pytest.approx((-2.0, 4 * p2 - 2.0), abs=1e-6)
    assert s.measure == pytest.approx(4 * p2, abs=1e-6)


@settings(max_examples=10, deadline=None)
@given(fields(max_period=4), st.integers(2, 6))
def test_refinement_monotone(f, n):
    coarse = spectrum_estimate(f, MomentumGrid(n, n))
    fine = spectrum_estimate(f, MomentumGrid(2 * n, 2 * n))
    assert fine.measure >= coarse.measure - 1e-12
    assert fine.contains(coarse, tol=1e-12)


@settings(max_examples=10, deadline=None)
@given(fields(max_period=4, real=True))
def test_band_table_conjugation_symmetry_real(f):
    nx, ny = 6, 8
    v = sweep_bands(f, MomentumGrid(nx, ny)).values
    scale = 1 + np.max(np.abs(v))
    for k in range(nx):
        for l in range(ny):
            assert np.allclose(v[k, l], v[(nx - k) % nx, (ny - l) % ny], atol=1e-9 * scale, rtol=0)


def test_complex_coefficients_break_reflection_symmetry():
    # a complex field carries a flux, so lambda(x, y) != lambda(-x, -y) in general
    f = random_field(3, 3, np.random.default_rng(11))
    v = sweep_bands(f, MomentumGrid(6, 6)).values
    assert np.max(np.abs(v[1, 1] - v[5, 5])) > 1e-3


@settings(max_examples=5, deadline=None)
@given(fields(max_period=4), st.data())
def test_relabel_invariance(f, data):
    a = data.draw(st.integers(1, f.p1))
    b = data.draw(st.integers(1, f.p2))
    grid = MomentumGrid(12, 12)
    s = spectrum_estimate(f, grid)
    t = spectrum_estimate(relabel(f, a, b), grid)
    scale = 1 + max(abs(x) for iv in s for x in iv)
    assert len(s) == len(t)
    for u, w in zip(s, t):
        assert u == pytest.approx(w, abs=1e-8 * scale)


@settings(max_examples=10, deadline=None)
@given(fields(max_period=4))
def test_measure_below_bounds(f):
    s = spectrum_estimate(f, MomentumGrid(16, 16))
    scale = 1 + max(abs(x) for iv in s for x in iv)
    env_sum = float(np.sum(band_envelope(f).upper - band_envelope(f).lower))
    for bound in (r_min(f)[2], env_sum, norm_bound(f)):
        assert s.measure <= bound + 1e-6 * scale


# --- CSV export -----------------------------------------------------------

def test_band_csv(ex1):
    table = sweep_bands(ex1, MomentumGrid(2, 3))
    text = table.to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["x", "y", "band", "lambda"]
    assert len(rows) == 1 + 2 * 3 * 9
    keys = [(float(r[0]), float(r[1]), int(r[2])) for r in rows[1:]]
    assert keys == sorted(keys)
    assert rows[1][:3] == ["0", "0", "1"]
    # 12 significant digits
    lam = table.values[1, 2, 4]
    row = rows[1 + (1 * 3 + 2) * 9 + 4]
    assert row[3] == f"{lam:.12g}"


# --- checks ---------------------------------------------------------------

def test_sandwich_zero_field():
    rep = check_sandwich(zero_field(), 5, 0)
    assert rep.passed and rep.worst == 0.0


def test_sandwich_example_1(ex1):
    rep = check_sandwich(ex1, 100, 42)
    assert rep.passed
    assert rep.details["seed"] == 42


def test_sandwich_halved_C_fails():
    z = np.zeros((3, 3))
    b0 = np.full((3, 3), 0.7 + 0.2j)
    f = validate({"p1": 3, "p2": 3, "a0": z, "a1": z, "b0": b0, "b1": z})
    rep = check_sandwich(f, 50, 1, c_scale=0.5)
    assert not rep.passed
    assert rep.worst < -rep.tol


def test_sandwich_deterministic(rng):
    f = random_field(3, 4, rng)
    a = check_sandwich(f, 20, 9)
    b = check_sandwich(f, 20, 9)
    assert a.to_dict() == b.to_dict()


def test_enclosure_zero_field():
    f = zero_field()
    rep = check_enclosure(sweep_bands(f, MomentumGrid(3, 3)), band_envelope(f))
    assert rep.passed and rep.worst == 0.0


def test_enclosure_example_1(ex1):
    assert check_enclosure(sweep_bands(ex1, G64), band_envelope(ex1)).passed


def test_enclosure_random_field():
    f = random_field(3, 3, np.random.default_rng(5))
    assert check_enclosure(sweep_bands(f, MomentumGrid(16, 16)), band_envelope(f)).passed


def test_enclosure_detects_violation(ex1):
    env = band_envelope(ex1)
    shrunk = BandEnvelope(env.lower + 0.5, env.upper)
    assert not check_enclosure(sweep_bands(ex1, MomentumGrid(8, 8)), shrunk).passed


def test_enclosure_dimension_mismatch(ex1):
    env = band_envelope(example_shifted_schrodinger(4, 3))
    with pytest.raises(DimensionMismatch):
        check_enclosure(sweep_bands(ex1, MomentumGrid(2, 2)), env)


def test_grid_validation():
    with pytest.raises(ValueError):
        MomentumGrid(0, 3)
    g = MomentumGrid(4, 2)
    assert g.xs.tolist() == [0.0, math.pi / 2, math.pi, 3 * math.pi / 2]
    assert 2 * math.pi not in g.ys
