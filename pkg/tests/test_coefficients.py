import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobi2d import coefficients as coef
from jacobi2d.coefficients import example_diagonal_hopping, example_shifted_schrodinger, relabel, validate
from jacobi2d.errors import IndexOutOfRange, NonFinite, NonRealDiagonal, PeriodTooSmall, ShapeMismatch

from conftest import fields


def raw(p1=3, p2=3, **over):
    z = np.zeros((p1, p2))
    d = {"p1": p1, "p2": p2, "a0": z, "a1": z, "b0": z, "b1": z}
    d.update(over)
    return d


def test_zero_field_is_valid():
    f = validate(raw())
    assert (f.p1, f.p2) == (3, 3)
    assert not np.any(f.a0) and not np.any(f.b1)


@pytest.mark.parametrize("p1,p2", [(2, 3), (3, 2), (1, 7)])
def test_period_too_small(p1, p2):
    with pytest.raises(PeriodTooSmall):
        validate(raw(p1, p2))


def test_complex_b1_rejected():
    b1 = np.zeros((3, 3), dtype=complex)
    b1[1, 2] = 1 + 2j
    with pytest.raises(NonRealDiagonal):
        validate(raw(b1=b1))


def test_b1_pairs_in_json_form_rejected():
    b1 = [[[0.0, 0.0]] * 3] * 3
    b1[0] = [[0.0, 0.0], [0.0, 1e-300], [0.0, 0.0]]
    with pytest.raises(NonRealDiagonal):
        validate(raw(b1=b1))


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        validate(raw(a1=np.zeros((3, 4))))


@pytest.mark.parametrize("bad", [np.nan, np.inf])
def test_non_finite(bad):
    a0 = np.zeros((3, 3), dtype=complex)
    a0[0, 0] = complex(0, bad)
    with pytest.raises(NonFinite):
        validate(raw(a0=a0))


def test_arrays_are_read_only(ex1):
    with pytest.raises(ValueError):
        ex1.b1[0, 0] = 5.0


def test_example_1_layout():
    f = example_shifted_schrodinger(3, 3)
    assert np.array_equal(f.b1, [[4, 4, 4], [8, 8, 8], [12, 12, 12]])
    assert np.all(f.b0 == 1)
    assert not np.any(f.a0) and not np.any(f.a1)


def test_example_2_layout():
    f = example_diagonal_hopping(3, 3)
    assert np.array_equal(f.b1, [[4, 8, 0]] * 3)
    assert np.all(f.a1 == 1)
    assert not np.any(f.a0) and not np.any(f.b0)


@pytest.mark.parametrize("builder", [example_shifted_schrodinger, example_diagonal_hopping])
def test_example_builders_reject_small_periods(builder):
    with pytest.raises(PeriodTooSmall):
        builder(2, 5)


@given(st.integers(3, 8), st.integers(3, 8))
def test_example_builders_valid_for_all_periods(p1, p2):
    for builder in (example_shifted_schrodinger, example_diagonal_hopping):
        f = builder(p1, p2)
        assert f == validate(coef.to_dict(f))
        assert f.b1.dtype == float


def test_relabel_identity(ex1):
    assert relabel(ex1, 3, 3) == ex1


def test_relabel_rotates_rows(ex1):
    f = relabel(ex1, 1, 1)
    # row 1 becomes row p1
    assert np.array_equal(f.b1[:, 0], [8, 12, 4])
    assert np.array_equal(f.b1[-1], ex1.b1[0])


def test_relabel_moves_chosen_cell_to_corner(rng):
    f = coef.random_field(4, 5, rng)
    for a in range(1, 5):
        for b in range(1, 6):
            g = relabel(f, a, b)
            assert g.a0[-1, -1] == f.a0[a - 1, b - 1]
            assert g.b1[-1, -1] == f.b1[a - 1, b - 1]


def test_relabel_out_of_range(ex1):
    with pytest.raises(IndexOutOfRange):
        relabel(ex1, 0, 1)
    with pytest.raises(IndexOutOfRange):
        relabel(ex1, 1, 4)


@settings(max_examples=50)
@given(fields(), st.data())
def test_relabel_inverse(f, data):
    a = data.draw(st.integers(1, f.p1))
    b = data.draw(st.integers(1, f.p2))
    inv_a = (f.p1 - a - 1) % f.p1 + 1
    inv_b = (f.p2 - b - 1) % f.p2 + 1
    assert relabel(relabel(f, a, b), inv_a, inv_b) == f


@settings(max_examples=50)
@given(fields())
def test_json_round_trip(f):
    text = coef.dumps(f)
    assert coef.loads(text) == f
    doc = json.loads(text)
    assert len(doc["a0"]) == f.p1 and len(doc["a0"][0]) == f.p2 and len(doc["a0"][0][0]) == 2
    assert isinstance(doc["b1"][0][0], float)


def test_file_round_trip(tmp_path, ex2):
    path = tmp_path / "f.json"
    coef.save(ex2, path)
    assert coef.load(path) == ex2

