import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from feaslab import LOCAL_REGION, QmcStream, Region, radical_inverse, sample_region, sample_region_xy


def test_radical_inverse_reference_values():
    assert radical_inverse(1, 2) == 0.5
    assert radical_inverse(3, 2) == 0.75
    assert radical_inverse(1, 3) == 1.0 / 3.0


def test_radical_inverse_validates_arguments():
    with pytest.raises(ValueError):
        radical_inverse(0, 2)
    with pytest.raises(ValueError):
        radical_inverse(1, 1)


def test_first_sample_in_local_region():
    (p,) = sample_region(LOCAL_REGION, 1, start_index=1)
    assert p.x == 0.0
    # affine map is ymin + u*(ymax - ymin) with u = 1/3
    assert p.y == -10.0 + (1.0 / 3.0) * 20.0
    assert p.y == pytest.approx(-10.0 + 20.0 / 3.0, rel=1e-15)


def test_unit_region_containment():
    unit = Region(0.0, 1.0, 0.0, 1.0)
    xy = sample_region_xy(unit, 500, start_index=1)
    assert np.all(xy >= 0.0) and np.all(xy <= 1.0)


@given(st.integers(min_value=1, max_value=200), st.integers(min_value=1, max_value=200))
@settings(max_examples=30, deadline=None)
def test_window_concatenation(a, b):
    # one global stream: [1..a] ++ [a+1..a+b] == [1..a+b]
    whole = sample_region_xy(LOCAL_REGION, a + b, start_index=1)
    head = sample_region_xy(LOCAL_REGION, a, start_index=1)
    tail = sample_region_xy(LOCAL_REGION, b, start_index=a + 1)
    assert np.array_equal(whole, np.vstack([head, tail]))


def test_determinism():
    a = sample_region_xy(LOCAL_REGION, 64, start_index=9)
    b = sample_region_xy(LOCAL_REGION, 64, start_index=9)
    assert np.array_equal(a, b)


def test_no_collisions_in_first_million():
    xy = sample_region_xy(Region(0.0, 1.0, 0.0, 1.0), 1_000_000, start_index=1)
    as_complex = xy[:, 0] + 1j * xy[:, 1]
    assert np.unique(as_complex).size == xy.shape[0]


def test_stream_take_advances_window():
    s0 = QmcStream()
    pts, s1 = s0.take(LOCAL_REGION, 3)
    assert s1.next_index == 4
    again, _ = QmcStream(next_index=1).take(LOCAL_REGION, 3)
    assert pts == again
    more, s2 = s1.take(LOCAL_REGION, 2)
    direct = sample_region(LOCAL_REGION, 2, start_index=4)
    assert more == direct and s2.next_index == 6
