"""Containers and transforms: differencing, splitting, scaling, windowing."""

import datetime as dt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quantcast.series import (
    DifferencedSeries,
    MinMaxNormalizer,
    PriceSeries,
    SplitSpec,
    difference,
    fit_normalizer,
    integrate,
    make_windows,
    split,
)

from .conftest import make_dates


class TestPriceSeries:
    def test_basic_construction(self):
        s = PriceSeries("X", make_dates(3), [1.0, 2.0, 3.0])
        assert len(s) == 3
        assert s.values.dtype == np.float64

    def test_values_are_immutable(self):
        s = PriceSeries("X", make_dates(2), [1.0, 2.0])
        with pytest.raises((ValueError, RuntimeError)):
            s.values[0] = 9.0

    def test_rejects_nonpositive_prices(self):
        with pytest.raises(ValueError, match="positive"):
            PriceSeries("X", make_dates(2), [1.0, 0.0])
        with pytest.raises(ValueError, match="positive"):
            PriceSeries("X", make_dates(2), [-1.0, 2.0])

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="finite"):
            PriceSeries("X", make_dates(2), [1.0, np.nan])

    def test_rejects_unsorted_dates(self):
        d = make_dates(2)
        with pytest.raises(ValueError, match="increasing"):
            PriceSeries("X", (d[1], d[0]), [1.0, 2.0])
        with pytest.raises(ValueError, match="increasing"):
            PriceSeries("X", (d[0], d[0]), [1.0, 2.0])

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError, match="differ in length"):
            PriceSeries("X", make_dates(3), [1.0, 2.0])

    def test_rejects_too_short(self):
        with pytest.raises(ValueError, match="at least 2"):
            PriceSeries("X", make_dates(1), [1.0])

    def test_slice_keeps_alignment(self):
        s = PriceSeries("X", make_dates(5), [1.0, 2.0, 3.0, 4.0, 5.0])
        sub = s.slice(1, 4)
        assert sub.dates == s.dates[1:4]
        np.testing.assert_array_equal(sub.values, [2.0, 3.0, 4.0])


class TestDifferencing:
    def test_first_difference_values(self):
        d = difference([1.0, 4.0, 9.0, 16.0], 1)
        np.testing.assert_allclose(d.values, [3.0, 5.0, 7.0])
        assert d.order == 1
        assert d.anchors == (16.0,)
        assert d.origin_length == 4

    def test_d0_is_identity(self):
        d = difference([3.0, 1.0, 4.0], 0)
        np.testing.assert_array_equal(d.values, [3.0, 1.0, 4.0])
        assert d.anchors == ()
        np.testing.assert_array_equal(integrate(d), [3.0, 1.0, 4.0])

    def test_round_trip_d1_d2(self):
        x = np.array([2.0, 3.5, 3.0, 7.25, 6.5, 10.0])
        for d in (1, 2):
            back = integrate(difference(x, d))
            np.testing.assert_allclose(back, x, atol=1e-9)

    def test_rejects_too_short(self):
        with pytest.raises(ValueError, match="cannot be differenced"):
            difference([1.0, 2.0], 2)

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError, match="non-negative"):
            difference([1.0, 2.0], -1)

    def test_integrate_requires_anchors(self):
        broken = DifferencedSeries([1.0, 1.0], 0, (), 2)
        object.__setattr__(broken, "order", 1)  # corrupt on purpose
        with pytest.raises(ValueError, match="anchors"):
            integrate(broken)

    @given(
        st.lists(st.floats(min_value=-1e6, max_value=1e6), min_size=4, max_size=60),
        st.integers(min_value=0, max_value=3),
    )
    @settings(max_examples=200, deadline=None)
    def test_round_trip_property(self, values, d):
        x = np.asarray(values)
        if len(x) <= d:
            return
        back = integrate(difference(x, d))
        np.testing.assert_allclose(back, x, atol=1e-6 * max(1.0, np.abs(x).max()))


class TestSplit:
    def test_paper_proportions(self):
        s = PriceSeries("X", make_dates(1258), np.linspace(10, 20, 1258))
        train, val, test = split(s, SplitSpec(0.9, 0.0, 0.1))
        assert (len(train), val, len(test)) == (1132, None, 126)

    def test_boundaries_are_chronological_and_exhaustive(self):
        s = PriceSeries("X", make_dates(10), np.arange(1.0, 11.0))
        train, val, test = split(s, SplitSpec(0.5, 0.2, 0.3))
        assert [len(train), len(val), len(test)] == [5, 2, 3]
        joined = np.concatenate([train.values, val.values, test.values])
        np.testing.assert_array_equal(joined, s.values)
        assert train.dates[-1] < val.dates[0] < test.dates[0]

    def test_validation_none_when_fraction_zero(self):
        s = PriceSeries("X", make_dates(10), np.arange(1.0, 11.0))
        _, val, _ = split(s, SplitSpec(0.8, 0.0, 0.2))
        assert val is None

    def test_degenerate_split_rejected(self):
        s = PriceSeries("X", make_dates(9), np.arange(1.0, 10.0))
        with pytest.raises(ValueError, match="degenerate split"):
            split(s, SplitSpec(0.9, 0.0, 0.1))  # test segment would get 1 point

    def test_spec_validation(self):
        with pytest.raises(ValueError, match="sum to 1"):
            SplitSpec(0.5, 0.1, 0.1)
        with pytest.raises(ValueError, match="non-negative"):
            SplitSpec(1.1, -0.2, 0.1)
        with pytest.raises(ValueError, match="positive"):
            SplitSpec(0.0, 0.9, 0.1)


class TestNormalizer:
    def test_maps_fitted_range_to_unit_interval(self):
        nz = fit_normalizer([10.0, 20.0, 15.0])
        np.testing.assert_allclose(nz.transform([10.0, 20.0]), [0.0, 1.0])

    def test_out_of_range_extrapolates(self):
        nz = MinMaxNormalizer(0.0, 10.0)
        np.testing.assert_allclose(nz.transform([-5.0, 25.0]), [-0.5, 2.5])

    def test_round_trip(self):
        nz = fit_normalizer([3.0, 17.0])
        x = np.linspace(-40.0, 60.0, 101)
        np.testing.assert_allclose(nz.inverse_transform(nz.transform(x)), x, atol=1e-9)

    def test_degenerate_scale_rejected(self):
        with pytest.raises(ValueError, match="degenerate scale"):
            fit_normalizer([5.0, 5.0, 5.0])
        with pytest.raises(ValueError, match="degenerate scale"):
            MinMaxNormalizer(1.0, 1.0)

    @given(st.lists(st.floats(min_value=-1e8, max_value=1e8), min_size=2, max_size=50))
    @settings(max_examples=200, deadline=None)
    def test_round_trip_property(self, values):
        arr = np.asarray(values)
        if arr.max() - arr.min() < 1e-9:
            return
        nz = fit_normalizer(arr)
        back = nz.inverse_transform(nz.transform(arr))
        np.testing.assert_allclose(back, arr, atol=1e-6 * max(1.0, np.abs(arr).max()))


class TestWindows:
    def test_window_alignment(self):
        ws = make_windows([1.0, 2.0, 3.0, 4.0, 5.0], 3)
        np.testing.assert_array_equal(ws.inputs, [[1, 2, 3], [2, 3, 4]])
        np.testing.assert_array_equal(ws.targets, [4.0, 5.0])
        assert len(ws) == 2

    def test_count_matches_length_minus_look_back(self):
        for n, lb in [(10, 1), (10, 8), (1132, 8), (1132, 3)]:
            ws = make_windows(np.arange(n, dtype=float), lb)
            assert len(ws) == n - lb

    def test_target_dates_align(self):
        dates = make_dates(5)
        ws = make_windows([1.0, 2.0, 3.0, 4.0, 5.0], 2, dates=dates)
        assert ws.target_dates == dates[2:]

    def test_rejects_bad_sizes(self):
        with pytest.raises(ValueError, match="look_back"):
            make_windows([1.0, 2.0], 0)
        with pytest.raises(ValueError, match="more than look_back"):
            make_windows([1.0, 2.0], 2)

    def test_no_future_leakage(self):
        # target i must depend only on values before its own index
        x = np.arange(20.0)
        ws = make_windows(x, 4)
        for i in range(len(ws)):
            assert ws.inputs[i].max() < ws.targets[i]
