#!/usr/bin/env python3
"""
Unit Tests for Log-Log Fitting
==============================

Tests for estimation/loglog.py
"""
import math
import sys
from pathlib import Path

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

# Add the project root to the Python path
PROJECT_ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from data.errors import EstimationError, InputError
from data.estimates import LogLogPoint
from estimation.loglog import estimate_dimension, fit_loglog


def points_of(pairs):
    return [LogLogPoint(scale=s, measure=m) for s, m in pairs]


class TestFitLogLog:
    """Test the least squares line"""

    def test_exact_power_law(self):
        """Test measure = 3 * scale^-1.5 is recovered exactly"""
        scales = [1.0, 2.0, 4.0, 8.0, 16.0]
        fit = fit_loglog(points_of((s, 3.0 * s**-1.5) for s in scales))
        assert fit.slope == pytest.approx(-1.5, abs=1e-12)
        assert fit.intercept == pytest.approx(math.log(3.0), abs=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_two_points(self):
        """Test two points give the line through them"""
        fit = fit_loglog(points_of([(1.0, 1.0), (math.e, math.e**2)]))
        assert fit.slope == pytest.approx(2.0)
        assert fit.intercept == pytest.approx(0.0, abs=1e-12)

    def test_constant_measure(self):
        """Test a flat line has slope 0 and r_squared 1"""
        fit = fit_loglog(points_of([(1.0, 5.0), (3.0, 5.0)]))
        assert fit.slope == pytest.approx(0.0, abs=1e-12)
        assert fit.r_squared == 1.0

    def test_noisy_points_r_squared_below_one(self):
        """Test scatter lowers r_squared"""
        fit = fit_loglog(points_of([(1.0, 1.0), (2.0, 3.0), (4.0, 2.0), (8.0, 9.0)]))
        assert 0.0 <= fit.r_squared < 1.0

    def test_degenerate_inputs(self):
        """Test fewer than two points or a single scale"""
        with pytest.raises(EstimationError):
            fit_loglog(points_of([(1.0, 1.0)]))
        with pytest.raises(EstimationError):
            fit_loglog(points_of([(2.0, 1.0), (2.0, 3.0)]))

    @given(
        slope=st.floats(min_value=-3.0, max_value=3.0),
        intercept=st.floats(min_value=-5.0, max_value=5.0),
        gain=st.floats(min_value=1e-3, max_value=1e3),
        stretch=st.floats(min_value=1e-3, max_value=1e3),
    )
    @settings(max_examples=200, deadline=None)
    def test_slope_invariant_under_scaling(self, slope, intercept, gain, stretch):
        """Test multiplying measures or scales by a constant keeps the slope"""
        scales = [1.0, 2.0, 3.0, 5.0, 8.0, 13.0]
        base = [(s, math.exp(intercept) * s**slope) for s in scales]
        reference = fit_loglog(points_of(base))

        by_measure = fit_loglog(points_of((s, m * gain) for s, m in base))
        by_scale = fit_loglog(points_of((s * stretch, m) for s, m in base))

        assert by_measure.slope == pytest.approx(reference.slope, abs=1e-9)
        assert by_scale.slope == pytest.approx(reference.slope, abs=1e-9)
        assert by_measure.intercept == pytest.approx(reference.intercept + math.log(gain), abs=1e-9)


class TestEstimateDimension:
    """Test dimension derivation and zero exclusion"""

    def test_sign_convention(self):
        """Test D = -slope by default and +slope on request"""
        scales = [1.0, 2.0, 4.0]
        measures = [8.0, 4.0, 2.0]
        assert estimate_dimension(scales, measures).dimension == pytest.approx(1.0)
        assert estimate_dimension(scales, measures, dimension_sign=1.0).dimension == pytest.approx(-1.0)

    def test_zero_measures_are_excluded(self):
        """Test zero measures are dropped and counted"""
        estimate = estimate_dimension([1.0, 2.0, 4.0, 8.0], [4.0, 0.0, 1.0, 0.5])
        assert estimate.excluded_count == 1
        assert len(estimate.points) == 3
        assert [p.scale for p in estimate.points] == [1.0, 4.0, 8.0]

    def test_too_few_after_exclusion(self):
        """Test an error when fewer than two points survive"""
        with pytest.raises(EstimationError) as excinfo:
            estimate_dimension([1.0, 2.0, 3.0], [0.0, 0.0, 1.0])
        assert len(excinfo.value.points) == 1

    def test_invalid_values(self):
        """Test negative, non-finite and mismatched inputs"""
        with pytest.raises(InputError):
            estimate_dimension([1.0, 2.0], [1.0, -1.0])
        with pytest.raises(InputError):
            estimate_dimension([0.0, 2.0], [1.0, 1.0])
        with pytest.raises(InputError):
            estimate_dimension([1.0, 2.0], [1.0, float("nan")])
        with pytest.raises(InputError):
            estimate_dimension([1.0, 2.0], [1.0])

    def test_never_negative_zero(self):
        """Test a flat fit reports +0.0"""
        estimate = estimate_dimension([1.0, 2.0], [3.0, 3.0])
        assert estimate.dimension == 0.0
        assert math.copysign(1.0, estimate.dimension) == 1.0
