import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from zetamoments.errors import DomainError, ParameterError
from zetamoments.majorant import loglog
from zetamoments.statistics import (
    ScanResult,
    TGrid,
    corollary_b_report,
    empirical_measure,
    ks_distance_normal,
    measure_table,
    moment_direct,
    moment_from_scan,
    moment_table,
    moment_via_measure,
    reference_bounds,
    regime1_window_empty,
    regime_tag,
    scan,
    selberg_compare,
    theorem_bound,
    theorem_formulas,
)


class TestGrid:
    def test_count(self):
        assert TGrid(1e6, 1e6 + 1e3, 0.01).count == 100001
        assert TGrid(100.0, 100.0, 0.5).count == 1
        assert TGrid(100.0, 101.0, 0.3).count == 4

    def test_invalid(self):
        with pytest.raises(ParameterError):
            TGrid(100.0, 101.0, 0.0)
        with pytest.raises(ParameterError):
            TGrid(100.0, 99.0, 0.1)

    def test_density(self):
        g = TGrid.for_measure(1e6, 2e6)
        assert g.resolves_zero_gaps()
        assert not TGrid(1e6, 2e6, 0.1).resolves_zero_gaps()


def test_single_point_scan():
    res = scan(TGrid(1000.0, 1000.0, 0.1))
    assert res.t.size == 1 and not res.clipped[0]
    with pytest.raises(DomainError):
        scan(TGrid(10.0, 20.0, 0.1))


def test_scan_is_deterministic():
    g = TGrid(1e5, 1e5 + 50, 0.01)
    a, b = scan(g), scan(g, threads=3)
    assert np.array_equal(a.log_abs_zeta, b.log_abs_zeta)


class TestReferenceScan:
    def test_shape_and_mean(self, reference_scan):
        s = reference_scan.summary
        assert reference_scan.t.size == 100001
        assert np.all(np.diff(reference_scan.t) > 0)
        # spacing 0.01 is ~1/200 of a zero gap; about 1000 / (gap / 2) effectively independent samples
        n_eff = 1e3 * math.log(1e6 / (2 * math.pi)) / math.pi
        assert abs(s["mean"]) <= 3 * math.sqrt(s["variance"] / n_eff)

    def test_measure_monotone(self, reference_scan):
        v = np.linspace(-12, 4, 400)
        m = empirical_measure(reference_scan, v)
        assert np.all(np.diff(m) <= 0)
        assert m[0] == pytest.approx(reference_scan.length)
        assert m[-1] == 0.0
        assert 0 < empirical_measure(reference_scan, 1.0) < reference_scan.length

    @pytest.mark.parametrize("k", [0.5, 1.0, 2.0])
    def test_moment_identity(self, reference_scan, k):
        direct = moment_direct(k, (1e6, 1e6 + 1e3), result=reference_scan)
        via = moment_via_measure(k, reference_scan)
        assert via == pytest.approx(direct.value, rel=0.02)
        assert direct.quadrature_error >= 0

    def test_grid_halving(self, reference_scan):
        fine, _ = moment_from_scan(reference_scan, 1.0)
        coarse_y = np.exp(2 * reference_scan.log_abs_zeta[::2])
        coarse = integrate.simpson(coarse_y, dx=0.02)
        assert coarse == pytest.approx(fine, rel=0.01)

    def test_threshold_exponent_report(self, reference_scan):
        r0 = corollary_b_report(reference_scan, 0.0)
        assert r0["threshold"] == 0.0
        assert 0 < r0["measure"] < reference_scan.length
        r1 = corollary_b_report(reference_scan, 1.0)
        assert math.isfinite(r1["exponent"]) and r1["flag"] == ""
        assert corollary_b_report(reference_scan, 10.0)["flag"] == "measure=0"

    def test_selberg(self, reference_scan):
        assert selberg_compare(reference_scan) < 0.15

    def test_tables(self, reference_scan):
        rows = moment_table(reference_scan, [1.0])
        assert rows[0]["rel_diff"] < 0.02
        rows = measure_table(reference_scan, [3.0, 5.0])
        assert [r["regime"] for r in rows] == ["regime3", "regime3"]


def test_moment_direct_scans_itself():
    est = moment_direct(1.0, (1e5, 1e5 + 20))
    assert est.value > 0 and est.interval == (1e5, 1e5 + 20)
    with pytest.raises(ParameterError):
        moment_direct(1.0, (1e5, 1e5 + 20), grid=TGrid(1e5, 1e5 + 20, 0.1))
    with pytest.raises(ParameterError):
        moment_from_scan(scan(TGrid(1e5, 1e5 + 1, 0.01)), 0.0)


def test_moment_near_a_zero_is_tiny(zeros):
    g = float(zeros.ordinates[zeros.count // 2])
    est = moment_direct(2.0, (g - 1e-3, g + 1e-3), grid=TGrid(g - 1e-3, g + 1e-3, 1e-4))
    assert est.value < 1e-12


def test_moment_via_measure_single_sample():
    grid = TGrid(1000.0, 1000.0, 0.25)
    res = ScanResult(grid, np.array([1000.0]), np.array([0.7]), np.array([False]))
    for k in (0.5, 1.0, 2.0):
        v = np.linspace(0.0, 0.7, 200001)
        assert moment_via_measure(k, res, v) == pytest.approx(0.25 * math.exp(2 * k * 0.7), rel=1e-9)


def test_moment_via_measure_warns_on_short_grid(reference_scan):
    with pytest.warns(RuntimeWarning, match="does not cover"):
        moment_via_measure(1.0, reference_scan, np.linspace(-1, 1, 11))


class TestBounds:
    def test_regime3_plug_in(self):
        T = 1e6
        bound, tag = theorem_bound(T, math.e)
        assert tag == "regime3"
        assert bound == pytest.approx(T * math.exp(-math.e / 33), rel=1e-15)

    def test_empty_regime1_at_1e6(self):
        assert regime1_window_empty(1e6)
        assert regime_tag(1e6, 2.0) == "out-of-range"
        bound, tag = theorem_bound(1e6, 2.0)
        assert tag == "out-of-range"
        assert bound == pytest.approx(theorem_formulas(1e6, 2.0)["regime1"])

    def test_boundary_reports_both(self):
        T = 1e6
        f = theorem_formulas(T, loglog(T))
        assert math.isfinite(f["regime1"]) and math.isfinite(f["regime2"])

    def test_reference_curves(self):
        T = 1e6
        ll = loglog(T)
        r = reference_bounds(T, 0.0)
        assert r["selberg_tail"] == T / 2
        assert reference_bounds(T, math.sqrt(ll))["eq3"] == pytest.approx(T / math.e, rel=1e-14)

    def test_errors(self):
        with pytest.raises(ParameterError):
            theorem_bound(100.0, 3.0)
        with pytest.raises(ParameterError):
            theorem_bound(1e6, 0.0)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(min_value=1e3, max_value=1e300), st.floats(min_value=1e-3, max_value=1e3))
    def test_one_tag_per_input(self, T, V):
        assert regime_tag(T, V) in {"regime1", "regime2", "regime3", "out-of-range"}


class TestKS:
    def test_null_calibration(self, rng):
        n = 20000
        assert ks_distance_normal(rng.standard_normal(n)) <= 1.36 / math.sqrt(n)

    def test_constant_samples(self):
        assert ks_distance_normal(np.zeros(100)) >= 0.5

    def test_sample_size(self):
        res = scan(TGrid(1000.0, 1010.0, 0.01))
        with pytest.raises(ParameterError):
            selberg_compare(res)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(min_value=-10, max_value=5), min_size=1, max_size=50), st.floats(min_value=-11, max_value=6))
def test_measure_counts(values, V):
    vals = np.array(values)
    res = ScanResult(TGrid(100.0, 100.0 + 0.5 * (len(values) - 1), 0.5), 100.0 + 0.5 * np.arange(len(values)), vals, np.zeros(len(values), bool))
    assert empirical_measure(res, V) == 0.5 * sum(v >= V for v in values)
