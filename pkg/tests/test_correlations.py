from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from freekuo import correlations as corr
from freekuo.correlations import (
    ConvergenceReport,
    bulk_ratio_check,
    corner_convergence,
    corner_ratio,
    log_asymptotics_table,
    r1_closed_form,
)
from freekuo.counting import mf_profile_dp
from freekuo.formulas import corner_correlation
from freekuo.regions import flashlight


def test_undented_ratio_is_one():
    for x in (1, 5, 40):
        assert corner_ratio(x, 0, 0) == 1


def test_corner_ratio_matches_direct_counts():
    want = Fraction(mf_profile_dp(flashlight(8, 6, 2, 1)), mf_profile_dp(flashlight(8, 8, 0, 0)))
    assert corner_ratio(8, 2, 1) == want


def test_corner_ratio_domain():
    with pytest.raises(ValueError):
        corner_ratio(2, 2, 1)


def test_log_path_agrees_with_exact(monkeypatch):
    exact = corner_ratio(60, 2, 1)
    monkeypatch.setattr(corr, "EXACT_X_MAX", 10)
    approx = corner_ratio(60, 2, 1, digits=40)
    assert isinstance(approx, mpmath.mpf)
    with mpmath.workdps(40):
        assert mpmath.almosteq(approx, mpmath.mpf(exact.numerator) / exact.denominator, rel_eps=mpmath.mpf(10) ** -30)


def test_corner_convergence_small_dent():
    rep = corner_convergence(1, 0, [32, 64, 128], digits=30)
    assert rep.monotone and rep.verdict
    assert rep.deviations[-1] < rep.deviations[0]
    rows = rep.rows()
    assert [r["point"] for r in rows] == [32, 64, 128]
    with pytest.raises(ValueError):
        corner_convergence(1, 0, [64, 32])


def test_report_logic():
    rep = ConvergenceReport("t", [1, 2, 3], [0, 0, 0], [mpmath.mpf("0.3"), mpmath.mpf("0.1"), mpmath.mpf("0.01")], 0.05, 30)
    assert rep.monotone and rep.verdict
    rep = ConvergenceReport("t", [1, 2, 3], [0, 0, 0], [mpmath.mpf("0.3"), mpmath.mpf("0.4"), mpmath.mpf("0.01")], 0.05, 30)
    assert not rep.monotone and not rep.verdict
    rep = ConvergenceReport("t", [1, 2], [0, 0], [mpmath.mpf("0.3"), mpmath.mpf("0.2")], 0.05, 30)
    assert rep.monotone and not rep.verdict
    # noise below the precision floor counts as zero
    rep = ConvergenceReport("t", [1, 2], [0, 0], [mpmath.mpf(10) ** -25, mpmath.mpf(10) ** -24], 0.05, 30)
    assert rep.monotone and rep.deviations == [0, 0]


def test_bulk_ratio():
    rep = bulk_ratio_check([4, 8, 16], digits=30)
    assert rep.monotone and rep.verdict
    with pytest.raises(ValueError):
        bulk_ratio_check([2, 4], digits=30)
    with pytest.raises(ValueError):
        bulk_ratio_check([4, 8], digits=10)


def test_log_asymptotics():
    r1, r2 = log_asymptotics_table([16, 32, 64, 100], digits=30)
    assert r1.verdict and r2.verdict
    with mpmath.workdps(30):
        assert mpmath.almosteq(r1.values[-1], r1_closed_form(100), rel_eps=mpmath.mpf(10) ** -25)
    assert float(r1.values[-1]) == pytest.approx(1.0017186, abs=1e-7)
    # tiny k is far from the limit
    r1, r2 = log_asymptotics_table([1, 2], digits=30)
    assert not (r1.verdict and r2.verdict)
    with pytest.raises(ValueError):
        log_asymptotics_table([0, 4])


def test_r1_closed_form_matches_definition():
    for k in (3, 17):
        c = corner_correlation(k, 0)
        with mpmath.workdps(30):
            direct = mpmath.log(mpmath.mpf(c.numerator) / c.denominator) / (k * k * mpmath.log(mpmath.sqrt(3) / 4))
            assert mpmath.almosteq(direct, r1_closed_form(k), rel_eps=mpmath.mpf(10) ** -25)


def test_r1_and_r2_agree_at_100():
    (r1,), (r2,) = (rep.values for rep in log_asymptotics_table([100], digits=30))
    assert abs(r1 - r2) < 0.02
