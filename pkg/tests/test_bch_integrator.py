import json
import math
from fractions import Fraction

import numpy as np
import pytest

from malcev_bch import Element, catalog_lookup
from malcev_bch.bch import (BigradedSeries, asymptotic_tail, bch_truncated, default_directions, exp_series,
                            homogeneous_norms, log_series, radius_diagnostic, rescale_levels, saturating_pair,
                            sharpness_harness, truncation_bound, truncation_report)
from malcev_bch.errors import ConfigurationError, DomainError, UnsupportedModelError
from malcev_bch.integrator import (SplittingExperiment, default_generators, horizon_error, lie_trotter_defect,
                                   observed_order, stability_threshold, sweep, trend_excess)
from malcev_bch.trees import catalan

from oracles import dense_bch

Z = catalog_lookup("zorn")


def zunit(k, c=1, backend="exact"):
    return Element.basis(k, 0, c, backend)


# -- exp / log --------------------------------------------------------------


def test_exp_of_nilpotent_matrix():
    m = catalog_lookup("operator_norm", {"dim": 3})
    x = Element.basis(m.entry(0, 1))
    series = exp_series(x, m, 5)
    assert set(series.terms) == {(0, 0), (1, 0)}  # x^2 = 0
    assert series.slot(1, 0) == x


def test_exp_of_split_unit():
    # e1 squares to the identity, so exp(e1) = cosh(1) + sinh(1) e1
    series = exp_series(zunit(1), Z, 6)
    assert series.slot(2, 0) == zunit(0, Fraction(1, 2))
    assert series.slot(3, 0) == zunit(1, Fraction(1, 6))


def test_exp_then_log_roundtrip():
    x = zunit(1, Fraction(1, 5)) + zunit(4, Fraction(1, 7))
    logged = log_series(exp_series(x, Z, 8), Z)
    assert logged.level(1) == x
    assert all(logged.level(n).is_zero for n in range(2, 9))


def test_log_requires_unit_constant():
    with pytest.raises(DomainError):
        log_series(BigradedSeries({(1, 0): zunit(1)}, 3), Z)


def test_heisenberg():
    m = catalog_lookup("operator_norm", {"dim": 3})
    x, y = Element.basis(m.entry(0, 1)), Element.basis(m.entry(1, 2))
    series = bch_truncated(x, y, m, 6)
    assert series.level(1) == x + y
    assert series.level(2) == Element.basis(m.entry(0, 2), 0, Fraction(1, 2))
    assert all(series.level(n).is_zero for n in range(3, 7))


def test_commuting_arguments():
    x, y = zunit(1, Fraction(1, 3)), zunit(1, Fraction(1, 4))
    series = bch_truncated(x, y, Z, 6)
    assert series.level(1) == x + y
    assert all(series.level(n).is_zero for n in range(2, 7))


def test_zorn_t012_levels():
    x, y = default_directions(Z)
    t = Fraction(12, 100)
    series = bch_truncated(x * t, y * t, Z, 4)
    norms = homogeneous_norms(series, Z)
    assert norms[0] == pytest.approx(0.24)
    assert norms[1] == pytest.approx(0.0144)
    assert series.level(2) == Element.basis(3, 0, t * t)  # (1/2) [tx, ty] = t^2 e3


def test_first_and_second_slots():
    rng = np.random.default_rng(0)
    for _ in range(5):
        x = Element({(int(k), 0): Fraction(int(c), 4) for k, c in zip(rng.integers(1, 8, 3), rng.integers(-3, 4, 3))})
        y = Element({(int(k), 0): Fraction(int(c), 4) for k, c in zip(rng.integers(1, 8, 3), rng.integers(-3, 4, 3))})
        s = bch_truncated(x, y, Z, 4)
        assert s.slot(1, 0) == x and s.slot(0, 1) == y
        assert s.level(2) == Z.bracket(x, y) * Fraction(1, 2)
        # twelfth-order term
        br = Z.bracket
        z3 = (br(x, br(x, y)) + br(y, br(y, x))) * Fraction(1, 12)
        assert s.level(3) == z3


def test_involution_transposes_slots():
    x = zunit(1, Fraction(1, 3)) + zunit(5, Fraction(-1, 2))
    y = zunit(2, Fraction(1, 4)) + zunit(4, Fraction(1, 5))
    lhs = bch_truncated(y, x, Z, 5)
    rhs = bch_truncated(-x, -y, Z, 5)
    for j in range(6):
        for k in range(6 - j):
            assert lhs.slot(j, k) == -rhs.slot(k, j)


def test_rescaling_homogeneity():
    x, y = default_directions(Z)
    base = bch_truncated(x, y, Z, 5).levels()
    t = Fraction(1, 3)
    direct = bch_truncated(x * t, y * t, Z, 5).levels()
    assert rescale_levels(base, t, "exact") == direct


def test_matrix_bch_against_dense_oracle():
    m = catalog_lookup("operator_norm", {"dim": 3})
    rng = np.random.default_rng(1)
    a, b = rng.normal(size=(2, 3, 3))
    a *= 0.08 / np.linalg.norm(a, 2)
    b *= 0.08 / np.linalg.norm(b, 2)
    x, y = m.from_matrix(a.tolist(), "float"), m.from_matrix(b.tolist(), "float")
    levels = bch_truncated(x, y, m, 10).levels()
    got = m.to_matrix(sum(levels, Element.zero("float")))
    np.testing.assert_allclose(got, dense_bch(a, b), atol=1e-12)


def test_json_roundtrip():
    x = zunit(1, Fraction(1, 3))
    y = zunit(2, Fraction(2, 7))
    s = bch_truncated(x, y, Z, 4)
    again = BigradedSeries.from_dict(json.loads(s.to_json()))
    assert again == s
    f = bch_truncated(x.to_backend("float"), y.to_backend("float"), Z, 4)
    assert BigradedSeries.from_dict(json.loads(f.to_json())) == f


@pytest.mark.parametrize("name", ["exponential", "damped", "m_lambda"])
def test_abstract_models_refuse_bch(name):
    m = catalog_lookup(name)
    with pytest.raises(UnsupportedModelError):
        bch_truncated(Element.basis(1, 1), Element.basis(1, 2), m, 3)


def test_unit_part_rejected():
    with pytest.raises(DomainError):
        bch_truncated(zunit(0), zunit(1), Z, 3)


# -- truncation bounds ------------------------------------------------------


def test_truncation_bound_examples():
    assert truncation_bound(3, 1, 2, 0) == 0
    direct = math.fsum(catalan(n - 1) * 0.2 ** n for n in range(2, 500))
    assert truncation_bound(1, 1, 1, 0.2) == pytest.approx(direct, rel=1e-12)
    assert truncation_bound(4, 1, 1, 0.3) == math.inf
    assert truncation_bound(40, 1, 1, 0.1) == pytest.approx(
        math.fsum(catalan(n - 1) * 0.1 ** n for n in range(41, 400)), rel=1e-9)


def test_asymptotic_tail_tracks_sum():
    for N in (20, 40, 80):
        ratio = truncation_bound(N, 1, 1, 0.2) / asymptotic_tail(N, 1, 0.2)
        # remainder/first-term factor 1/(1 - 4r) = 5 times the Stirling correction
        assert 1 < ratio < 6


def test_report_columns_and_bound():
    x, y = default_directions(Z)
    t = Fraction(1, 20)
    rep = truncation_report(x * t, y * t, Z, 6, printed=[0.1] * 6)
    assert rep.within_radius
    rows = rep.rows()
    assert [r["n"] for r in rows] == list(range(1, 7))
    assert all(r["Z_norm"] <= r["majorant"] * (1 + 1e-12) for r in rows)
    assert rows[0]["printed_over_computed"] == pytest.approx(1.0)
    assert rep.to_csv().splitlines()[0] == "n,Z_norm,majorant,within_radius,printed,printed_over_computed"


def test_t012_is_outside_radius():
    x, y = default_directions(Z)
    rep = truncation_report(x * Fraction(12, 100), y * Fraction(12, 100), Z, 4)
    assert rep.B * rep.s == pytest.approx(0.48)
    assert not rep.within_radius and rep.tail_sum == math.inf


def test_radius_diagnostic_profile():
    grid = [0.0, 0.1, 0.5, 2.0]
    prof = radius_diagnostic(Z, *default_directions(Z, "float"), grid, 12)
    exact = radius_diagnostic(Z, *default_directions(Z), grid, 12)
    assert prof.radius_estimate == pytest.approx(exact.radius_estimate, rel=1e-9)
    assert prof.growth[0] == 0
    assert prof.growth == sorted(prof.growth)
    assert prof.stable[:2] == [True, True]
    assert math.isfinite(prof.radius_estimate)


def test_radius_flags_t016_at_N12():
    prof = radius_diagnostic(Z, *default_directions(Z), [0.12, 0.16], 12)
    assert prof.stable == [True, False]
    # the flag comes from a nearly cancelled level and is absent at N = 10
    assert radius_diagnostic(Z, *default_directions(Z), [0.16], 10).stable == [True]


# -- sharpness --------------------------------------------------------------


def test_saturating_pair_norms():
    x, y = saturating_pair(2, 3, Fraction(1, 5))
    m = catalog_lookup("exponential", {"alpha": 2})
    assert m.norm(x) == m.norm(y) == Fraction(1, 5)


def test_sharpness_counts():
    rep = sharpness_harness(2, 3, Fraction(1, 5), 4)
    assert [lv.trees for lv in rep.levels] == [2, 4, 16, 80]
    lv2 = rep.levels[1]
    assert lv2.saturated == 2 and lv2.vanishing == 2  # [x,x] and [y,y] vanish
    assert rep.levels[0].sum_matches
    assert all(lv.level_sum <= lv.catalan_mass * 2 for lv in rep.levels)
    for lv in rep.levels:
        assert lv.saturated + lv.vanishing == lv.trees


def test_sharpness_errors():
    with pytest.raises(DomainError):
        sharpness_harness(2, 2, 0.2, 3)
    with pytest.raises(ConfigurationError):
        sharpness_harness(1, 3, 0.2, 3)


# -- integrator -------------------------------------------------------------


def test_threshold_examples():
    A, B = default_generators(Z)
    assert stability_threshold(Z, A, B) == pytest.approx(0.125)
    assert stability_threshold(Z, Element.zero(), Element.zero()) == math.inf


def test_sweep_orders():
    A, B = default_generators(Z, "float")
    for N in (2, 3, 5):
        res = sweep(SplittingExperiment(Z, A, B, N=N))
        lo, hi = res.threshold / 20, res.threshold / 2
        assert observed_order(res.dt, res.error, lo, hi) == pytest.approx(N + 1, abs=0.1)
        assert res.rows()[0]["within"] is True and res.rows()[-1]["within"] is False


def test_lie_trotter_defect_is_second_order():
    A, B = default_generators(Z, "float")
    res = sweep(SplittingExperiment(Z, A, B, N=3))
    d1, d2 = lie_trotter_defect(res, 1e-3), lie_trotter_defect(res, 2e-3)
    assert d2 / d1 == pytest.approx(4, rel=0.01)


def test_horizon_scales_linearly():
    A, B = default_generators(Z, "float")
    exp = SplittingExperiment(Z, A, B, N=2, horizon=5)
    res = sweep(exp)
    assert horizon_error(exp, res, 0.01) == pytest.approx(5 * res.error_at(0.01))


def test_trend_excess_is_finite():
    A, B = default_generators(Z, "float")
    res = sweep(SplittingExperiment(Z, A, B, N=3))
    assert trend_excess(res) > 0


def test_sweep_csv():
    A, B = default_generators(Z, "float")
    res = sweep(SplittingExperiment(Z, A, B, dt_grid=[0.01, 0.02], N=2))
    lines = res.to_csv().splitlines()
    assert lines[0] == "dt,error,threshold,within" and len(lines) == 3


def test_experiment_validation():
    A, B = default_generators(Z)
    with pytest.raises(DomainError):
        SplittingExperiment(Z, zunit(0), B)
    with pytest.raises(DomainError):
        SplittingExperiment(Z, A, B, N=0)
    with pytest.raises(UnsupportedModelError):
        SplittingExperiment(catalog_lookup("exponential"), Element.basis(1, 1), Element.basis(1, 2))
