import csv
import io
import math
from fractions import Fraction

import pytest

from curveheights.arith import X, Y, resultant_y
from curveheights.curve import CurveError
from curveheights.experiments import (
    CSV_COLUMNS,
    ExperimentConfig,
    SamplePoint,
    _degenerate,
    draw_alphas,
    evaluate_point,
    run_experiment,
    sample_points,
)
from curveheights.heights import AlgebraicNumber, algebraic_points, lgcd_breakdown, satisfies
from curveheights.places import valuation
from curveheights.reals import hi, lo

ELLIPTIC = Y**2 - X**3 - X


def test_config_validation():
    with pytest.raises(ValueError, match="epsilon"):
        ExperimentConfig(ELLIPTIC, epsilon=Fraction(3, 2))
    with pytest.raises(ValueError):
        ExperimentConfig(ELLIPTIC, sample_count=-1)


def test_draws_are_seeded():
    cfg = ExperimentConfig(ELLIPTIC, sample_count=30, rng_seed=11)
    a, b = draw_alphas(cfg), draw_alphas(cfg)
    assert a == b
    assert draw_alphas(ExperimentConfig(ELLIPTIC, sample_count=30, rng_seed=12)) != a
    assert all(max(abs(q.numerator), q.denominator) > 1 for q in a)
    assert all(math.log(max(abs(q.numerator), q.denominator)) <= cfg.height_ceiling + 1e-9 for q in a)


def test_sampled_points_lie_on_curve():
    cfg = ExperimentConfig(ELLIPTIC, sample_count=10, rng_seed=3)
    points, skipped = sample_points(ELLIPTIC, cfg)
    assert skipped == 0 and len(points) == 20
    assert all(satisfies(ELLIPTIC, p.alpha, p.beta) for p in points)


def test_degenerate_specialisations():
    node = Y**2 - X**2 * (X + 1)
    disc = resultant_y(node, node.derivative_y())
    assert _degenerate(node, disc, Fraction(-1))  # F(-1, Y) = Y^2
    assert not _degenerate(node, disc, Fraction(3))
    F = (X - 2) * Y**2 - Y + X
    disc = resultant_y(F, F.derivative_y())
    assert _degenerate(F, disc, Fraction(2))  # degree drop


def test_curve_through_x_axis_rejected():
    with pytest.raises(CurveError, match="x divides F"):
        sample_points(X * Y - X**2, ExperimentConfig(X * Y - X**2, sample_count=1))


def test_example_point():
    (beta, _) = algebraic_points(ELLIPTIC, 2)
    p = evaluate_point(ELLIPTIC, SamplePoint(Fraction(2), beta), Fraction(1, 2))
    assert p.ratios[0] == pytest.approx(1.0, abs=1e-12)
    assert lo(p.lgcd_ab) - 1e-12 <= 0.5 * math.log(2) <= hi(p.lgcd_ab) + 1e-12


def test_half_alpha_lgcd():
    beta = algebraic_points(ELLIPTIC, Fraction(1, 2))[0]
    p = evaluate_point(ELLIPTIC, SamplePoint(Fraction(1, 2), beta), Fraction(1, 2))
    expected = min(math.log(2), -0.5 * math.log(5 / 8))
    assert lo(p.lgcd_ab) - 1e-12 <= expected <= hi(p.lgcd_ab) + 1e-12


def test_parametric_family_exact():
    F = Y**2 - X**3
    for t in (2, 3, 10, 97):
        # exact: lgcd(t^2, t^3)/2 and h(t^2)/2 as rational combinations of log p
        br = lgcd_breakdown(t * t, t**3)
        assert hi(br.archimedean) == 0
        half_lgcd = {p: c / 2 for p, c in br.nonarch.items()}
        half_h = {p: Fraction(valuation(t * t, p), 2) for p in br.nonarch}
        assert half_lgcd == half_h and math.prod(p ** int(2 * c) for p, c in half_h.items()) == t * t
        rep = evaluate_point(F, SamplePoint(Fraction(t * t), AlgebraicNumber.rational(t**3)), Fraction(1, 2)).report
        assert lo(rep.lhs_main) <= 0 <= hi(rep.lhs_main) < 1e-25


def test_run_experiment_rows_and_summary():
    cfg = ExperimentConfig(ELLIPTIC, sample_count=8, rng_seed=5, name="elliptic")
    res = run_experiment(cfg)
    rows = list(csv.DictReader(io.StringIO(res.csv_text())))
    assert tuple(rows[0].keys()) == CSV_COLUMNS
    assert len(rows) == res.summary["points"] == 16
    assert res.summary["dichotomy_consistent"]
    assert res.summary["failed"] == []
    assert {r["branch"] for r in rows} <= {"small_height", "asymptotic"}


def test_parallel_matches_serial():
    cfg = ExperimentConfig(Y**3 - X * Y - X**3, sample_count=6, rng_seed=9)
    assert run_experiment(cfg).csv_text() == run_experiment(cfg, workers=2).csv_text()


def test_empty_sample():
    res = run_experiment(ExperimentConfig(ELLIPTIC, sample_count=0))
    assert res.rows() == [] and res.summary["points"] == 0
    assert res.csv_text().strip() == ",".join(CSV_COLUMNS)


def test_precision_failures_are_recorded():
    cfg = ExperimentConfig(ELLIPTIC, sample_count=3, precision_cap=32)
    res = run_experiment(cfg)
    assert len(res.failures) == res.summary["points"] == 6
    assert all(r["branch"] == "failed" for r in res.rows())
    assert len(res.summary["failed"]) == 6
