"""Sampling algebraic points on a curve and measuring ``lgcd/r`` against ``h/n``.

For a curve ``F`` through the origin with order of vanishing ``r``, points
``(alpha, beta)`` of large height should satisfy

    h(alpha)/n  ~  h(beta)/m  ~  lgcd(alpha, beta)/r.

:func:`run_experiment` draws rational ``alpha`` of spread-out heights, takes
every root ``beta`` of ``F(alpha, Y)``, and records the heights, the
logarithmic gcd and the dichotomy report for each point.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from .arith import BivarPoly, resultant_y
from .bounds import main_theorem_check
from .curve import CurveError, IrrationalBranch, measure_eisenstein, puiseux_branches, vanishing_order
from .heights import AlgebraicNumber, algebraic_points, height_poly
from .reals import PRECISION_CAP, PrecisionExhausted, Real, fmt, mid

CSV_COLUMNS = (
    "alpha_num",
    "alpha_den",
    "minpoly",
    "h_alpha",
    "h_beta",
    "lgcd",
    "r",
    "n",
    "m",
    "lhs_main",
    "rhs_main",
    "branch",
)

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True)
class ExperimentConfig:
    curve: BivarPoly
    epsilon: Fraction = Fraction(1, 2)
    sample_count: int = 50
    height_ceiling: float = 12 * math.log(10)
    rng_seed: int = 0
    precision_cap: int = PRECISION_CAP
    truncation_order: int = 20
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon out of range (0,1)")
        if self.sample_count < 0:
            raise ValueError("sample_count must be nonnegative")
        if self.height_ceiling <= math.log(2):
            raise ValueError("height_ceiling must exceed log 2")
        if self.truncation_order < 8:
            raise ValueError("truncation_order must be at least 8")


@dataclass
class SamplePoint:
    alpha: Fraction
    beta: AlgebraicNumber
    h_alpha: Real | None = None
    h_beta: Real | None = None
    lgcd_ab: Real | None = None
    ratios: tuple[float | None, float | None] = (None, None)
    report: object = None
    failure: str | None = None


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    points: list[SamplePoint]
    skipped: int
    summary: dict
    full_rows: list[dict[str, str]]

    @property
    def failures(self) -> list[dict[str, str]]:
        return [r for r in self.full_rows if r["branch"] == "failed"]

    def rows(self) -> list[dict[str, str]]:
        return [{k: r[k] for k in CSV_COLUMNS} for r in self.full_rows]

    def csv_text(self) -> str:
        return rows_to_csv(self.rows())


# ---------------------------------------------------------------------------
# sampling


def _random_alpha(rng: random.Random, ceiling: float) -> Fraction:
    """Nonzero rational of height about ``uniform(log 2, ceiling)``.

    Three shapes are mixed: integers, fractions with numerator and
    denominator of similar size, and signed products of small primes.
    """
    while True:
        h = rng.uniform(math.log(2), ceiling)
        bound = max(2, int(math.exp(h)))
        kind = rng.randrange(3)
        sign = rng.choice((1, -1))
        if kind == 0:
            a = Fraction(sign * rng.randint(2, bound))
        elif kind == 1:
            num = rng.randint(1, bound)
            den = rng.randint(2, bound)
            a = Fraction(sign * num, den)
        else:
            n = 1
            while True:
                p = rng.choice(SMALL_PRIMES)
                if n * p > bound:
                    break
                n *= p
            a = Fraction(sign * n) if n > 1 else Fraction(sign * 2)
            if rng.random() < 0.3:
                a = 1 / a
        if max(abs(a.numerator), a.denominator) > 1:
            return a


def draw_alphas(config: ExperimentConfig) -> list[Fraction]:
    rng = random.Random(config.rng_seed)
    return [_random_alpha(rng, config.height_ceiling) for _ in range(config.sample_count)]


def _degenerate(F: BivarPoly, discriminant: BivarPoly, alpha: Fraction) -> bool:
    """Degree drop or repeated root of ``F(alpha, Y)``."""
    if F.column(F.n)(alpha) == 0:
        return True
    return discriminant.is_zero() or discriminant(alpha, 0) == 0


def sample_points(F: BivarPoly, config: ExperimentConfig) -> tuple[list[SamplePoint], int]:
    """Points ``(alpha, beta)`` for every drawn ``alpha`` and every root ``beta``.

    Returns the points and the number of skipped (degenerate) ``alpha``.
    """
    vanishing_order(F)
    if all(c(0) == 0 for c in F.columns()):
        raise CurveError("x divides F: F(0, Y) vanishes identically")
    disc = resultant_y(F, F.derivative_y()) if F.n >= 1 else BivarPoly()
    points, skipped = [], 0
    for alpha in draw_alphas(config):
        if _degenerate(F, disc, alpha):
            skipped += 1
            continue
        for beta in algebraic_points(F, alpha):
            points.append(SamplePoint(alpha, beta))
    return points, skipped


# ---------------------------------------------------------------------------
# evaluation


def evaluate_point(F: BivarPoly, point: SamplePoint, epsilon: Fraction, cap: int = PRECISION_CAP) -> SamplePoint:
    try:
        rep = main_theorem_check(F, point.alpha, point.beta, epsilon, cap=cap)
    except PrecisionExhausted as exc:
        point.failure = f"precision exhausted: {exc}"
        return point
    point.report = rep
    point.h_alpha, point.h_beta, point.lgcd_ab = rep.h_alpha, rep.h_beta, rep.lgcd_value
    g = mid(rep.lgcd_value)
    ra = g / (rep.r * mid(rep.h_alpha) / rep.n) if mid(rep.h_alpha) > 0 else None
    rb = g / (rep.r * mid(rep.h_beta) / rep.m) if mid(rep.h_beta) > 0 else None
    point.ratios = (ra, rb)
    return point


def point_row(F: BivarPoly, p: SamplePoint) -> dict[str, str]:
    row = {
        "alpha_num": str(p.alpha.numerator),
        "alpha_den": str(p.alpha.denominator),
        "minpoly": " ".join(str(c) for c in p.beta.minpoly.coeffs),
    }
    rep = p.report
    if rep is None:
        row.update({k: "" for k in ("h_alpha", "h_beta", "lgcd", "lhs_main", "rhs_main")})
        row.update({"r": str(vanishing_order(F)), "n": str(F.n), "m": str(F.m), "branch": "failed"})
    else:
        row.update(
            {
                "h_alpha": fmt(rep.h_alpha),
                "h_beta": fmt(rep.h_beta),
                "lgcd": fmt(rep.lgcd_value),
                "r": str(rep.r),
                "n": str(rep.n),
                "m": str(rep.m),
                "lhs_main": fmt(rep.lhs_main),
                "rhs_main": fmt(rep.rhs_main),
                "branch": rep.branch_taken,
            }
        )
    return {k: row[k] for k in CSV_COLUMNS}


def rows_to_csv(rows: list[dict[str, str]]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _round(x: float | None, digits: int = 12) -> float | None:
    return None if x is None else float(f"{x:.{digits}g}")


def _eisenstein_summary(F: BivarPoly, K: int) -> list[dict]:
    out = []
    try:
        branches = puiseux_branches(F, K).branches
    except (CurveError, IrrationalBranch):
        return out
    for b in branches:
        if not b.kappa:
            continue
        rep = measure_eisenstein(b, F)
        out.append(
            {
                "branch": str(b),
                "observed_height": _round(mid(rep.observed.height)),
                "bound": _round(mid(rep.paper_bound)),
                "holds": rep.holds,
            }
        )
    return out


def summarize(config: ExperimentConfig, rows: list[dict[str, str]], skipped: int) -> dict:
    """Summary statistics computed from the CSV rows."""
    F = config.curve
    ok = [r for r in rows if r["branch"] != "failed"]
    devs = []
    for r in ok:
        ha = float(r["h_alpha"])
        if ha > 0:
            devs.append((ha, float(r["lhs_main"]) / ha))
    devs.sort()
    top = [d for _, d in devs[len(devs) - max(1, len(devs) // 10):]] if devs else []
    return {
        "curve": str(F),
        "name": config.name,
        "r": vanishing_order(F),
        "n": F.n,
        "m": F.m,
        "h_p": _round(mid(height_poly(F))),
        "epsilon": str(config.epsilon),
        "seed": config.rng_seed,
        "sample_count": config.sample_count,
        "points": len(rows),
        "skipped_alphas": skipped,
        "failed": [f"{r['alpha_num']}/{r['alpha_den']}" for r in rows if r["branch"] == "failed"],
        "small_height": sum(1 for r in ok if r["branch"] == "small_height"),
        "asymptotic": sum(1 for r in ok if r["branch"] == "asymptotic"),
        "main_inequality_holds": sum(1 for r in ok if r["main_holds"] == "1"),
        "dichotomy_consistent": all(r["branch"] == "small_height" or r["main_holds"] == "1" for r in ok),
        "relative_deviation_median": _round(statistics.median(d for _, d in devs)) if devs else None,
        "relative_deviation_max": _round(max(d for _, d in devs)) if devs else None,
        "top_decile_relative_deviation_median": _round(statistics.median(top)) if top else None,
        "eisenstein": _eisenstein_summary(F, config.truncation_order),
    }


def _evaluate_chunk(args) -> list[dict[str, str]]:
    F, items, eps, cap = args
    return [_full_row(F, evaluate_point(F, SamplePoint(a, b), eps, cap)) for a, b in items]


def _full_row(F: BivarPoly, p: SamplePoint) -> dict[str, str]:
    row = point_row(F, p)
    row["main_holds"] = "1" if p.report is not None and p.report.main_holds else "0"
    return row


def run_experiment(config: ExperimentConfig, workers: int = 1) -> ExperimentResult:
    """Sample, evaluate every point, and summarise.

    With ``workers > 1`` points are evaluated in separate processes (only
    the rows travel back) and merged in sample order, so the output does
    not depend on the worker count.
    """
    F = config.curve
    points, skipped = sample_points(F, config)
    if workers > 1 and len(points) > 1:
        jobs = [(F, [(p.alpha, p.beta) for p in points[i::workers]], config.epsilon, config.precision_cap) for i in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_evaluate_chunk, jobs))
        rows = [None] * len(points)
        for w, part in enumerate(parts):
            for k, row in enumerate(part):
                rows[w + k * workers] = row
    else:
        rows = [_full_row(F, evaluate_point(F, p, config.epsilon, config.precision_cap)) for p in points]
    for p, row in zip(points, rows):
        if row["branch"] == "failed" and p.failure is None:
            p.failure = "failed in worker"
    return ExperimentResult(config, points, skipped, summarize(config, rows, skipped), rows)


def summary_json(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True) + "\n"


def config_dict(config: ExperimentConfig) -> dict:
    d = asdict(config)
    d["curve"] = str(config.curve)
    d["epsilon"] = str(config.epsilon)
    return d
