"""Command-line interface: ``curveheights analyze|verify|experiment``.

Exit codes: 0 success, 1 partial failure, 2 usage or parse error,
3 mathematical precondition violated.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from .arith import BivarPoly
from .bounds import check_schmidt, main_theorem_check
from .curve import (
    CurveError,
    check_pfs,
    measure_eisenstein,
    puiseux_branches,
    puiseux_exponents,
    vanishing_order,
)
from .experiments import ExperimentConfig, config_dict, run_experiment, summary_json
from .heights import algebraic_points, height_poly
from .reals import PRECISION_CAP, PrecisionExhausted, fmt

EXIT_OK, EXIT_PARTIAL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomial parser

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([XY])|(\^)|([-+*()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at position {pos}")
        if m.group(1):
            out.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(("var", m.group(2), m.start(2)))
        elif m.group(3):
            out.append(("op", "^", m.start(3)))
        else:
            out.append(("op", m.group(4), m.start(4)))
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over ``expr := term (('+'|'-') term)*``."""

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", -1)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] == "end" or (value is not None and tok[1] != value):
            want = value or "a token"
            raise ParseError(f"expected {want!r} at position {tok[2]}" if tok[0] != "end" else f"expected {want!r} at end of input")
        self.i += 1
        return tok

    def parse(self) -> BivarPoly:
        if not self.toks:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"unexpected {self.peek()[1]!r} at position {self.peek()[2]}")
        return p

    def expr(self) -> BivarPoly:
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> BivarPoly:
        p = self.unary()
        while True:
            tok = self.peek()
            if tok[1] == "*":
                self.take()
                p = p * self.unary()
            elif tok[0] == "var" and self.toks[self.i - 1][0] == "num":
                # coefficient directly followed by a variable: 3X
                p = p * self.power()
            else:
                return p

    def unary(self) -> BivarPoly:
        if self.peek()[1] in ("-", "+"):
            op = self.take()[1]
            p = self.unary()
            return -p if op == "-" else p
        return self.power()

    def power(self) -> BivarPoly:
        base = self.primary()
        if self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or "/" in tok[1]:
                raise ParseError(f"exponent must be a nonnegative integer at position {tok[2]}")
            base = base ** int(tok[1])
        return base

    def primary(self) -> BivarPoly:
        kind, val, pos = self.take()
        if kind == "num":
            num, _, den = val.partition("/")
            if den and int(den) == 0:
                raise ParseError(f"zero denominator at position {pos}")
            return BivarPoly.constant(Fraction(int(num), int(den or 1)))
        if kind == "var":
            return BivarPoly({(1, 0): 1} if val == "X" else {(0, 1): 1})
        if val == "(":
            p = self.expr()
            self.take(")")
            return p
        raise ParseError(f"unexpected {val!r} at position {pos}")


def parse_polynomial(text: str) -> BivarPoly:
    """Parse ``"Y^2 - X^3 - X"``-style text into a :class:`BivarPoly`."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# curve files


@dataclass(frozen=True)
class CurveSpec:
    name: str
    text: str
    asserted_absolutely_irreducible: bool = True

    @property
    def poly(self) -> BivarPoly:
        return parse_polynomial(self.text)


def parse_curve_line(line: str, default_name: str = "") -> CurveSpec | None:
    """``name: polynomial [; irreducible=no]``; ``#`` starts a comment."""
    line = line.split("#", 1)[0].strip()
    if not line:
        return None
    asserted = True
    if ";" in line:
        line, opt = line.split(";", 1)
        key, _, val = opt.partition("=")
        if key.strip() != "irreducible" or val.strip() not in ("yes", "no"):
            raise ParseError(f"unknown curve option {opt.strip()!r}")
        asserted = val.strip() == "yes"
    name, sep, text = line.partition(":")
    if not sep:
        name, text = default_name, line
    spec = CurveSpec(name.strip(), text.strip(), asserted)
    spec.poly  # validate
    return spec


def read_curves(source: str) -> list[CurveSpec]:
    """Curves from a file path, the word ``corpus``, or inline polynomial text."""
    if source == "corpus":
        text = resources.files("curveheights").joinpath("data/corpus.txt").read_text()
    elif os.path.exists(source):
        text = Path(source).read_text()
    else:
        spec = parse_curve_line(source)
        if spec is None:
            raise ParseError("empty curve")
        return [spec]
    out = []
    for k, line in enumerate(text.splitlines(), 1):
        spec = parse_curve_line(line, f"curve{k}")
        if spec:
            out.append(spec)
    if not out:
        raise ParseError("no curves found")
    return out


def load_corpus() -> list[CurveSpec]:
    return read_curves("corpus")


# ---------------------------------------------------------------------------
# experiment config


CONFIG_KEYS = ("curves", "epsilon", "points", "height_ceiling", "seed", "precision_cap", "truncation", "workers")
ENV_PREFIX = "CURVEHEIGHTS_"


def read_config(path: str | None) -> dict[str, str]:
    """``key = value`` lines; ``#`` comments.  ``None`` means the bundled default."""
    if path is None:
        text = resources.files("curveheights").joinpath("data/default_experiment.conf").read_text()
    else:
        text = Path(path).read_text()
    out = {}
    for k, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in CONFIG_KEYS:
            raise ParseError(f"config line {k}: expected one of {', '.join(CONFIG_KEYS)} as key=value")
        out[key] = val.strip()
    return out


def _parse_height(text: str) -> float:
    """A float, or ``log(N)`` for the natural log of a number such as ``1e12``."""
    m = re.fullmatch(r"log\((.+)\)", text.strip())
    if m:
        return math.log(float(m.group(1)))
    return float(text)


def merge_settings(config: dict[str, str], flags: dict[str, str | None], env: dict[str, str]) -> dict[str, str]:
    """Flag beats environment beats config file."""
    merged = dict(config)
    for key in CONFIG_KEYS:
        ev = env.get(ENV_PREFIX + key.upper())
        if ev is not None:
            merged[key] = ev
    for key, val in flags.items():
        if val is not None:
            merged[key] = str(val)
    return merged


def build_configs(settings: dict[str, str]) -> tuple[list[ExperimentConfig], int]:
    curves = read_curves(settings.get("curves", "corpus"))
    try:
        kw = dict(
            epsilon=Fraction(settings.get("epsilon", "1/2")),
            sample_count=int(settings.get("points", "50")),
            height_ceiling=_parse_height(settings.get("height_ceiling", "log(1e12)")),
            rng_seed=int(settings.get("seed", "0")),
            precision_cap=int(settings.get("precision_cap", str(PRECISION_CAP))),
            truncation_order=int(settings.get("truncation", "20")),
        )
        workers = int(settings.get("workers", "1"))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad config value: {exc}") from exc
    configs = []
    for k, spec in enumerate(curves):
        # one seed per curve, derived deterministically
        name = spec.name or f"curve{k + 1}"
        configs.append(ExperimentConfig(spec.poly, name=name, **{**kw, "rng_seed": kw["rng_seed"] + 1000 * k}))
    return configs, workers


# ---------------------------------------------------------------------------
# commands


def analyze_report(spec: CurveSpec, K: int = 20) -> str:
    F = spec.poly
    lines = [f"curve {spec.name}: {F}" if spec.name else f"curve: {F}"]
    r = vanishing_order(F)
    lines.append(f"  m = {F.m}, n = {F.n}, h_p(F) = {fmt(height_poly(F))}")
    lines.append(f"  r = {r}")
    s = puiseux_exponents(F)
    exps = ", ".join(f"{ex.order} x{ex.multiplicity}" for ex in s.exponents)
    if s.zero_roots:
        exps += f", y=0 x{s.zero_roots}"
    lines.append(f"  puiseux exponents: {exps}")
    lines.append(f"  ell = {s.ell}")
    same = "matches r" if s.r_from_exponents == r else "DOES NOT match r"
    lines.append(f"  sum of min(1, kappa/e) over kappa > 0 = {s.r_from_exponents} ({same})")
    pfs = check_pfs(F)
    consts = " ".join(str(c) for c in pfs.constants)
    lines.append(f"  f_k(0), k = 0..n: {consts} ({'consistent with ell' if pfs.holds else 'INCONSISTENT with ell'})")
    try:
        lines.append(f"  {check_schmidt(F)}")
    except ValueError as exc:
        lines.append(f"  schmidt: skipped ({exc})")
    exp = puiseux_branches(F, K)
    for k, b in enumerate(exp.branches, 1):
        lines.append(f"  branch {k} (e={b.e}): {b}")
        if b.kappa:
            rep = measure_eisenstein(b, F)
            mark = "holds" if rep.holds else "FAILS"
            lines.append(
                f"    eisenstein: observed height {fmt(rep.observed.height)} <= bound {fmt(rep.paper_bound)} {mark}"
            )
    if exp.irrational:
        lines.append(f"  branches needing irrational coefficients: {exp.irrational}")
    if not spec.asserted_absolutely_irreducible:
        lines.append("  note: absolute irreducibility not asserted")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    curves = read_curves(args.curve)
    for spec in curves:
        print(analyze_report(spec, args.truncation or 20))
    return EXIT_OK


def verify_report(F: BivarPoly, alpha: Fraction, eps: Fraction) -> tuple[str, bool]:
    lines = [f"curve: {F}", f"alpha = {alpha}, epsilon = {eps}"]
    ok = True
    betas = algebraic_points(F, alpha)
    if not betas:
        lines.append("F(alpha, Y) has no roots")
    for k, b in enumerate(betas, 1):
        rep = main_theorem_check(F, alpha, b, eps)
        ok = ok and rep.consistent
        lines += [
            f"beta {k}: {b}",
            f"  h(alpha) = {fmt(rep.h_alpha)}  h(beta) = {fmt(rep.h_beta)}  lgcd = {fmt(rep.lgcd_value)}",
            f"  r = {rep.r}  n = {rep.n}  m = {rep.m}",
            f"  threshold = {fmt(rep.threshold)}  branch = {rep.branch_taken}",
            f"  lhs_main = {fmt(rep.lhs_main)}  rhs_main = {fmt(rep.rhs_main)}  "
            f"{'holds' if rep.main_holds else 'fails'}",
        ]
    lines.append("dichotomy: " + ("consistent" if ok else "VIOLATED"))
    return "\n".join(lines), ok


def cmd_verify(args) -> int:
    try:
        eps = Fraction(args.eps)
        alpha = Fraction(args.alpha)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc)) from exc
    if not 0 < eps < 1:
        raise ParseError("epsilon out of range (0,1)")
    ok = True
    for spec in read_curves(args.curve):
        F = spec.poly
        vanishing_order(F)
        if F.eval_x(alpha).is_zero():
            raise CurveError("vertical line: F(alpha, Y) vanishes identically")
        text, good = verify_report(F, alpha, eps)
        print(text)
        ok = ok and good
    return EXIT_OK if ok else EXIT_PARTIAL


def cmd_experiment(args) -> int:
    flags = {
        "seed": args.seed,
        "points": args.points,
        "height_ceiling": args.height_ceiling,
        "precision_cap": args.precision_cap,
        "truncation": args.truncation,
        "workers": args.workers,
    }
    settings = merge_settings(read_config(args.config), flags, dict(os.environ))
    configs, workers = build_configs(settings)
    out = Path(args.out or os.environ.get(ENV_PREFIX + "OUT", "experiment-output"))
    out.mkdir(parents=True, exist_ok=True)
    overall = {"settings": settings, "curves": []}
    status = EXIT_OK
    for cfg in configs:
        res = run_experiment(cfg, workers)
        (out / f"{cfg.name}.csv").write_text(res.csv_text())
        summary = dict(res.summary, config=config_dict(cfg))
        (out / f"{cfg.name}.json").write_text(summary_json(summary))
        if res.failures or not res.summary["dichotomy_consistent"]:
            status = EXIT_PARTIAL
        overall["curves"].append(
            {
                "name": cfg.name,
                "curve": str(cfg.curve),
                "points": res.summary["points"],
                "failed": res.summary["failed"],
                "dichotomy_consistent": res.summary["dichotomy_consistent"],
            }
        )
        print(
            f"{cfg.name}: {res.summary['points']} points, {len(res.failures)} failed, "
            f"dichotomy {'consistent' if res.summary['dichotomy_consistent'] else 'VIOLATED'}"
        )
    overall["failures"] = [f"{c['name']}: {a}" for c in overall["curves"] for a in c["failed"]]
    (out / "summary.json").write_text(json.dumps(overall, indent=2, sort_keys=True) + "\n")
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curveheights", description="Heights and local analysis of plane curves through the origin.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="order of vanishing, Puiseux data and bounds for a curve")
    a.add_argument("curve", help="curve file, 'corpus', or polynomial text such as 'Y^2 - X^3'")
    a.add_argument("--truncation", type=int, default=None, help="branch truncation order (default 20)")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="evaluate the height dichotomy at the points above alpha")
    v.add_argument("curve")
    v.add_argument("--alpha", required=True, help="rational x-coordinate, e.g. 2 or 3/5")
    v.add_argument("--eps", default="1/2", help="epsilon in (0,1), e.g. 1/2")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("experiment", help="sample points on curves and write CSV and JSON results")
    e.add_argument("config", nargs="?", default=None, help="key=value config file (default: bundled corpus config)")
    e.add_argument("--out", default=None, help="output directory (created if missing)")
    e.add_argument("--seed", type=int, default=None)
    e.add_argument("--points", type=int, default=None)
    e.add_argument("--height-ceiling", dest="height_ceiling", default=None)
    e.add_argument("--precision-cap", dest="precision_cap", type=int, default=None)
    e.add_argument("--truncation", type=int, default=None)
    e.add_argument("--workers", type=int, default=None)
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return args.func(args)
    except (ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PrecisionExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARTIAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
