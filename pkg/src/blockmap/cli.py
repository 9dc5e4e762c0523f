"""Command-line entry point: ``blockmap {coeffs,critical,estimate,profile}``.

Curves go out as CSV (17 significant digits), reports as JSON with sorted
keys, so identical invocations produce identical bytes.  Exit codes:
0 success, 1 usage error, 2 data validation failure, 3 non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath as mp
import numpy as np

from . import criticality as crit
from . import exponents as ex
from . import profile as prof
from .cache import SeriesCache
from .errors import CapExceededError, ConvergenceError, DataValidationError, OutsideAssumptionsError
from .models import ALIASES, FAMILIES, brute_force_weighted_counts, model_spec
from .pipeline import (
    TWO_POINT_FAMILIES,
    block_counts,
    map_family,
    two_point_series,
    unweighted_series,
    weighted_series,
)
from .series import Poly, correlator_from_blocks

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CONVERGENCE = 0, 1, 2, 3

# central charge and marked-point dimension per family
CENTRAL_CHARGE = {
    "quad-simple-blocks": (0, 0),
    "cubic-hamiltonian": (-2, 0),
    "cubic-open-path": (-2, Fraction(-1, 4)),
    "bicubic-hamiltonian": (-1, 0),
    "meander": (-2, 0),
}

MAX_ORDER = {"closed-form": 60, "brute-force": 12, "external-file": 200}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class ExperimentConfig:
    model: str
    N: int | None = None
    u_values: list = field(default_factory=list)
    q: object = None
    preset: tuple | None = None
    eta: float = 0
    source: str | None = None
    file: str | None = None
    out: str | None = None
    cache_dir: str | None = None
    use_cache: bool = True

    def cache(self) -> SeriesCache:
        return SeriesCache(self.cache_dir, enabled=self.use_cache)


def _number(text: str):
    """Parse ``3``, ``9/5`` or ``1.8`` exactly where possible."""
    text = text.strip()
    try:
        return Fraction(text) if "." not in text and "e" not in text.lower() else float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return format(float(x), ".17g")


def _exact(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if hasattr(x, "free_symbols"):
        return str(x)
    return None


def _entry(value, source: str):
    return {"value": float(value), "exact": _exact(value), "source": source}


def _check(name, value, expected, tol):
    value, expected = float(value), float(expected)
    return {"name": name, "value": value, "expected": expected, "tolerance": tol,
            "passed": bool(abs(value - expected) <= tol)}


def _write_csv(rows: Sequence[Sequence], header: Sequence[str], out) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) if not isinstance(v, str) else v for v in row])
    _emit(buffer.getvalue(), out)


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _check_order(config: ExperimentConfig, spec) -> None:
    limit = MAX_ORDER[spec.count_source]
    if config.N is None or not 1 <= config.N <= limit:
        raise UsageError(f"--n must lie in 1..{limit} for {spec.count_source} data")


def _spec(config: ExperimentConfig):
    source = "external-file" if config.file else config.source
    try:
        return model_spec(config.model, source)
    except ValueError as err:
        raise UsageError(str(err))


# -- coeffs ------------------------------------------------------------------


def cmd_coeffs(config: ExperimentConfig, what: str, fmt: str = "csv") -> list:
    """Coefficient table rows; also written to ``config.out`` (stdout by default)."""
    spec = _spec(config)
    _check_order(config, spec)
    N = config.N
    family = spec.family
    cache = config.cache()
    loops = family == "meander-q"
    if what == "counts":
        series = unweighted_series(family, N, config.source, config.file)
        header, rows = _poly_rows(series, "n", loops, drop_u=True)
    elif what == "blocks":
        b = block_counts(family, N, config.source, config.file)
        header, rows = _poly_rows([None] + b, "j", loops, drop_u=True, start=1)
    elif what == "correlator":
        b = block_counts(family, N, config.source, config.file)
        header, rows = _poly_rows(correlator_from_blocks(b), "j", loops, drop_u=True, start=1)
    elif what == "mu":
        series = weighted_series(family, N, config.source, config.file, cache)
        header, rows = _poly_rows(series, "n", loops)
    elif what == "two-point":
        if family not in TWO_POINT_FAMILIES:
            raise UsageError(f"two-point series available for {', '.join(TWO_POINT_FAMILIES)}")
        header, rows = _poly_rows(two_point_series(family, N, cache), "n", False)
    elif what == "components":
        if family not in ("meander", "meander-q"):
            raise UsageError("components are defined for meanders")
        table = brute_force_weighted_counts("meander-q", N)[N]
        by_loops: dict = {}
        for (_, k), c in table.terms.items():
            by_loops[k] = by_loops.get(k, 0) + c
        header, rows = ["n", "components", "count"], [(N, k, by_loops[k]) for k in sorted(by_loops)]
    else:
        raise UsageError(f"unknown table {what!r}")
    if fmt == "text":
        _emit("".join(" ".join(_fmt(v) for v in row) + "\n" for row in rows), config.out)
    else:
        _write_csv(rows, header, config.out)
    return rows


def _poly_rows(series, index: str, loops: bool, drop_u: bool = False, start: int = 0):
    """Long-format rows ``(index, [blocks,] [loops,] count)`` with zero counts omitted."""
    cols = [index]
    if not drop_u:
        cols.append("blocks")
    if loops:
        cols.append("loops")
    cols.append("count")
    rows = []
    for n, c in enumerate(series):
        if n < start or c is None:
            continue
        if not isinstance(c, Poly):
            rows.append((n, c) if drop_u else (n, 0, c))
            continue
        for exps, value in sorted(c.terms.items()):
            key = list(exps)
            if drop_u:
                key = key[1:] if len(key) > 1 else []
            rows.append((n, *key, value))
    return cols, rows


# -- critical ----------------------------------------------------------------


def _exponents_for(family: str, q):
    if family == "meander-q":
        c = crit.meander_central_charge(q if q is not None else 1)
        return crit.lqg_exponents(c)
    c, delta = CENTRAL_CHARGE[family]
    return crit.lqg_exponents(c, delta)


def cmd_critical(config: ExperimentConfig) -> dict:
    spec = _spec(config)
    family = spec.family
    report: dict = {"command": "critical", "inputs": {"model": family, "q": _maybe(config.q),
                                                      "file": config.file, "source": spec.count_source},
                    "results": {}, "checks": []}
    res, checks = report["results"], report["checks"]
    if family == "bicubic-hamiltonian" and not config.file:
        raise DataValidationError(
            "bicubic maps have no closed form: pass --file with at least 20 coefficients "
            "(one 'n m_n' pair per line); brute force alone stops at 12 arches")
    if config.file or family == "meander-q" or spec.count_source == "brute-force":
        data = _estimated_data(config, family)
        source = "external-file" if config.file else "brute-force"
    else:
        data = crit.critical_data(family)
        source = "closed-form"
    for name in ("u_cr", "g_1", "t_cr", "M1_at_g1", "M1prime_at_g1"):
        res[name] = _entry(getattr(data, name), source)
    res["g_c_at_ucr"] = _entry(data.g_c_at_ucr, source)
    res["g_cr_at_ucr"] = _entry(data.g_cr_of_u(data.u_cr), source)
    checks.append(_check("continuity g_cr(u_cr) = g_c(u_cr)", data.g_cr_of_u(data.u_cr), data.g_c_at_ucr, 1e-12))
    if data.curve is not None:
        t_c, g_c = crit.solve_tc(data.u_cr, data.curve)
        checks.append(_check("solve_tc(u_cr) returns t_cr", t_c, data.t_cr, 1e-10))
        checks.append(_check("solve_tc(u_cr) returns g_c(u_cr)", g_c, data.g_c_at_ucr, 1e-10))
    if family == "cubic-hamiltonian" or family == "cubic-open-path":
        checks.append(_check("u_cr closed form", data.u_cr, crit.cubic_ucrit_closed_form(), 1e-10))
        checks.append(_check("g_c closed form", data.g_c_at_ucr, crit.cubic_gc_closed_form(), 1e-10))
    if family == "meander":
        checks.append(_check("u_cr closed form", data.u_cr, crit.meander_ucrit_closed_form(), 1e-10))
        checks.append(_check("g_c closed form", data.g_c_at_ucr, crit.meander_gc_closed_form(), 1e-10))
    expo = _exponents_for(family, config.q)
    report["exponents"] = {name: {"value": value, "exact": _exact(getattr(expo, name))}
                           for name, value in expo.as_floats().items()}
    gamma, gamma_p = float(expo.gamma), float(expo.gamma_prime)
    checks.append(_check("gamma * gamma' = 4", gamma * gamma_p, 4, 1e-12))
    checks.append(_check("(1 - gamma_S)(1 - gamma_S') = 1",
                         (1 - float(expo.gamma_S)) * (1 - float(expo.gamma_S_prime)), 1, 1e-12))
    x = 0.3
    checks.append(_check("x = Delta_gamma(x) Delta_gamma'(x) at x = 0.3",
                         crit.kpz(x, gamma) * crit.kpz(x, gamma_p), x, 1e-12))
    report["passed"] = all(c["passed"] for c in checks)
    _emit(_json(report), config.out)
    return report


def _maybe(x):
    return None if x is None else _fmt(x)


def _estimated_data(config: ExperimentConfig, family: str):
    counts = unweighted_series(family, config.N or _default_order(config, family),
                               config.source, config.file)
    values = ex.evaluate_table(counts, 1, config.q if family == "meander-q" else None)
    if family == "meander-q" and config.q is None:
        values = ex.evaluate_table(counts, 1, 1)
    p = min(5, len(values) - 5)
    return crit.critical_data_from_counts(values, p=p,
                                          source="external-file" if config.file else "brute-force")


def _default_order(config: ExperimentConfig, family: str) -> int:
    if config.file:
        from .models import load_external_counts
        return len(load_external_counts(config.file)) - 1
    return 10


# -- estimate ----------------------------------------------------------------


def _resolve_u(value, family):
    if isinstance(value, str) and value == "ucr":
        return crit.critical_data(map_family(family)).u_cr
    return value


def cmd_estimate(config: ExperimentConfig, what: str = "mu") -> dict:
    spec = _spec(config)
    family = spec.family
    preset = config.preset or ex.PRESETS.get(_preset_name(family, what), (20, 5))
    N, p = preset
    config.N = N
    _check_order(config, spec)
    cache = config.cache()
    if what == "two-point":
        if family not in TWO_POINT_FAMILIES:
            raise UsageError(f"two-point series available for {', '.join(TWO_POINT_FAMILIES)}")
        series = two_point_series(family, N, cache)
    else:
        series = weighted_series(family, N, config.source, config.file, cache)
    rows, results = [], []
    for u in config.u_values or [1]:
        u_value = _resolve_u(u, family)
        window = ex.SequenceWindow(tuple(ex.evaluate_table(series, u_value, config.q)), what, config.eta)
        estimate = ex.np_estimate(window, N, p).estimate
        rows.append((u_value, estimate))
        results.append({"u": float(u_value), "u_label": u if isinstance(u, str) else _fmt(u),
                        "estimate": float(estimate)})
    if config.out:
        _write_csv(rows, ["u", "estimate"], config.out)
    report = {"command": "estimate",
              "inputs": {"model": family, "what": what, "N": N, "p": p, "eta": config.eta,
                         "q": _maybe(config.q), "source": spec.count_source, "file": config.file},
              "results": results}
    sys.stdout.write(_json(report))
    return report


def _preset_name(family: str, what: str) -> str:
    if what == "two-point":
        return "quad-two-point" if family == "quad-simple-blocks" else "open"
    return {"quad-simple-blocks": "quad", "cubic-hamiltonian": "cubic", "cubic-open-path": "open",
            "meander": "meander", "meander-q": "meander"}.get(family, "meander")


# -- profile -----------------------------------------------------------------


def cmd_profile(config: ExperimentConfig, r_min: float = 0.0, r_max: float = 4.0, points: int = 200,
                crosscheck: bool = False, fisher: Sequence[float] | None = None) -> dict:
    if points < 2 or r_max <= r_min or r_min < 0:
        raise UsageError("need r_max > r_min >= 0 and at least 2 points")
    grid = np.linspace(r_min, r_max, points)
    curve = prof.profile_curve(grid, crosscheck=crosscheck)
    header = ["r", "phi", "rho"] + (["phi_contour"] if crosscheck else [])
    rows = []
    for i, r in enumerate(curve.r_grid):
        row = [r, curve.phi_values[i], curve.rho_values[i]]
        if crosscheck:
            row.append(curve.contour_values[i])
        rows.append(row)
    _write_csv(rows, header, config.out)
    checks = curve.check()
    report = {"command": "profile",
              "inputs": {"r_min": r_min, "r_max": r_max, "points": points},
              "checks": [
                  {"name": "phi non-decreasing", "passed": checks["phi_monotone"]},
                  {"name": "0 <= phi <= 1", "passed": checks["phi_in_unit_interval"]},
                  {"name": "rho >= 0", "passed": checks["rho_nonnegative"]},
                  _check("phi(r_max) = 1", curve.phi_values[-1], 1, 1e-6),
              ]}
    if crosscheck:
        report["checks"].append(_check("contour form deviation", checks["max_contour_deviation"], 0, 1e-8))
    if fisher:
        lo, hi = fisher
        report["checks"].append(_check(f"Fisher exponent on [{lo}, {hi}]",
                                       prof.fisher_tail_exponent(lo, hi), 1.2, 0.06))
    report["passed"] = all(c["passed"] for c in report["checks"])
    # the CSV owns stdout unless it went to a file
    stream = sys.stdout if config.out not in (None, "-") else sys.stderr
    stream.write(_json(report))
    return report


# -- argument parsing --------------------------------------------------------


def _model(text: str) -> str:
    if text not in ALIASES and text not in FAMILIES:
        raise argparse.ArgumentTypeError(f"unknown model {text!r}")
    return text


def _u_value(text: str):
    return "ucr" if text == "ucr" else _number(text)


def _sweep(text: str) -> list:
    try:
        start, stop, step = (_number(x) for x in text.split(":"))
    except (ValueError, argparse.ArgumentTypeError):
        raise argparse.ArgumentTypeError("sweep must be START:STOP:STEP")
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError("sweep needs a positive step and STOP >= START")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blockmap", description="Block-weighted planar map enumeration and exponents.")
    parser.add_argument("--cache-dir", help="cache directory (default: $BLOCKMAP_CACHE or .cache)")
    parser.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def data_options(p):
        p.add_argument("--model", type=_model, required=True, help="quad, cubic, open, bicubic, meander, meander-q")
        p.add_argument("--source", choices=["closed-form", "brute-force", "external-file"])
        p.add_argument("--file", help="coefficient file ('n m_n' or 'n k m_nk' per line)")
        p.add_argument("--q", type=_number, help="loop weight for meander-q")
        p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("coeffs", help="coefficient tables")
    data_options(p)
    p.add_argument("--what", default="mu",
                   choices=["counts", "blocks", "correlator", "mu", "two-point", "components"])
    p.add_argument("--n", type=int, required=True, dest="N", help="largest size")
    p.add_argument("--format", choices=["csv", "text"], default="csv")

    p = sub.add_parser("critical", help="critical point and exponents")
    data_options(p)
    p.add_argument("--n", type=int, dest="N", help="number of terms to use for estimated data")

    p = sub.add_parser("estimate", help="(N, p)-estimates of exponents over u")
    data_options(p)
    p.add_argument("--what", default="mu", choices=["mu", "two-point"])
    p.add_argument("--u", type=_u_value, nargs="+", default=None, help="u values ('ucr' allowed)")
    p.add_argument("--sweep", type=_sweep, help="START:STOP:STEP")
    p.add_argument("--N", type=int, dest="N")
    p.add_argument("--p", type=int, dest="p")
    p.add_argument("--eta", type=float, default=0.0, help="log-correction power")

    p = sub.add_parser("profile", help="distance profile curve")
    p.add_argument("--rmin", type=float, default=0.0)
    p.add_argument("--rmax", type=float, default=4.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--crosscheck", action="store_true")
    p.add_argument("--fisher", type=float, nargs=2, metavar=("RMIN", "RMAX"))
    p.add_argument("--out", help="CSV path (default stdout)")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    common = dict(cache_dir=args.cache_dir, use_cache=not args.no_cache)
    if args.command == "profile":
        cmd_profile(ExperimentConfig("quad", out=args.out, **common), args.rmin, args.rmax,
                    args.points, args.crosscheck, args.fisher)
        return EXIT_OK
    config = ExperimentConfig(args.model, N=getattr(args, "N", None), q=args.q, source=args.source,
                              file=args.file, out=args.out, **common)
    if args.command == "coeffs":
        cmd_coeffs(config, args.what, args.format)
    elif args.command == "critical":
        cmd_critical(config)
    else:
        if (args.N is None) != (args.p is None):
            raise UsageError("--N and --p go together")
        if args.N is not None:
            config.preset = (args.N, args.p)
        config.u_values = (args.u or []) + (args.sweep or [])
        config.eta = args.eta
        cmd_estimate(config, args.what)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, CapExceededError, OutsideAssumptionsError) as err:
        print(f"blockmap: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except DataValidationError as err:
        print(f"blockmap: data error: {err}", file=sys.stderr)
        return EXIT_DATA
    except ConvergenceError as err:
        print(f"blockmap: no convergence: {err}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ValueError, OSError) as err:
        print(f"blockmap: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
