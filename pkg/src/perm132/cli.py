"""Command-line front end: tables, series, closed forms and the cross-check harness.

Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import cfengine, chebgf, permcore
from .bigseries import eval_y_one

log = logging.getLogger("perm132")

Row = Tuple[int, int, int]
COMMANDS = ("table", "series", "closed", "phi", "verify")
MODES = ("brute", "cf", "closed")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    k: int
    n: int = 0
    upto: bool = False
    r: Optional[int] = None
    mode: str = "cf"
    y_cap: Optional[int] = None
    format: str = "csv"
    n_max: int = 8

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.mode not in MODES:
            raise UsageError(f"unknown mode {self.mode!r}")
        if self.k < 1:
            raise UsageError("--k must be >= 1")
        if self.n < 0:
            raise UsageError("--n/--order must be >= 0")
        if self.r is not None and self.r < 0:
            raise UsageError("--r must be >= 0")
        if self.y_cap is not None and self.y_cap < 0:
            raise UsageError("--y-cap must be >= 0")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.mode == "brute":
            limit = permcore.MAX_SCAN_N if self.command == "phi" else permcore.MAX_ENUM_N
            if self.n > limit:
                raise UsageError(f"brute mode is limited to n <= {limit}")

    @property
    def lengths(self) -> range:
        return range(0, self.n + 1) if self.upto else range(self.n, self.n + 1)


# -- tables ------------------------------------------------------------------


def _closed_form(r: int, k: int) -> chebgf.RationalGF:
    if r <= k:
        return chebgf.f_closed(r, k)
    return chebgf.f_closed_extended(r, k)


def _closed_rs(config: RunConfig) -> List[int]:
    top = chebgf.extended_max_r(config.k)
    if config.r is None:
        return list(range(top + 1))
    if config.r > top:
        raise UsageError(
            f"closed forms exist for 0 <= r <= k = {config.k} and, in extended form, "
            f"for 1 <= r <= k(k+3)/2 = {top}; got r = {config.r}"
        )
    return [config.r]


def _rows_from_map(n: int, table: Dict[int, int], r: Optional[int]) -> List[Row]:
    return [(n, rr, c) for rr, c in sorted(table.items()) if r is None or rr == r]


def run_table(config: RunConfig) -> List[Row]:
    """Rows (n, r, f_n^r(k)) with non-zero count, sorted by (n, r)."""
    rows: List[Row] = []
    if config.mode == "brute":
        for n in config.lengths:
            rows += _rows_from_map(n, permcore.brute_table(n, config.k), config.r)
    elif config.mode == "cf":
        series = cfengine.cf_F(config.k, config.n, config.y_cap)
        for n in config.lengths:
            rows += _rows_from_map(n, series.row(n), config.r)
    else:
        for r in _closed_rs(config):
            coeffs = chebgf.expand(_closed_form(r, config.k), config.n)
            rows += [(n, r, coeffs[n]) for n in config.lengths if coeffs[n]]
    return sorted(rows)


def run_series(config: RunConfig) -> List[Row]:
    """Coefficients of F(x, y; k) from the continued fraction through x^n.

    With ``r`` set, every n in 0..order is listed, zeros included.
    """
    series = cfengine.cf_F(config.k, config.n, config.y_cap)
    if config.r is not None:
        return [(n, config.r, c) for n, c in enumerate(series.y_slice(config.r))]
    return list(series.items())


def run_closed(config: RunConfig) -> List[Row]:
    if config.r is None:
        raise UsageError("closed needs --r")
    (r,) = _closed_rs(config)
    return [(n, r, c) for n, c in enumerate(chebgf.expand(_closed_form(r, config.k), config.n))]


def run_phi(config: RunConfig) -> List[Row]:
    """phi_n^r(k): permutations with exactly one 132 and r copies of 12...k."""
    k = config.k
    if config.mode == "brute":
        rows: List[Row] = []
        for n in config.lengths:
            rows += _rows_from_map(n, permcore.brute_one132_table(n, k), config.r)
        return rows
    if config.mode == "closed":
        if config.r not in (None, 0):
            raise UsageError("phi closed form exists only for r = 0")
        if k < 3:
            raise UsageError("phi closed form needs k >= 3")
        coeffs = chebgf.expand(chebgf.phi0_closed(k), config.n)
        return [(n, 0, coeffs[n]) for n in config.lengths if coeffs[n]]
    if k < 2:
        raise UsageError("phi needs k >= 2")
    series = cfengine.omega_series(k, config.n, config.y_cap)
    rows = []
    for n in config.lengths:
        rows += _rows_from_map(n, series.row(n), config.r)
    return rows


# -- output ------------------------------------------------------------------


def format_rows(k: int, rows: Sequence[Row], fmt: str) -> str:
    if fmt == "json":
        doc = {"k": k, "rows": [{"n": n, "r": r, "count": str(c)} for n, r, c in rows]}
        return canonical_json(doc) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "r", "count"])
    w.writerows(rows)
    return buf.getvalue()


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# -- verification ------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    methods: Tuple[str, str]
    compared: int
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: {self.methods[0]} vs {self.methods[1]}, {self.compared} values compared"
        if self.detail:
            text += f"; {self.detail}"
        return text


@dataclass
class VerifyReport:
    k: int
    n_max: int
    order: int
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def text(self) -> str:
        head = f"verify k={self.k} n_max={self.n_max} order={self.order}"
        tail = "all checks passed" if self.passed else "MISMATCH"
        return "\n".join([head] + [c.line() for c in self.checks] + [tail]) + "\n"


def _compare(
    name: str,
    methods: Tuple[str, str],
    left: Dict[Tuple[int, int], int],
    right: Dict[Tuple[int, int], int],
) -> CheckResult:
    """Compare two sparse coefficient maps keyed by (n, r); zeros may be omitted."""
    keys = sorted(set(left) | set(right))
    for key in keys:
        a, b = left.get(key, 0), right.get(key, 0)
        if a != b:
            return CheckResult(
                name, methods, len(keys), False,
                f"first mismatch at (n, r) = {key}: {methods[0]} = {a}, {methods[1]} = {b}",
            )
    return CheckResult(name, methods, len(keys), True)


def _as_map(rows: Iterable[Row]) -> Dict[Tuple[int, int], int]:
    return {(n, r): c for n, r, c in rows if c}


def _slice_map(coeffs: Sequence[int], r: int) -> Dict[Tuple[int, int], int]:
    return {(n, r): c for n, c in enumerate(coeffs) if c}


def _timed(fn: Callable[[], CheckResult]) -> CheckResult:
    t0 = time.perf_counter()
    res = fn()
    res.seconds = time.perf_counter() - t0
    return res


def run_verify(k: int, n_max: int = 8, order: int = 20, y_cap: Optional[int] = None) -> VerifyReport:
    """Run every cross-check available for pattern length ``k``.

    ``n_max`` bounds the exhaustive routes, ``order`` the series routes.
    ``y_cap`` is applied to the continued-fraction side of the checks that
    only look at low y-degrees; it is ignored where all y-degrees matter.
    """
    if k < 1:
        raise UsageError("k must be >= 1")
    if not 0 <= n_max <= permcore.MAX_ENUM_N:
        raise UsageError(f"n_max must lie in 0..{permcore.MAX_ENUM_N}")
    if order < 0:
        raise UsageError("order must be >= 0")
    report = VerifyReport(k, n_max, order)
    add = report.checks.append
    big = max(order, n_max)
    F = cfengine.cf_F(k, big)
    brute = {n: permcore.brute_table(n, k) for n in range(n_max + 1)}

    def brute_vs_cf():
        left = {(n, r): c for n in brute for r, c in brute[n].items()}
        right = {(n, r): c for n, r, c in F.items() if n <= n_max}
        return _compare("brute=cf", ("brute", "cf_F"), left, right)

    def profiles_vs_brute():
        left = {(n, r): c for n in brute for r, c in brute[n].items()}
        right = {(n, r): c for n in range(n_max + 1) for r, c in permcore.decomposition_table(n, k).items()}
        return _compare("decomposition=brute", ("brute", "max-split recurrence"), left, right)

    def split_identity():
        # every 132-avoider: profile(pi) must equal combine(profile(left), profile(right))
        checked = 0
        for n in range(1, min(n_max, 9) + 1):
            for pi in permcore.enumerate_132_avoiding(n):
                left, right = permcore.split_at_max(pi)
                direct = tuple(permcore.count_occurrences(pi, j) for j in range(k + 1))
                lp = tuple(permcore.count_occurrences(left, j) for j in range(k + 1))
                rp = tuple(permcore.count_occurrences(right, j) for j in range(k + 1))
                combined = permcore.combine_profiles(lp, rp)
                checked += 1
                if combined != direct:
                    return CheckResult(
                        "max-split identity", ("direct count", "split recurrence"), checked, False,
                        f"first mismatch at pi = {tuple(pi)}: direct = {direct[1:]}, split = {combined[1:]}",
                    )
        return CheckResult("max-split identity", ("direct count", "split recurrence"), checked, True)

    def cf_vs_ladder():
        S = cfengine.s_ladder(k, order)
        return _compare("cf=ladder", ("cf_F", "s_ladder"), F.truncate(order).terms, S.terms)

    def closed_vs_cf():
        top = chebgf.extended_max_r(k)
        Fc = F if y_cap is None else cfengine.cf_F(k, order, max(y_cap, top))
        left: Dict[Tuple[int, int], int] = {}
        right: Dict[Tuple[int, int], int] = {}
        for r in range(0, top + 1):
            left.update(_slice_map(Fc.y_slice(r)[: order + 1], r))
            right.update(_slice_map(chebgf.expand(_closed_form(r, k), order), r))
        res = _compare("closed=cf", ("cf_F", "closed form"), left, right)
        if res.passed:
            for r in range(1, k + 1):
                if chebgf.f_closed_extended(r, k) != chebgf.f_closed(r, k):
                    res = CheckResult("closed=cf", ("f_closed", "f_closed_extended"), res.compared, False,
                                      f"rational forms disagree at r = {r}")
                    break
        return res

    def catalan_sums():
        left = {(n, 0): c for n, c in enumerate(eval_y_one(F)) if n <= order}
        right = {(n, 0): permcore.catalan(n) for n in range(order + 1)}
        return _compare("catalan sums", ("cf_F at y=1", "Catalan recurrence"), left, right)

    def chebyshev():
        bad = [n for n in range(2, max(order, k) + 2) if not chebgf.cheb_identity_residual(n).is_zero()]
        total = max(order, k)
        if bad:
            return CheckResult("chebyshev identity", ("b_{n-1}^2 - b_n b_{n-2}", "x^{n-1}"), total, False,
                               f"first failing n = {bad[0]}")
        return CheckResult("chebyshev identity", ("b_{n-1}^2 - b_n b_{n-2}", "x^{n-1}"), total, True)

    def approximant():
        cap = chebgf.extended_max_r(k) if y_cap is None else y_cap
        left = cfengine.cf_F(k, order, cap)
        right = chebgf.approximant_series(k, order, cap)
        return _compare("approximant form", ("cf_F", "R_k + (R_k - R_{k-1}) sum (x R_k G)^m"), left.terms, right.terms)

    checks = [brute_vs_cf, profiles_vs_brute, split_identity, cf_vs_ladder, closed_vs_cf, catalan_sums,
              chebyshev, approximant]

    if k >= 3:
        scan_n = min(n_max, 9)

        def phi_closed_vs_omega():
            om = cfengine.omega_series(k, order, 0)
            return _compare("phi0 closed=omega", ("omega_series", "phi0_closed"),
                            _slice_map(om.y_slice(0), 0), _slice_map(chebgf.expand(chebgf.phi0_closed(k), order), 0))

        def omega_vs_brute():
            om = cfengine.omega_series(k, scan_n)
            left = {(n, r): c for n in range(scan_n + 1) for r, c in permcore.brute_one132_table(n, k).items()}
            return _compare("omega=brute", ("brute S_n scan", "omega_series"), left, om.terms)

        checks += [phi_closed_vs_omega, omega_vs_brute]

    for check in checks:
        res = _timed(check)
        log.info("%s (%.2fs)", res.line(), res.seconds)
        add(res)
    return report


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="perm132",
        description="Count 132-avoiding permutations by occurrences of 12...k.",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, order_name="--n"):
        sp.add_argument("--k", type=int, required=True, help="pattern length k >= 1")
        sp.add_argument(order_name, dest="n", type=int, required=True)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", help="write data here instead of stdout")

    t = sub.add_parser("table", help="f_n^r(k) for one length n (or 0..n with --upto)")
    common(t)
    t.add_argument("--upto", action="store_true", help="emit all lengths 0..n")
    t.add_argument("--mode", choices=MODES, default="cf")
    t.add_argument("--r", type=int)
    t.add_argument("--y-cap", type=int)

    s = sub.add_parser("series", help="coefficients of F(x, y; k) through x^order")
    common(s, "--order")
    s.add_argument("--r", type=int)
    s.add_argument("--y-cap", type=int)

    c = sub.add_parser("closed", help="expand the Chebyshev closed form of F_r(x; k)")
    common(c, "--order")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--rational", action="store_true", help="print numerator / denominator instead")

    ph = sub.add_parser("phi", help="phi_n^r(k): exactly one 132 occurrence")
    common(ph)
    ph.add_argument("--upto", action="store_true")
    ph.add_argument("--mode", choices=MODES, default="cf")
    ph.add_argument("--r", type=int)
    ph.add_argument("--y-cap", type=int)

    v = sub.add_parser("verify", help="run every cross-check for one k")
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--n-max", type=int, default=8)
    v.add_argument("--order", type=int, default=20)
    v.add_argument("--y-cap", type=int)
    v.add_argument("--out")
    return p


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "verify":
            report = run_verify(args.k, args.n_max, args.order, args.y_cap)
            _emit(report.text(), args.out)
            return 0 if report.passed else 1
        config = RunConfig(
            command=args.command,
            k=args.k,
            n=args.n,
            upto=getattr(args, "upto", False),
            r=args.r,
            mode=getattr(args, "mode", "cf"),
            y_cap=getattr(args, "y_cap", None),
            format=args.format,
        )
        if args.command == "closed" and args.rational:
            (r,) = _closed_rs(config)
            f = _closed_form(r, config.k)
            _emit(f"{f.num.coeffs}\n{f.den.coeffs}\n", args.out)
            return 0
        runner = {"table": run_table, "series": run_series, "closed": run_closed, "phi": run_phi}[args.command]
        rows = runner(config)
    except (UsageError, chebgf.ClosedFormRangeError, permcore.CapacityError) as exc:
        print(f"perm132: error: {exc}", file=sys.stderr)
        return 2
    _emit(format_rows(config.k, rows, config.format), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
