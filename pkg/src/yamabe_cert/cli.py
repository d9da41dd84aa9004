"""Command-line front end.

Exit codes: 0 when everything requested passes, 1 when something fails or
is indeterminate, 2 on usage or precondition errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certify import (
    BUILTIN_TAILS,
    DEFAULT_MAX_DEPTH,
    DEFAULT_PRECISION,
    certify_dimension,
    certify_interval,
    find_cbar,
)
from .errors import CertError, UsageError
from .exact import RatInterval, rational_str, to_rational

THREADS_ENV = "YAMABE_CERT_THREADS"
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CSV_HEADER = ["n", "d", "discrim_sign", "i1_sign", "iprime1_zero", "i2_sign", "j1_sign", "pass"]


def _exact_rational(text: str, what: str) -> Fraction:
    # certification inputs must be exact: "-1/10", not "-0.1"
    if any(ch in text for ch in ".eE"):
        raise UsageError(f"{what} must be an exact rational such as -1/10, got {text!r}")
    try:
        return to_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse {what} {text!r}: {exc}") from None


def _positive_rational(text: str, what: str) -> Fraction:
    try:
        value = to_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse {what} {text!r}: {exc}") from None
    if value <= 0:
        raise UsageError(f"{what} must be positive")
    return value


def load_tail(spec: str) -> tuple:
    """A built-in tail name or a file of rational strings (a_1 .. a_d).

    Files may separate entries by whitespace or commas; ``#`` starts a comment.
    """
    if spec in BUILTIN_TAILS:
        return BUILTIN_TAILS[spec]
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"unknown tail {spec!r}: not a built-in ({', '.join(BUILTIN_TAILS)}) or a file")
    tokens = []
    for line in path.read_text().splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(t for t in line.replace(",", " ").split() if t)
    if not tokens:
        raise UsageError(f"tail file {spec} is empty")
    try:
        return tuple(to_rational(t) for t in tokens)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad entry in tail file {spec}: {exc}") from None


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_certify(args) -> int:
    tail = load_tail(args.tail)
    precision = _positive_rational(args.precision, "precision")
    if args.tc_lo is not None or args.tc_hi is not None:
        if args.tc_lo is None or args.tc_hi is None:
            raise UsageError("--tc-lo and --tc-hi go together")
        if args.tc is not None:
            raise UsageError("give either --tc or --tc-lo/--tc-hi")
        lo, hi = _exact_rational(args.tc_lo, "--tc-lo"), _exact_rational(args.tc_hi, "--tc-hi")
        if lo > hi:
            raise UsageError("--tc-lo must not exceed --tc-hi")
        cert = certify_interval(args.n, tail, RatInterval(lo, hi), precision, args.max_depth)
    else:
        tc = _exact_rational(args.tc, "--tc") if args.tc is not None else Fraction(0)
        cert = certify_dimension(args.n, tail, tc)
    _emit(_dump(cert.to_dict(timing=args.timing)), args.output)
    return EXIT_PASS if cert.passed else EXIT_FAIL


def _table_row(job):
    n, tail = job
    try:
        return n, certify_dimension(n, tail, 0), None
    except CertError as exc:
        return n, None, str(exc)


def cmd_table(args) -> int:
    tail = load_tail(args.tail)
    if args.n_min > args.n_max:
        raise UsageError("empty n-range: --n-min exceeds --n-max")
    jobs = [(n, tail) for n in range(args.n_min, args.n_max + 1)]
    threads = args.threads or default_threads()
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
            rows = list(pool.map(_table_row, jobs))
    else:
        rows = [_table_row(j) for j in jobs]
    errors = [(n, msg) for n, _, msg in rows if msg]
    if errors:
        n, msg = errors[0]
        raise UsageError(f"n={n}: {msg}")
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for n, cert, _ in rows:
            w.writerow([
                n,
                cert.d,
                str(cert.discriminant_sign),
                str(cert.i1_sign),
                "true" if cert.verdicts.get("iprime1") == "pass" else "false",
                str(cert.idoubleprime1_sign),
                str(cert.j1_sign),
                "true" if cert.passed else "false",
            ])
        text = buf.getvalue()
    else:
        text = _dump({"version": __version__, "certificates": [c.to_dict(timing=args.timing) for _, c, _ in rows]})
    _emit(text, args.output)
    return EXIT_PASS if all(c.passed for _, c, _ in rows) else EXIT_FAIL


def cmd_cbar(args) -> int:
    tail = load_tail(args.tail)
    precision = _positive_rational(args.precision, "precision")
    res = find_cbar(args.n, tail, precision, max_depth=args.max_depth)
    _emit(_dump(res.to_dict(timing=args.timing)), args.output)
    return EXIT_PASS if res.certificate.passed else EXIT_FAIL


def cmd_search(args) -> int:
    from .search import DEFAULT_DENOMINATOR_CAP, SearchReport, search

    if args.budget <= 0:
        raise UsageError("--budget must be positive")
    try:
        tc = float(Fraction(args.tc))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --tc {args.tc!r}") from None
    cap = args.denominator_cap or DEFAULT_DENOMINATOR_CAP
    threads = args.threads or 1
    cands = search(args.d, args.n, args.budget, args.seed, tc=tc, denominator_cap=cap, n_jobs=threads)
    report = SearchReport(args.d, args.n, args.budget, args.seed, tc, cap, cands)
    _emit(_dump(report.to_dict(limit=args.top)), args.output)
    return EXIT_PASS if any(c.is_certified for c in cands) else EXIT_FAIL


def cmd_bubble_check(args) -> int:
    from .bubble import bubble_report

    try:
        tc = float(Fraction(args.tc))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --tc {args.tc!r}") from None
    if tc > 0:
        raise UsageError("--tc must be <= 0")
    checks = bubble_report(args.n, tc)
    _emit(_dump({"version": __version__, "checks": [c.to_dict() for c in checks]}), args.output)
    return EXIT_PASS if all(c.passed for c in checks) else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="yamabe-cert",
        description="Exact certificates for the I/J sign conditions of the boundary Yamabe blow-up construction.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, tail_default="paper-d6"):
        sp.add_argument("--tail", default=tail_default, help="paper-d6, chenwu-d1 or a file of rationals a_1..a_d")
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        sp.add_argument("--timing", action="store_true", help="include elapsed milliseconds (output no longer byte-stable)")

    sp = sub.add_parser("certify", help="certificate for one dimension")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--tc", help="rational T_c <= 0 (default 0, exact mode)")
    sp.add_argument("--tc-lo", help="interval mode: lower end of the T_c range")
    sp.add_argument("--tc-hi", help="interval mode: upper end of the T_c range")
    sp.add_argument("--precision", default=rational_str(DEFAULT_PRECISION), help="moment enclosure width target")
    sp.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    common(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("table", help="exact certificates over a range of n")
    sp.add_argument("--n-min", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--threads", type=int, default=None, help=f"worker processes (default ${THREADS_ENV} or CPU count)")
    common(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("cbar", help="certified bound c-bar on the boundary constant")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--precision", default="1/10000", help="relative accuracy of the bisection")
    sp.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    common(sp)
    sp.set_defaults(func=cmd_cbar)

    sp = sub.add_parser("search", help="search tails a_1..a_d with positive feasibility margin")
    sp.add_argument("--d", type=int, default=6)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--budget", type=int, default=20000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tc", default="0", help="T_c for the floating margin (floats allowed)")
    sp.add_argument("--denominator-cap", type=int, default=None)
    sp.add_argument("--top", type=int, default=20, help="number of candidates in the report")
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("bubble-check", help="floating diagnostics for the bubble")
    sp.add_argument("--n", type=int, default=35)
    sp.add_argument("--tc", default="-1/10")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_bubble_check)
    return p


_NEGATIVE_RATIONAL = re.compile(r"-\d+/\d+")


def _attach_negative_rationals(argv: list[str]) -> list[str]:
    # argparse takes "-1/10" for an option; glue it to the flag before it
    out = []
    for tok in argv:
        if _NEGATIVE_RATIONAL.fullmatch(tok) and out and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _attach_negative_rationals(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; keep 0 for --help/--version
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CertError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
