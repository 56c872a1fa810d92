"""Command-line front end: dump, figures, coeffs, verify.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import sys
from fractions import Fraction
from pathlib import Path

from . import closed_forms as cfm
from . import digits, figures, verify
from .config import RunConfig
from .errors import CapabilityError, DomainError

MAX_DUMP_ROWS = 10**6

# name -> (function of n and params, smallest valid n)
DUMP = {
    "v": (lambda n, a: digits.v(n), 0),
    "v2": (lambda n, a: digits.v2(n), 1),
    "s": (lambda n, a: digits.s_m(n, a.m), 0),
    "w": (lambda n, a: digits.w_m(n, a.m), 0),
    "ts": (lambda n, a: digits.ts_m(n, a.m), 1),
    "tw": (lambda n, a: digits.tw_m(n, a.m), 1),
    "mdc": (lambda n, a: digits.mdc_f(n, a.k), 0),
    "cw": (lambda n, a: digits.cw(n), 0),
    "tv": (lambda n, a: digits.tv(n), 1),
}


def format_value(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(int(x))


def _open_out(path: str | None):
    if path in (None, "-"):
        return sys.stdout, False
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", newline="\n"), True


def cmd_dump(args, parser) -> int:
    fn, lo = DUMP[args.seq]
    start = lo if args.from_ is None else args.from_
    stop = args.to if args.to is not None else start + 31
    if start < lo or stop < start:
        parser.error(f"dump {args.seq}: need {lo} <= --from <= --to")
    if stop - start + 1 > MAX_DUMP_ROWS:
        parser.error(f"dump: at most {MAX_DUMP_ROWS} rows")
    if args.m > digits.M_CAP or not 2 <= args.k <= digits.K_CAP:
        parser.error(f"dump: need --m <= {digits.M_CAP} and 2 <= --k <= {digits.K_CAP}")
    buf = io.StringIO()
    buf.write("n,value\n")
    try:
        for n in range(start, stop + 1):
            buf.write(f"{n},{format_value(fn(n, args))}\n")
    except (DomainError, CapabilityError) as exc:
        parser.error(str(exc))
    fh, close = _open_out(args.out)
    fh.write(buf.getvalue())
    if close:
        fh.close()
    return 0


def cmd_figures(args, parser) -> int:
    which = tuple(sorted(set(args.which)))
    if args.lg_min < 1 or args.lg_max <= args.lg_min:
        parser.error("figures: need 1 <= --lg-min < --lg-max")
    out = Path(args.out)
    for data in figures.figure_datasets(which, args.lg_min, args.lg_max, args.per_period):
        print(figures.write_csv(data, out))
    return 0


def coefficient_table(target: str, order: int, J: int) -> tuple[list[tuple], list[tuple[str, float]]]:
    """Rows (function, j, re, im, tail_bound), j = 0 holding the mean, and the means block."""
    if target == "ts":
        cf = cfm.ts_closed_form(order, J)
        means = [(f"f_{order}_{order - 1}_0", cf.term(1, order - 1).mean),
                 (f"f_{order}_{order - 1}_0 formula", cfm.f_mean_exact(order)),
                 ("constant", cf.constant)]
    elif target == "mdc":
        cf = cfm.mdc_closed_form(order, J)
        means = [(f"a_{order}_{order - 2}_0", cf.term(1, order - 2).mean), ("c_k", cf.constant)]
        if order >= 3:
            means.append((f"a_{order}_{order - 2}_0 formula", cfm.a_mean_exact(order)))
    elif order == 1:
        cf = cfm.tw1_closed_form(J)
        means = [("F_W1", cf.term(1, 0).mean), ("F_W0", cf.term(0, 0).mean), ("lg_n", cf.term(0, 1).mean)]
        means += [(f"{k} formula", v) for k, v in cfm.TW1_CONSTANTS.items()]
    else:
        cf = cfm.twm_closed_form(order, J)
        means = [(f"G_{order}", cf.term(1, 0).mean), (f"d_{order}", cf.info["d_M"])]
    rows = []
    for a, m in cf.keys():
        F = cf.term(a, m)
        name = f"n^{a} lg^{m}"
        rows.append((name, 0, F.mean, 0.0, F.tail_bound))
        for j, c in enumerate(F.coeffs, start=1):
            rows.append((name, j, c.real, c.imag, F.tail_bound))
    return rows, means


def cmd_coeffs(args, parser) -> int:
    order = args.k if args.target == "mdc" else args.m
    J = args.J if args.J is not None else (cfm.J_TWM if args.target == "tw" and order > 1 else cfm.J_DEFAULT)
    if J < 1:
        parser.error("coeffs: -J must be >= 1")
    try:
        rows, means = coefficient_table(args.target, order, J)
    except (DomainError, CapabilityError) as exc:
        parser.error(str(exc))
    fh, close = _open_out(args.out)
    fh.write("function,j,re,im,tail_bound\n")
    for name, j, re, im, tb in rows:
        fh.write(f"{name},{j},{re:.17g},{im:.17g},{tb:.17g}\n")
    fh.write("\nconstant,value\n")
    for name, value in means:
        fh.write(f"{name},{value:.17g}\n")
    if close:
        fh.close()
    return 0


def format_report(results) -> str:
    width = max([len(r.name) for r in results] + [5])
    lines = [f"{'check':<{width}}  {'measured':>12}  {'tolerance':>10}  result"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {r.measured:>12.4g}  {r.tolerance:>10.3g}  {'PASS' if r.passed else 'FAIL'}"
                     + (f"  ({r.detail})" if r.detail else ""))
    return "\n".join(lines)


def cmd_verify(args, parser) -> int:
    cfg = RunConfig.from_env(J=args.J, N=args.N)
    kw = {}
    if args.suite in ("ts", "tw", "twm") and args.m is not None:
        kw["M"] = args.m
    if args.suite == "mdc" and args.k is not None:
        kw["ks"] = (args.k,)
    try:
        results = verify.run_suite(args.suite, cfg, **kw)
    except (DomainError, CapabilityError) as exc:
        parser.error(str(exc))
    print(format_report(results))
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="digitalsums", description="Binary digital sums: exact values, Fourier closed forms, checks.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dump", help="write n,value CSV for an integer sequence")
    d.add_argument("seq", choices=sorted(DUMP))
    d.add_argument("--m", type=int, default=1)
    d.add_argument("--k", type=int, default=2)
    d.add_argument("--from", dest="from_", type=int)
    d.add_argument("--to", type=int)
    d.add_argument("--out", help="output file (default stdout)")
    d.set_defaults(func=cmd_dump)

    f = sub.add_parser("figures", help="write figure datasets as CSV")
    f.add_argument("--which", type=int, nargs="+", choices=(1, 2, 3), default=[1, 2, 3])
    f.add_argument("--out", default="figures")
    f.add_argument("--lg-min", type=int, default=1)
    f.add_argument("--lg-max", type=int, default=20)
    f.add_argument("--per-period", type=int, default=figures.PER_PERIOD)
    f.set_defaults(func=cmd_figures)

    c = sub.add_parser("coeffs", help="export Fourier coefficient tables")
    c.add_argument("target", choices=("mdc", "ts", "tw"))
    c.add_argument("--m", type=int, default=1)
    c.add_argument("--k", type=int, default=2)
    c.add_argument("-J", type=int)
    c.add_argument("--out")
    c.set_defaults(func=cmd_coeffs)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", choices=sorted(set(verify.SUITES) | {"ts2", "all"}))
    v.add_argument("--m", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("-J", type=int)
    v.add_argument("-N", type=int)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
