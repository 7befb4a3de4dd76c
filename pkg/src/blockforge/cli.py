"""Command-line front end.

    blockforge report --p 3 --m 2 --n 1 --l 1 --e 2 --format json
    blockforge scan --primes 3,5 --max-order 729
    blockforge verify
    blockforge table --p 3 --m 2
    blockforge lattice roots --r 4 --value 2

Exit status: 0 ok, 1 invalid input, 2 budget exceeded, 3 consistency violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import acceptance, lattice
from .characters import irr_table
from .errors import BlockforgeError, InvalidParameters
from .fusion import make_block
from .group_core import make_params
from .report import BRUTE_FORCE_MODES, build_report, iter_reports, render, render_stream

FORMATS = ("json", "csv", "text")
DEFAULT_PRIMES = (3, 5, 7)
DEFAULT_MAX_ORDER = 5**5


def _primes(text: str) -> tuple[int, ...]:
    if text.strip() == "":
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; we reserve 2 for budget errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_group_args(sp) -> None:
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--e", type=int, default=1, help="inertial index, divides p - 1 (default 1)")


def _add_common(sp) -> None:
    sp.add_argument("--format", choices=FORMATS, default="text")
    sp.add_argument("--budget", type=_positive, default=None,
                    help="enumeration budget (overrides BLOCKFORGE_BUDGET)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blockforge", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rp = sub.add_parser("report", help="full report for one block")
    _add_group_args(rp)
    _add_common(rp)
    rp.add_argument("--brute-force", choices=BRUTE_FORCE_MODES, default="auto")

    sc = sub.add_parser("scan", help="reports for every valid block up to an order")
    sc.add_argument("--primes", type=_primes, default=DEFAULT_PRIMES)
    sc.add_argument("--max-order", type=_positive, default=DEFAULT_MAX_ORDER)
    sc.add_argument("--jobs", type=_positive, default=1)
    _add_common(sc)
    sc.add_argument("--brute-force", choices=BRUTE_FORCE_MODES, default="auto")

    sub.add_parser("verify", help="run the acceptance suite")

    tb = sub.add_parser("table", help="character table of M_{p^(m+1)} as CSV")
    tb.add_argument("--p", type=int, required=True)
    tb.add_argument("--m", type=int, required=True)
    tb.add_argument("--budget", type=_positive, default=None)

    lt = sub.add_parser("lattice", help="integral lattice searches")
    lsub = lt.add_subparsers(dest="lattice_command", required=True, parser_class=_Parser)
    ro = lsub.add_parser("roots", help="solutions of q(a) = v for the A_r form")
    ro.add_argument("--r", type=_positive, required=True)
    ro.add_argument("--value", type=int, choices=(1, 2), required=True)
    de = lsub.add_parser("deficits", help="r with p^2 not a sum of p^2 - r positive squares")
    de.add_argument("--p", type=int, required=True)
    de.add_argument("--cap", type=_positive, required=True)
    he = lsub.add_parser("heights", help="height profiles for the k_0 equation")
    he.add_argument("--p", type=int, required=True)
    he.add_argument("--unfiltered", action="store_true")
    fo = lsub.add_parser("forms", help="reduced positive definite binary forms")
    fo.add_argument("--det", type=int, required=True)
    fo.add_argument("--divisors", type=_primes, default=None,
                    help="elementary divisors d1,d2 to filter by")
    for sp in (ro, de, he, fo):
        sp.add_argument("--format", choices=FORMATS, default="text")
    return parser


def _records(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in rows)
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\r\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        return buf.getvalue()
    return "".join(" ".join(f"{k}={v}" for k, v in r.items()) + "\n" for r in rows)


def cmd_report(args, out) -> int:
    block = make_block(args.p, args.m, args.n, args.l, args.e)
    out.write(render(build_report(block, args.budget, args.brute_force), args.format))
    return 0


def cmd_scan(args, out) -> int:
    docs = iter_reports(args.primes, args.max_order, args.budget, args.brute_force, args.jobs)
    for chunk in render_stream(docs, args.format):
        out.write(chunk)
        out.flush()
    return 0


def cmd_verify(args, out) -> int:
    failed = 0
    for outcome in acceptance.run_all():
        out.write(outcome.line() + "\n")
        out.flush()
        failed += not outcome.ok
    out.write(f"{len(acceptance.CRITERIA) - failed}/{len(acceptance.CRITERIA)} criteria passed\n")
    return 0 if failed == 0 else 3


def cmd_table(args, out) -> int:
    params = make_params(args.p, args.m, 1, args.m - 1)
    out.write(irr_table(params, args.budget).to_csv())
    return 0


def cmd_lattice(args, out) -> int:
    fmt = args.format
    if args.lattice_command == "roots":
        rows = [
            {"vector": list(s.vector), "shape": s.shape.value}
            for s in lattice.q_solutions(args.r, args.value)
        ]
    elif args.lattice_command == "deficits":
        rows = [{"deficit": r} for r in sorted(lattice.forbidden_deficits(args.p, args.cap))]
    elif args.lattice_command == "heights":
        rows = [
            {"profile": {str(i): r for i, r in h.counts}, "residue_sum": h.residue_sum(args.p)}
            for h in lattice.height_profile_solutions(args.p, filtered=not args.unfiltered)
        ]
    else:
        divisors = None
        if args.divisors is not None:
            if len(args.divisors) != 2:
                raise InvalidParameters("--divisors takes exactly two integers")
            divisors = tuple(args.divisors)
        rows = [
            {"a": f.a, "b": f.b, "c": f.c}
            for f in lattice.reduced_binary_forms(args.det, divisors)
        ]
    out.write(_records(rows, fmt))
    return 0


COMMANDS = {
    "report": cmd_report,
    "scan": cmd_scan,
    "verify": cmd_verify,
    "table": cmd_table,
    "lattice": cmd_lattice,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except BlockforgeError as exc:
        print(f"blockforge: {exc}", file=sys.stderr)
        return exc.exit_code
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
