"""Command-line surface: counting, bounds, eigenvalues, tables, the tiling
bijection, and the verification battery.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 guard exceeded,
4 power iteration did not converge, 5 bad input file.  Exact counts are
serialized as decimal strings in JSON (they outgrow doubles quickly);
floats appear only for eigenvalues and asymptotics.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import closedforms as cf
from . import tiling as tl
from . import verify as vf
from .errors import (GuardExceeded, IllegalMatrix, InvalidTiling,
                     MatrixFormatError, NonConverged)
from .oracle import (L_SET, M_SET, U_SET, BinaryMatrix, count_by_enumeration,
                     uk_set)
from .transfer import (DEFAULT_MAX_ITER, DEFAULT_TOL, count_sequence,
                       count_via_transfer, dominant_eigenvalue,
                       spectrum_small)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_GUARD = 3
EXIT_NONCONVERGED = 4
EXIT_BAD_INPUT = 5

_PATTERNS = {"M": M_SET, "U": U_SET, "L": L_SET}


class UsageError(Exception):
    pass


def _record(command: str, **fields) -> dict:
    """OutputRecord with a stable key order; None fields are dropped and
    annotations always present."""
    record: dict = {"command": command}
    for key in ("quantity", "m", "n", "k", "method", "value"):
        if key in fields and fields[key] is not None:
            record[key] = fields[key]
    for key, value in fields.items():
        if key in ("quantity", "m", "n", "k", "method", "value"):
            continue
        if value is not None:
            record[key] = value
    record["annotations"] = list(fields.get("annotations") or ())
    return record


def _emit(record: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(record))
        return
    quantity = record.get("quantity", "")
    if "m" in record and "n" in record:
        label = f"{quantity}({record['m']},{record['n']})"
    elif "m" in record:
        label = f"{quantity}({record['m']})"
    else:
        label = quantity
    print(f"{label} = {record['value']}")
    for note in record["annotations"]:
        print(f"note: {note}")


def _closed_count_M(m: int, n: int) -> tuple[int, tuple[str, ...]]:
    if m <= 3:
        return cf.closed_form_M(m, n), ()
    if m <= 6:
        result = cf.shape_formula_M(m, n)
        return result.value, result.annotations
    if n <= 6:
        value, annotations = _closed_count_M(n, m)
        return value, annotations
    raise GuardExceeded(
        f"no closed form covers height {m}; use --method transfer",
        hint="transfer")


def _count_value(quantity: str, m: int, n: int, k: int | None,
                 method: str) -> tuple[str, int, tuple[str, ...]]:
    """Resolve (method_used, value, annotations) for a count request."""
    annotations: tuple[str, ...] = ()
    if quantity == "Uk":
        if method in ("auto", "closed"):
            return "closed", cf.upper_bound_U_k(m, n, k), ()
        if method == "oracle":
            return "oracle", count_by_enumeration(m, n, uk_set(k)), ()
        raise UsageError(
            f"method {method!r} does not support diagonal runs; "
            "use auto, closed or oracle")
    pats = _PATTERNS[quantity]
    if method == "oracle":
        return "oracle", count_by_enumeration(m, n, pats), ()
    if method == "decomposition":
        if quantity != "M":
            raise UsageError("--method decomposition applies to quantity M only")
        if m == 0 or n == 0:
            return "decomposition", 1, ()
        from .decomposition import count_independent_sets, split_by_color
        black, white = split_by_color(m, n)
        b = count_independent_sets(black, guard=100)
        w = count_independent_sets(white, guard=100)
        return "decomposition", b * w, (f"black/white shape counts: B={b}, W={w}",)
    if m == 0 or n == 0:
        return method if method != "auto" else "closed", 1, ()
    if method == "closed" or method == "auto":
        try:
            if quantity == "M":
                value, annotations = _closed_count_M(m, n)
            elif quantity == "U":
                value = cf.upper_bound_U(m, n)
            else:
                if m <= 3:
                    value = cf.closed_form_L(m, n)
                elif n <= 3:
                    value = cf.closed_form_L(n, m)
                else:
                    raise GuardExceeded(
                        f"no closed form covers height {m}; use --method transfer",
                        hint="transfer")
            return "closed", value, annotations
        except GuardExceeded:
            if method == "closed":
                raise
    # transfer (direct or auto fallback); M and L counts are transpose
    # symmetric, so run the sweep over the smaller height
    if quantity in ("M", "L") and n < m:
        m, n = n, m
    if m > 22:
        raise GuardExceeded(
            f"transfer at height {m} needs 2^{m} states; no exact route "
            "covers this size", hint=None)
    return "transfer", count_via_transfer(m, n, pats), ()


def cmd_count(args) -> int:
    if args.m < 0 or args.n < 0:
        raise UsageError("dimensions must be nonnegative")
    quantity = args.quantity
    k = args.k
    if k is not None:
        if quantity != "U":
            raise UsageError("--k applies to --quantity U (diagonal runs) only")
        quantity = "Uk"
    method, value, annotations = _count_value(quantity, args.m, args.n, k,
                                              args.method)
    record = _record("count", quantity=quantity, m=args.m, n=args.n, k=k,
                     method=method, value=str(value), annotations=annotations)
    _emit(record, args.json)
    return EXIT_OK


def cmd_eigen(args) -> int:
    if args.m < 1:
        raise UsageError("-m must be >= 1")
    value = dominant_eigenvalue(args.m, M_SET, tol=args.tol,
                                max_iter=args.max_iter)
    extra = {}
    if args.spectrum:
        extra["spectrum"] = [float(v) for v in spectrum_small(args.m, M_SET)]
    record = _record("eigen", quantity="alpha", m=args.m, method="power-iteration",
                     value=value, **extra, annotations=())
    if args.json:
        print(json.dumps(record))
    else:
        print(f"alpha({args.m}) = {value!r}")
        if args.spectrum:
            print("spectrum:", " ".join(f"{v:.12g}" for v in extra["spectrum"]))
    return EXIT_OK


def _table_cells(quantity: str, max_m: int, max_n: int) -> list[tuple[int, int, int]]:
    out = []
    pats = _PATTERNS[quantity]
    for m in range(1, max_m + 1):
        closed = (quantity == "U" or (quantity == "M" and m <= 6)
                  or (quantity == "L" and m <= 3))
        seq = None if closed else count_sequence(m, max_n, pats)
        for n in range(1, max_n + 1):
            if seq is not None:
                value = seq[n]
            else:
                _, value, _ = _count_value(quantity, m, n, None, "closed")
            out.append((m, n, value))
    return out


def cmd_table(args) -> int:
    if args.max_m < 1 or args.max_n < 1:
        raise UsageError("--max-m and --max-n must be >= 1")
    cells = _table_cells(args.quantity, args.max_m, args.max_n)
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["m", "n", "quantity", "value"])
        for m, n, value in cells:
            writer.writerow([m, n, args.quantity, str(value)])
    elif args.format == "json":
        rows = [{"m": m, "n": n, "quantity": args.quantity, "value": str(value)}
                for m, n, value in cells]
        print(json.dumps(rows))
    else:
        values = {(m, n): value for m, n, value in cells}
        header = ["m\\n"] + [str(n) for n in range(1, args.max_n + 1)]
        print("| " + " | ".join(header) + " |")
        print("|" + "|".join([" --- "] * len(header)) + "|")
        for m in range(1, args.max_m + 1):
            row = [str(m)] + [str(values[(m, n)]) for n in range(1, args.max_n + 1)]
            print("| " + " | ".join(row) + " |")
    return EXIT_OK


def cmd_bijection(args) -> int:
    if (args.matrix_file is None) == (args.tiling_json is None):
        raise UsageError("give exactly one of --matrix-file or --tiling-json")
    if args.invert and args.matrix_file is not None:
        raise UsageError("--invert takes a tiling (--tiling-json), not a matrix")
    if args.matrix_file is not None:
        text = Path(args.matrix_file).read_text()
        matrix = BinaryMatrix.from_text(text)
        result = tl.theta_forward(matrix)
        if args.ascii_art:
            print(tl.render_ascii(result))
        else:
            print(tl.tiling_to_json(result))
    else:
        text = Path(args.tiling_json).read_text()
        tiling = tl.tiling_from_json(text)
        print(tl.theta_inverse(tiling).to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    report = vf.run_verification(args.level)
    if args.json:
        print(json.dumps(report.to_dict()))
    else:
        for check in report.checks:
            status = "PASS" if check.passed else "FAIL"
            print(f"[{status}] {check.name}: {check.details}")
            for deviation in check.deviations:
                print(f"       {deviation}")
        print(f"verification {'passed' if report.passed else 'FAILED'} "
              f"({sum(c.passed for c in report.checks)}/{len(report.checks)} "
              f"checks, level={args.level})")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pawncount",
        description="Exact counting of nonattacking pawn placements and "
                    "related pattern-avoiding binary matrices.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_count = sub.add_parser("count", help="count placements for one board")
    p_count.add_argument("-m", type=int, required=True, help="rows")
    p_count.add_argument("-n", type=int, required=True, help="columns")
    p_count.add_argument("--quantity", choices=("M", "U", "L"), default="M")
    p_count.add_argument("--k", type=int, default=None,
                         help="diagonal run length (quantity U only)")
    p_count.add_argument("--method",
                         choices=("auto", "oracle", "transfer", "closed",
                                  "decomposition"),
                         default="auto")
    p_count.add_argument("--json", action="store_true")
    p_count.set_defaults(func=cmd_count)

    p_eigen = sub.add_parser("eigen", help="dominant transfer eigenvalue")
    p_eigen.add_argument("-m", type=int, required=True)
    p_eigen.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_eigen.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p_eigen.add_argument("--spectrum", action="store_true",
                         help="also print the full spectrum (dense sizes only)")
    p_eigen.add_argument("--json", action="store_true")
    p_eigen.set_defaults(func=cmd_eigen)

    p_table = sub.add_parser("table", help="grid of exact counts")
    p_table.add_argument("--quantity", choices=("M", "U", "L"), default="M")
    p_table.add_argument("--max-m", type=int, default=6)
    p_table.add_argument("--max-n", type=int, default=10)
    p_table.add_argument("--format", choices=("markdown", "csv", "json"),
                         default="markdown")
    p_table.set_defaults(func=cmd_table)

    p_bij = sub.add_parser("bijection",
                           help="matrix -> tiling (or back with --invert)")
    p_bij.add_argument("--matrix-file", default=None,
                       help="matrix text file; emits tiling JSON")
    p_bij.add_argument("--tiling-json", default=None,
                       help="tiling JSON file; emits matrix text")
    p_bij.add_argument("--invert", action="store_true",
                       help="apply the inverse map (implied by --tiling-json)")
    p_bij.add_argument("--ascii", dest="ascii_art", action="store_true",
                       help="render the tiling as ASCII blocks instead of JSON")
    p_bij.set_defaults(func=cmd_bijection)

    p_verify = sub.add_parser("verify", help="run the cross-validation battery")
    p_verify.add_argument("--level", choices=("quick", "full"), default="quick")
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except NonConverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (IllegalMatrix, InvalidTiling, MatrixFormatError, OSError) as exc:
        position = getattr(exc, "position", None)
        where = f" at {position}" if position else ""
        print(f"error: {exc}{where}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
