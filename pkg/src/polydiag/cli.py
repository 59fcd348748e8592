"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 an internal identity failed. Every
error is reported as a single JSON line on stderr, for example::

    {"error": "validation", "field": "m", "message": "m must be a positive integer, got 0"}
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from enum import Enum
from typing import Callable, Iterable, TextIO

from polydiag import counting, hodge, limits, partitions, strata, trees
from polydiag.errors import IdentityError, ValidationError
from polydiag.partitions import IntegerPartition

STREAM_LIMIT_N = 7  # enumerations beyond this n must be bounded with --limit


class OutputFormat(str, Enum):
    TABLE = "table"
    JSON = "json"
    CSV = "csv"
    DOT = "dot"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; here that code means a failed identity
    def error(self, message):
        raise _UsageError(message)


def _formats(p: argparse.ArgumentParser, *allowed: OutputFormat, default=OutputFormat.TABLE):
    p.add_argument("--format", choices=[f.value for f in allowed], default=default.value)


def _positive(name: str) -> Callable[[str], int]:
    def conv(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {text!r}") from None
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be positive, got {v}")
        return v

    conv.__name__ = name
    return conv


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="polydiag", description="Strata, trees and Hodge polynomials of polydiagonal compactifications.")
    sub = top.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="strata counts").add_subparsers(dest="what", required=True)
    p = count.add_parser("table", help="strata counts of both compactifications")
    p.add_argument("--max-n", type=_positive("max-n"), required=True)
    _formats(p, OutputFormat.TABLE, OutputFormat.CSV, OutputFormat.JSON)
    p = count.add_parser("strata", help="strata of X<n>, by codimension")
    p.add_argument("--n", type=_positive("n"), required=True)
    p.add_argument("--codim", type=int)
    _formats(p, OutputFormat.TABLE, OutputFormat.JSON)

    p = sub.add_parser("enumerate", help="stream partitions, chains or nests")
    p.add_argument("kind", choices=["partitions", "chains", "nests"])
    p.add_argument("--n", type=_positive("n"), required=True)
    p.add_argument("--limit", type=_positive("limit"))
    _formats(p, OutputFormat.TABLE, OutputFormat.JSON)

    poly = sub.add_parser("poly", help="Hodge polynomials").add_subparsers(dest="what", required=True)
    p = poly.add_parser("u", help="e(X<n>) as a polynomial in x = e(X)")
    p.add_argument("--m", type=_positive("m"), required=True)
    p.add_argument("--n", type=_positive("n"), required=True)
    p.add_argument("--var", choices=["u", "t"], default="u")
    p.add_argument("--closed-form", action="store_true")
    _formats(p, OutputFormat.TABLE, OutputFormat.JSON)
    p = poly.add_parser("brick", help="polynomial of a brick")
    p.add_argument("--m", type=_positive("m"), required=True)
    p.add_argument("--lambda", dest="lam", required=True, metavar="LAMBDA")
    p.add_argument("--open", action="store_true")
    p.add_argument("--var", choices=["u", "t"], default="u")
    _formats(p, OutputFormat.TABLE, OutputFormat.JSON)
    p = poly.add_parser("stratum", help="polynomial of the stratum of a chain")
    p.add_argument("--m", type=_positive("m"), required=True)
    p.add_argument("--chain", required=True, metavar="FILE")
    p.add_argument("--open", action="store_true")
    p.add_argument("--var", choices=["u", "t"], default="u")
    _formats(p, OutputFormat.TABLE, OutputFormat.JSON)

    check = sub.add_parser("check", help="identity checks").add_subparsers(dest="what", required=True)
    p = check.add_parser("consistency", help="open strata add up to the whole space")
    p.add_argument("--m", type=_positive("m"), required=True)
    p.add_argument("--n", type=_positive("n"), required=True)

    theta = sub.add_parser("theta", help="the map from X<n> down to X[n]").add_subparsers(dest="what", required=True)
    p = theta.add_parser("schedule", help="blowup centers, stage by stage")
    p.add_argument("--n", type=_positive("n"), required=True)
    _formats(p, OutputFormat.TABLE, OutputFormat.JSON)
    p = theta.add_parser("fiber", help="leveled trees over a rooted tree")
    p.add_argument("--tree", required=True, metavar="FILE")
    p.add_argument("--list", action="store_true", help="also list the leveled trees")
    _formats(p, OutputFormat.TABLE, OutputFormat.JSON)

    p = sub.add_parser("classify", help="stratum reached by a degenerating configuration")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--profile", metavar="FILE")
    src.add_argument("--curves", metavar="FILE")
    p.add_argument("--dot", action="store_true", help="also print the leveled tree in DOT")
    _formats(p, OutputFormat.TABLE, OutputFormat.JSON, OutputFormat.DOT)

    p = sub.add_parser("strata", help="every stratum of X<n> with its bundle data and polynomial")
    p.add_argument("--n", type=_positive("n"), required=True)
    p.add_argument("--m", type=_positive("m"), required=True)
    p.add_argument("--limit", type=_positive("limit"))
    p.add_argument("--open", action="store_true")
    _formats(p, OutputFormat.TABLE, OutputFormat.JSON, OutputFormat.CSV)

    p = sub.add_parser("tree", help="leveled tree of a chain")
    p.add_argument("--chain", required=True, metavar="FILE")
    p.add_argument("--dot", action="store_true", help="same as --format dot")
    _formats(p, OutputFormat.TABLE, OutputFormat.JSON, OutputFormat.DOT)
    return top


# -------------------------------------------------------------------- helpers


def _read_json(path: str, field: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}", field) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}", field) from None


def parse_lambda(text: str, warn: TextIO | None = None) -> IntegerPartition:
    """``"2,1,1"`` to an integer partition; out-of-order input is sorted with a warning."""
    try:
        parts = [int(t) for t in text.split(",")]
    except ValueError:
        raise ValidationError(f"lambda must be comma-separated integers, got {text!r}", "lambda") from None
    if any(v < 1 for v in parts):
        raise ValidationError(f"lambda parts must be positive, got {text!r}", "lambda")
    lam = IntegerPartition(tuple(parts))
    if list(lam.parts) != parts and warn is not None:
        print(f"warning: lambda reordered to {','.join(map(str, lam.parts))}", file=warn)
    return lam


def _dumps(obj) -> str:
    return json.dumps(obj)


def _emit(out: TextIO, lines: Iterable[str]):
    for line in lines:
        out.write(line + "\n")


# ------------------------------------------------------------------- commands


def _count(a, out, err):
    fmt = OutputFormat(a.format)
    if a.what == "table":
        table = counting.strata_table(a.max_n)
        if fmt is OutputFormat.CSV:
            out.write(table.to_csv())
        elif fmt is OutputFormat.JSON:
            out.write(_dumps(table.to_json()) + "\n")
        else:
            out.write(table.render())
        return
    n = a.n
    if n < 2:
        raise ValidationError(f"n must be an integer >= 2, got {n}", "n")
    codims = range(n) if a.codim is None else [a.codim]
    rows = [(k, counting.strata_by_codim(n, k)) for k in codims]
    if fmt is OutputFormat.JSON:
        out.write(_dumps({"n": n, "by_codim": {str(k): str(c) for k, c in rows},
                          "total": str(sum(c for _, c in rows))}) + "\n")
    elif a.codim is not None:
        out.write(f"{rows[0][1]}\n")
    else:
        _emit(out, (f"codim {k}: {c}" for k, c in rows))
        out.write(f"total: {sum(c for _, c in rows)}\n")


def _enumerate(a, out, err):
    if a.n > STREAM_LIMIT_N and a.limit is None:
        raise ValidationError(f"--limit is required for n > {STREAM_LIMIT_N}", "limit")
    source = {
        "partitions": lambda: partitions.enumerate_partitions(a.n),
        "chains": lambda: trees.enumerate_chains(a.n),
        "nests": lambda: trees.enumerate_nests(a.n),
    }[a.kind]()
    as_json = a.format == OutputFormat.JSON.value
    for i, item in enumerate(source):
        if a.limit is not None and i >= a.limit:
            break
        out.write((_dumps(item.to_json()) if as_json else str(item)) + "\n")


def _poly_out(out, fmt, poly, var, meta: dict):
    if fmt == OutputFormat.JSON.value:
        out.write(_dumps({**meta, "coeffs": poly.to_json(), "text": poly.render(var)}) + "\n")
    else:
        out.write(poly.render(var) + "\n")


def _poly(a, out, err):
    if a.what == "u":
        f = hodge.u_poly_closed if a.closed_form else hodge.u_poly
        _poly_out(out, a.format, f(a.m, a.n), a.var, {"m": a.m, "n": a.n})
    elif a.what == "brick":
        lam = parse_lambda(a.lam, err)
        f = hodge.open_brick_poly if a.open else hodge.brick_poly
        _poly_out(out, a.format, f(a.m, lam), a.var, {"m": a.m, "lambda": list(lam.parts), "open": a.open})
    else:
        chain = trees.chain_from_json(_read_json(a.chain, "chain"))
        poly = hodge.stratum_poly(a.m, chain, open=a.open)
        meta = {"m": a.m, "chain": chain.to_json(), "open": a.open,
                "bundle": strata.bundle_description(chain, a.m).to_json()}
        _poly_out(out, a.format, poly, a.var, meta)


def _check(a, out, err):
    report = hodge.consistency_check(a.m, a.n)
    out.write(_dumps(report.to_json()) + "\n")
    if not report.ok:
        raise IdentityError(f"open strata do not add up to U for m={a.m}, n={a.n}")


def _theta(a, out, err):
    as_json = a.format == OutputFormat.JSON.value
    if a.what == "schedule":
        stages = counting.theta_schedule(a.n)
        if as_json:
            out.write(_dumps([
                {"k": s.k, "centers": [{"sizes": list(sz.parts), "count": c} for sz, c in s.centers],
                 "total": s.total} for s in stages
            ]) + "\n")
        else:
            _emit(out, (
                f"stage {s.k}: " + " ".join(f"{sz}x{c}" for sz, c in s.centers) + f" total {s.total}"
                for s in stages
            ))
        return
    tree = trees.rooted_tree_from_json(_read_json(a.tree, "tree"))
    count, listed = trees.eta_fiber(tree, with_trees=a.list)
    if as_json:
        body = {"tree": tree.to_json(), "count": count}
        if listed is not None:
            body["trees"] = [t.to_json() for t in listed]
        out.write(_dumps(body) + "\n")
    else:
        out.write(f"{count}\n")
        if listed is not None:
            _emit(out, map(str, listed))


def _classify(a, out, err):
    if a.profile is not None:
        profile = limits.profile_from_json(_read_json(a.profile, "profile"))
    else:
        profile = limits.profile_from_curves(limits.curves_from_json(_read_json(a.curves, "curves")))
    result = limits.classify(profile)
    if a.format == OutputFormat.DOT.value:
        out.write(result.tree.to_dot())
    elif a.format == OutputFormat.JSON.value:
        out.write(_dumps({"profile": profile.to_json(), **result.to_json()}) + "\n")
    else:
        out.write(f"chain: {result.chain}\n")
        out.write(f"tree: {result.tree}\n")
        out.write(f"nest: {result.nest}\n")
        if a.dot:
            out.write(result.tree.to_dot())


def _strata(a, out, err):
    if a.n < 2:
        raise ValidationError(f"n must be an integer >= 2, got {a.n}", "n")
    if a.n > STREAM_LIMIT_N and a.limit is None:
        raise ValidationError(f"--limit is required for n > {STREAM_LIMIT_N}", "limit")
    writer = None
    if a.format == OutputFormat.CSV.value:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["chain", "codim", "base", "fibers", "poly"])
    for i, chain in enumerate(trees.enumerate_chains(a.n)):
        if a.limit is not None and i >= a.limit:
            break
        desc = strata.bundle_description(chain, a.m)
        poly = hodge.stratum_poly(a.m, chain, open=a.open)
        fibers = " x ".join(str(b) for b in desc.fibers)
        if writer is not None:
            writer.writerow([str(chain), chain.length, desc.base, fibers, poly.render()])
        elif a.format == OutputFormat.JSON.value:
            out.write(_dumps({"chain": chain.to_json(), "codim": chain.length, "bundle": desc.to_json(),
                              "coeffs": poly.to_json(), "text": poly.render()}) + "\n")
        else:
            out.write(f"{chain}\tcodim {chain.length}\t{desc}\t{poly.render()}\n")


def _tree(a, out, err):
    chain = trees.chain_from_json(_read_json(a.chain, "chain"))
    tree = trees.chain_to_tree(chain)
    fmt = OutputFormat.DOT.value if a.dot else a.format
    if fmt == OutputFormat.DOT.value:
        out.write(tree.to_dot())
    elif fmt == OutputFormat.JSON.value:
        out.write(_dumps(tree.to_json()) + "\n")
    else:
        out.write(f"{tree}\n")


_COMMANDS = {
    "count": _count,
    "enumerate": _enumerate,
    "poly": _poly,
    "check": _check,
    "theta": _theta,
    "classify": _classify,
    "strata": _strata,
    "tree": _tree,
}


def _fail(err: TextIO, kind: str, field: str | None, message: str):
    err.write(json.dumps({"error": kind, "field": field, "message": message}) + "\n")


def main(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        m = re.match(r"argument (?:--)?([\w-]+)", str(exc))
        if m:
            field = m.group(1)
        else:
            m = re.search(r"(?:arguments are required|unrecognized arguments): (\S+)", str(exc))
            field = m.group(1).lstrip("-").rstrip(",") if m else "argv"
        _fail(err, "usage", field, str(exc))
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        _COMMANDS[args.command](args, out, err)
    except ValidationError as exc:
        _fail(err, "validation", exc.field, str(exc))
        return 1
    except IdentityError as exc:
        _fail(err, "identity", None, str(exc))
        return 2
    except BrokenPipeError:
        return 0
    return 0


if __name__ == "__main__":
    sys.exit(main())
