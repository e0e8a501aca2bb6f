"""Command-line interface.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, document
from .catalog import ConstraintError, UnknownAlgebraError
from .document import DocumentError
from .enumeration import InfeasibleSearchError, SearchConfig, classify, scan_alpha_first, scan_lexicographic
from .exactla import FieldMismatchError, Matrix
from .homalg import CHECKS, PreconditionError, tensor_square_leibniz, yau_twist
from .opspaces import (
    central_derivation_space,
    centroid_space,
    derivation_space,
    generalized_derivation_space,
    two_sided_centroid_space,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ALL_IDENTITIES = ("multiplicative", "left", "right", "symmetric")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> document.AlgebraDocument:
    return document.loads(_read(path))


def _params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"parameter {item!r} must look like name=value")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _fmt_matrix(F, m: Matrix) -> list:
    return [[F.format(x) for x in row] for row in m.rows]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_check(args, out) -> int:
    doc = _load(args.file)
    A = doc.algebra
    wanted = args.identity or ["all"]
    names = []
    for w in wanted:
        names.extend(ALL_IDENTITIES if w == "all" else [w])
    names = list(dict.fromkeys(names))
    ok = True
    for name in names:
        rep = CHECKS[name](A)
        ok &= rep.holds
        print(rep.describe(A.field.format), file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_solve(args, out) -> int:
    doc = _load(args.file)
    A = doc.algebra
    F = A.field
    parity = None if args.parity == "both" else int(args.parity)
    if parity == 1 and not A.graded:
        raise UsageError("--parity 1 needs a graded algebra")
    if args.r < 0:
        raise UsageError("--r must be non-negative")
    scalars = {}
    if args.kind == "gen":
        for name in ("lam", "mu", "gamma"):
            raw = getattr(args, name)
            if raw is None:
                raise UsageError("--kind gen needs --lambda, --mu and --gamma")
            try:
                scalars[name] = F.parse(raw)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        space = generalized_derivation_space(A, args.r, scalars["lam"], scalars["mu"], scalars["gamma"], parity)
    elif args.kind == "centroid" and args.two_sided:
        space = two_sided_centroid_space(A, args.r, parity)
    else:
        solver = {"der": derivation_space, "centroid": centroid_space, "zder": central_derivation_space}[args.kind]
        space = solver(A, args.r, parity)
    result = {
        "kind": space.kind,
        "r": args.r,
        "parity": args.parity,
        "dim": space.dim,
        "basis": [_fmt_matrix(F, m) for m in space.matrices()],
    }
    if scalars:
        result["params"] = {k: F.format(v) for k, v in scalars.items()}
    print(json.dumps(result, sort_keys=True, indent=2), file=out)
    return EXIT_OK


def _cell(flag) -> str:
    return "" if flag is None else ("yes" if flag else "no")


def _markdown(reports) -> str:
    lines = [
        "| algebra | params | α^r | Γ_{α^r} | type of Γ_{α^0} | Der_{α^r} | CN | status |",
        "|---|---|---|---|---|---|---|---|",
    ]
    for rep in reports:
        params = ", ".join(f"{k}={v}" for k, v in rep.params.items()) or "-"
        if rep.skipped:
            lines.append(f"| {rep.id} | {params} | r={rep.r} | | | | | {rep.skipped} |")
            continue
        c, d, s, n = (rep.entry(k) for k in ("centroid", "derivations", "small", "cn"))
        small = "" if s.holds is None else ("small" if s.computed == "True" else "not small")
        cn = "" if n.holds is None else ("Yes" if n.computed == "True" else "No")
        failed = [e.name for e in rep.entries if e.holds is False]
        status = "ok" if not failed else "FAIL " + ",".join(failed)
        lines.append(f"| {rep.id} | {params} | r={rep.r} | {c.computed} | {small} | {d.computed} | {cn} | {status} |")
    return "\n".join(lines)


def _report_json(rep) -> dict:
    return {
        "id": rep.id,
        "r": rep.r,
        "params": {k: str(v) for k, v in rep.params.items()},
        "status": rep.skipped or ("ok" if rep.ok else "fail"),
        "entries": [
            {"name": e.name, "holds": e.holds, "expected": e.expected, "computed": e.computed} for e in rep.entries
        ],
    }


def cmd_tables(args, out) -> int:
    if not args.all and not args.id:
        raise UsageError("give --id or --all")
    ids = catalog.IDS if args.all else [catalog.get(i).id for i in args.id]
    user_params = _params(args.params)
    reports = []
    for id_ in ids:
        entry = catalog.get(id_)
        if user_params and not args.all:
            samples = [user_params]
        else:
            samples = entry.sample_params("table")
        for params in samples:
            for r in range(args.rmax + 1):
                reports.append(catalog.verify_table(id_, r, params))
    if args.format in ("markdown", "both"):
        print(_markdown(reports), file=out)
    if args.format in ("json", "both"):
        print(json.dumps([_report_json(r) for r in reports], sort_keys=True, indent=2, ensure_ascii=False), file=out)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([_report_json(r) for r in reports], fh, sort_keys=True, indent=2, ensure_ascii=False)
    failed = [r for r in reports if not r.ok]
    skipped = sum(1 for r in reports if r.skipped)
    print(
        f"{len(reports) - len(failed) - skipped} verified, {len(failed)} failed, {skipped} skipped",
        file=sys.stderr,
    )
    return EXIT_OK if not failed else EXIT_FAIL


def _parse_matrix(text: str, F, n: int) -> Matrix:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--beta is not a JSON matrix: {exc.msg}") from None
    if not isinstance(rows, list) or len(rows) != n or not all(isinstance(r, list) and len(r) == n for r in rows):
        raise UsageError(f"--beta must be an {n} x {n} matrix")
    try:
        return Matrix.from_rows(F, [[F.parse(str(x)) for x in r] for r in rows], n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_twist(args, out) -> int:
    doc = _load(args.file)
    A = doc.algebra
    beta = _parse_matrix(args.beta, A.field, A.dim)
    try:
        B = yau_twist(A, beta)
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(document.dumps(B, doc.params), file=out)
    return EXIT_OK


def cmd_tensor(args, out) -> int:
    doc = _load(args.file)
    try:
        B = tensor_square_leibniz(doc.algebra)
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(document.dumps(B), file=out)
    return EXIT_OK


def cmd_export(args, out) -> int:
    params = _params(args.params)
    entry = catalog.get(args.id)
    if not params:
        params = catalog.default_params(entry.id, args.variant) or {}
    A = catalog.instantiate(entry.id, args.variant, params)
    print(document.dumps(A, params), file=out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    cfg = SearchConfig(args.p, 2, args.sidedness, not args.no_multiplicative)
    scan = scan_lexicographic if args.scanner == "lexicographic" else scan_alpha_first
    codes = sorted(scan(cfg))
    result = {"p": cfg.p, "dim": cfg.dim, "sidedness": cfg.sidedness, "multiplicative": cfg.require_multiplicative,
              "count": len(codes)}
    if args.classify:
        classes = classify(cfg)
        result["classes"] = [c.to_json() for c in classes]
        result["class_count"] = len(classes)
        result["orbit_total"] = sum(c.orbit_size for c in classes)
        if result["orbit_total"] != len(codes):
            print(json.dumps(result, sort_keys=True, indent=2), file=out)
            return EXIT_FAIL
    elif args.list:
        result["codes"] = [list(c) for c in codes]
    print(json.dumps(result, sort_keys=True, indent=2), file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homleib", description="Exact computations with Hom-Leibniz algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check defining identities")
    p.add_argument("file", help="algebra document ('-' for stdin)")
    p.add_argument("--identity", action="append",
                   choices=["left", "right", "symmetric", "hom-lie", "multiplicative", "all"],
                   help="identity to check (repeatable); 'all' = multiplicative, left, right, symmetric")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="solve for an operator space")
    p.add_argument("file")
    p.add_argument("--kind", choices=["der", "centroid", "zder", "gen"], required=True)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--mu")
    p.add_argument("--gamma")
    p.add_argument("--parity", choices=["0", "1", "both"], default="both")
    p.add_argument("--two-sided", action="store_true", help="with --kind centroid: impose both centroid identities")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("tables", help="verify the reference centroid/derivation tables")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--id", action="append", help="algebra id such as L_4^1 (repeatable)")
    g.add_argument("--all", action="store_true")
    p.add_argument("--rmax", type=int, default=3)
    p.add_argument("--params", nargs="*", help="name=value pairs (with a single --id)")
    p.add_argument("--format", choices=["markdown", "json", "both"], default="markdown")
    p.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("twist", help="Yau twist of a Leibniz algebra")
    p.add_argument("file")
    p.add_argument("--beta", required=True, help='JSON matrix, e.g. "[[4,0],[0,2]]"')
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("tensor", help="tensor-square Leibniz algebra of a Lie algebra")
    p.add_argument("file")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("export", help="write a catalog algebra as a document")
    p.add_argument("id")
    p.add_argument("--variant", choices=["listed", "header", "table"], default="listed")
    p.add_argument("--params", nargs="*")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("enumerate", help="finite-field enumeration of 2-dimensional algebras")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--sidedness", choices=["left", "right", "symmetric"], default="left")
    p.add_argument("--classify", action="store_true")
    p.add_argument("--list", action="store_true", help="include every code in the output")
    p.add_argument("--no-multiplicative", action="store_true")
    p.add_argument("--scanner", choices=["alpha-first", "lexicographic"], default="alpha-first")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, DocumentError, UnknownAlgebraError, ConstraintError, InfeasibleSearchError,
            FieldMismatchError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:  # e.g. p = 2 or a non-prime modulus
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
