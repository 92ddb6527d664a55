"""Command-line interface: ``entdepth <command> [options]``.

Exit codes: 0 success, 1 a verification found a violation, 2 usage or
argument error, 3 input/output or schema error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import verify as _verify
from .bounds import bound_closed, bound_curve, closed_family, usefulness_report, ases
from .classify import Ensemble, class_of, ensemble_avg_depth, ensemble_depth
from .errors import EntDepthError, SchemaError
from .genfun import parse_genfun, values
from .hasse import export_hasse
from .partitions import enumerate_partitions

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def fmt_num(v) -> str:
    """Integers verbatim; reals with 12 significant digits, '.' decimal."""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    return format(float(v) + 0.0, ".12g")  # + 0.0 turns -0.0 into 0.0


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_num(c) if isinstance(c, (int, float)) else c for c in row])
    return buf.getvalue()


def _json(doc) -> str:
    return json.dumps(doc, indent=1) + "\n"


def _label(parts) -> str:
    return "+".join(str(x) for x in parts)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def cmd_partitions(args) -> int:
    ps = enumerate_partitions(args.n)
    if args.format == "json":
        doc = [{"parts": list(p.parts), "h": p.height, "w": p.width, "r": p.rank,
                "t": p.toughness, "s2": p.s2} for p in ps]
        _emit(_json(doc), args.out)
    else:
        rows = [[p.label, p.height, p.width, p.rank, p.toughness, p.s2] for p in ps]
        _emit(_csv(["parts", "h", "w", "r", "t", "s2"], rows), args.out)
    return EXIT_OK


def cmd_hasse(args) -> int:
    fmt = "json" if args.format == "json" else "dot"
    _emit(export_hasse(args.n, args.order, fmt), args.out)
    return EXIT_OK


def cmd_genfun_table(args) -> int:
    f = parse_genfun(args.f, args.n, checked=not args.unchecked)
    ps = enumerate_partitions(args.n)
    vals = values(f, args.n)
    if args.format == "json":
        doc = {"f": f.spec, "n": args.n, "direction": f.direction,
               "dominance_monotone": f.dominance_monotone,
               "rows": [{"parts": list(p.parts), "f_value": v} for p, v in zip(ps, vals)]}
        _emit(_json(doc), args.out)
    else:
        _emit(_csv(["parts", "f_value"], [[p.label, v] for p, v in zip(ps, vals)]), args.out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    f = parse_genfun(args.f, args.n)
    table = bound_curve(f, args.n)
    rep = usefulness_report(f, args.n)
    cf = closed_family(f)
    rows = []
    for row, strict in zip(table.rows, rep.strict):
        closed = bound_closed(cf, row.k, args.n) if cf else None
        rows.append((row, strict, closed))
    if args.format == "json":
        doc = {"f": f.spec, "n": args.n, "closed_family": cf, "rows": [
            {"k": r.k, "b": r.b, "closed": c, "strict": s, "witnesses": [list(w.parts) for w in r.witnesses]}
            for r, s, c in rows]}
        _emit(_json(doc), args.out)
    else:
        header = ["k", "b"] + (["closed"] if cf else []) + ["strict", "witnesses"]
        out = []
        for r, s, c in rows:
            line = [r.k, r.b] + ([c] if cf else []) + [s, ";".join(w.label for w in r.witnesses)]
            out.append(line)
        _emit(_csv(header, out), args.out)
    return EXIT_OK


def cmd_usefulness(args) -> int:
    f = parse_genfun(args.f, args.n)
    _emit(_json(usefulness_report(f, args.n).as_dict()), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    E = Ensemble.from_json(_read(args.input))
    f = parse_genfun(args.f, E.n)
    members = []
    for p, xi in E.members:
        lab = class_of(f, xi)
        members.append({"p": p, "parts": list(xi.parts), "depth": lab.k, "neighbor": lab.k_neighbor})
    doc = {
        "f": f.spec,
        "n": E.n,
        "direction": f.direction,
        "ensemble_depth": ensemble_depth(f, E),
        "ensemble_avg_depth": ensemble_avg_depth(f, E),
        "ases": ases(E),
        "members": members,
    }
    _emit(_json(doc), args.out)
    return EXIT_OK


def cmd_witness(args) -> int:
    from .qstate import state_from_json, witness_report

    state, E = state_from_json(_read(args.input))
    f = parse_genfun(args.f, E.n)
    doc = witness_report(state, f, E)
    doc["certificate"] = E.to_dict()
    _emit(_json(doc), args.out)
    return EXIT_OK if doc["ok"] else EXIT_VIOLATION


def cmd_verify(args) -> int:
    names = _verify.SUITES if "all" in args.suite else args.suite
    results = [
        _verify.run_suite(s, args.n_max, args.seed, args.f or (), args.unchecked) for s in names
    ]
    ok = all(r.ok for r in results)
    doc = {"ok": ok, "n_max": args.n_max, "seed": args.seed, "suites": [r.as_dict() for r in results]}
    _emit(_json(doc), args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entdepth",
        description="Generator-function entanglement classes, depths and Fisher-information bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, fmts=("csv", "json"), n=True, f=False):
        p = sub.add_parser(name, help=help_)
        if n:
            p.add_argument("--n", type=int, required=True, help="number of subsystems")
        if f:
            p.add_argument("--f", required=True, help='generator function, e.g. "width", "s_q:q=2"')
        if fmts:
            p.add_argument("--format", choices=fmts, default=fmts[0])
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.set_defaults(func=func)
        return p

    add("partitions", cmd_partitions, "list partitions with h, w, r, t, s2")
    p = add("hasse", cmd_hasse, "covering graph of refinement or dominance", fmts=("dot", "json"))
    p.add_argument("--order", choices=("refinement", "dominance"), default="refinement")
    p = add("genfun-table", cmd_genfun_table, "values of a generator function on P(n)", f=True)
    p.add_argument("--unchecked", action="store_true", help="skip the parameter range guard")
    add("bounds", cmd_bounds, "Fisher bound curve b_f(k)", f=True)
    add("usefulness", cmd_usefulness, "strictness report for b_f", fmts=None, f=True)
    p = add("classify", cmd_classify, "depths certified by an ensemble JSON", fmts=None, n=False, f=True)
    p.add_argument("--input", required=True, help="ensemble JSON file")
    p = add("witness", cmd_witness, "Fisher-information criteria for a state JSON", fmts=None, n=False, f=True)
    p.add_argument("--input", required=True, help="state spec JSON file")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append", choices=_verify.SUITES + ("all",), required=True)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--f", action="append", help="extra generator function for the monotonicity suite")
    p.add_argument("--unchecked", action="store_true", help="allow extra functions outside their range")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, OSError) as exc:
        print(f"entdepth: {exc}", file=sys.stderr)
        return EXIT_IO
    except (EntDepthError, ValueError) as exc:
        print(f"entdepth: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
