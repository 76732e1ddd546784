"""Command-line front end.

    nihocodes verify --family binary3 -p 2 -m 2 --s2 1
    nihocodes sweep  --family binary4 -p 2 -m 3 --format json
    nihocodes dump codewords --family binary3 -p 2 -m 2 --s2 1 --out words.txt

Exit codes: 0 pass, 1 mismatch, 2 invalid parameters, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .codes import codeword_domain, trace_codeword
from .errors import NihoError
from .expsums import value_distribution
from .field import FieldCtx, build_field
from .niho import NihoFamily, make_family
from .report import (
    dumps_json,
    report_csv,
    report_text,
    sweep,
    sweep_csv,
    sweep_text,
    verify_family,
)

EXIT_PASS, EXIT_MISMATCH, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3


class _Invalid(Exception):
    pass


def _modulus(text: str | None):
    if text is None:
        return None
    try:
        return [int(c) for c in text.split(",")]
    except ValueError:
        raise _Invalid(f"cannot parse modulus {text!r}; expected comma-separated integers")


def _setup(args, need_family: bool = True) -> tuple[FieldCtx, NihoFamily | None]:
    try:
        fam = None
        if need_family:
            fam = make_family(args.p, args.m, args.family, s2=args.s2, k=args.k, t=args.t)
        ctx = build_field(args.p, args.m, _modulus(args.modulus))
    except (NihoError, ValueError) as exc:
        raise _Invalid(str(exc))
    return ctx, fam


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w") as fh:
        fh.write(text)


def cmd_verify(args) -> int:
    ctx, fam = _setup(args)
    rep = verify_family(ctx, fam, method=args.method, jobs=args.jobs)
    render = {"text": report_text, "json": lambda r: dumps_json(r.to_dict()), "csv": report_csv}
    _write(render[args.format](rep), args.out)
    return EXIT_PASS if rep.passed else EXIT_MISMATCH


def cmd_sweep(args) -> int:
    try:
        ctx = build_field(args.p, args.m, _modulus(args.modulus))
    except (NihoError, ValueError) as exc:
        raise _Invalid(str(exc))
    res = sweep(args.p, args.m, args.family, method=args.method, jobs=args.jobs, ctx=ctx)
    render = {"text": sweep_text, "json": lambda r: dumps_json(r.to_dict()), "csv": sweep_csv}
    _write(render[args.format](res), args.out)
    return EXIT_PASS if res.passed else EXIT_MISMATCH


def _elem_token(ctx: FieldCtx, x: int) -> str:
    return "-" if x == ctx.zero else str(x)


def dump_codewords(ctx: FieldCtx, fam: NihoFamily) -> str:
    """One word per line: ``a=<log> b=<log> <digits>``; the zero element is ``-``."""
    sep = "" if ctx.p <= 10 else ","
    lines = []
    a_vals, b_vals = codeword_domain(ctx, fam)
    for a in a_vals.tolist():
        for b in b_vals.tolist():
            word = trace_codeword(ctx, fam, a, b)
            lines.append(f"a={_elem_token(ctx, a)} b={_elem_token(ctx, b)} {sep.join(map(str, word.coords))}")
    return "\n".join(lines) + "\n"


def dump_histogram(ctx: FieldCtx, fam: NihoFamily, method: str, jobs: int) -> str:
    vd = value_distribution(ctx, fam, "direct" if method == "both" else method, jobs=jobs)
    return "value,frequency\n" + "".join(f"{v},{f}\n" for v, f in vd.pairs())


def dump_field_tables(ctx: FieldCtx) -> str:
    """``index,exp,log``: exp[i] is theta^i in vector form (i = q-1 is zero),
    log[v] the element with vector form v (q-1 for the zero vector)."""
    rows = np.column_stack([ctx.elements(), ctx.exp_table, ctx.log_table])
    return "index,exp,log\n" + "".join(f"{i},{e},{g}\n" for i, e, g in rows.tolist())


def cmd_dump(args) -> int:
    if args.target == "field-tables":
        ctx, _ = _setup(args, need_family=False)
        text = dump_field_tables(ctx)
    else:
        if args.family is None:
            raise _Invalid(f"dump {args.target} needs --family")
        ctx, fam = _setup(args)
        if args.target == "codewords":
            text = dump_codewords(ctx, fam)
        else:
            text = dump_histogram(ctx, fam, args.method, args.jobs)
    _write(text, args.out)
    return EXIT_PASS


def _common(sp: argparse.ArgumentParser, family_required: bool = True) -> None:
    sp.add_argument("--family", choices=["binary3", "binary4", "pary4"], required=family_required)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("--s2", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--modulus", help="comma-separated coefficients, leading 1 first")
    sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
    sp.add_argument("--method", choices=["direct", "niho", "both"], default="both")
    sp.add_argument("--out")
    sp.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nihocodes", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="check one parameter set")
    _common(v)
    v.set_defaults(func=cmd_verify)
    s = sub.add_parser("sweep", help="check every equivalence class for (p, m)")
    _common(s)
    s.set_defaults(func=cmd_sweep)
    d = sub.add_parser("dump", help="write codewords, a value histogram or field tables")
    d.add_argument("target", choices=["codewords", "value-histogram", "field-tables"])
    _common(d, family_required=False)
    d.set_defaults(func=cmd_dump)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Invalid as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
