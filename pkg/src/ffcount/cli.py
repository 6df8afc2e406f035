"""Command-line front end: counts, approximations, series, censuses, families.

All numeric output is emitted as decimal strings (symbolic values in the
canonical ``(numerator)/(denominator)`` form) so nothing ever overflows a
JSON number.  Exit codes: 0 success/verified, 1 verification mismatch,
2 usage error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional

from . import mv_counts, oracle, uv_counts, uv_families
from .ff import BudgetExceeded, FieldCtx, FqElem, UniPoly, field_from_q
from .qrat import QPoly, SymRat
from .series import factor_prime_power

SCHEMA_VERSION = "1"

APPROX_CLASSES = ("reducible", "powerful", "rel_irreducible", "decomposable_mv")
SERIES_CLASSES = ("all", "irreducible", "reducible", "powerful", "powerfree")


def _sym_str(x) -> str:
    if isinstance(x, QPoly):
        return str(SymRat(x))
    return str(x)


def _int_str(val) -> str:
    if isinstance(val, Fraction):
        assert val.denominator == 1
        return str(val.numerator)
    return str(val)


# -- element / polynomial text forms --------------------------------------


def parse_element(ctx: FieldCtx, text: str) -> FqElem:
    """An element literal: an integer, or a coordinate tuple like (1,0)."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        coords = [int(t) for t in text[1:-1].split(",") if t.strip()]
        return ctx.elem(tuple(coords))
    return ctx.elem(int(text))


def parse_upoly(ctx: FieldCtx, text: str) -> UniPoly:
    """A univariate polynomial literal, e.g. ``x^3+2x+1`` or, over an
    extension field, ``(1,1)x^2+(0,1)``."""
    text = text.replace(" ", "").replace("**", "^").replace("*", "")
    if not text:
        raise ValueError("empty polynomial")
    # split into signed terms
    terms: list[str] = []
    depth = 0
    cur = ""
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and i > 0:
            terms.append(cur)
            cur = ch if ch == "-" else ""
            continue
        cur += ch
    terms.append(cur)
    poly = UniPoly(ctx, [])
    for term in terms:
        if not term or term == "-":
            raise ValueError(f"bad polynomial text {text!r}")
        negate = term.startswith("-")
        if negate:
            term = term[1:]
        if "x" in term:
            coef_txt, _, exp_txt = term.partition("x")
            exp = int(exp_txt[1:]) if exp_txt.startswith("^") else (1 if not exp_txt else None)
            if exp is None:
                raise ValueError(f"bad term in {text!r}")
            coef = parse_element(ctx, coef_txt) if coef_txt else ctx.one
        else:
            coef = parse_element(ctx, term)
            exp = 0
        if negate:
            coef = -coef
        poly = poly + UniPoly(ctx, [0] * exp + [coef])
    return poly


# -- output ---------------------------------------------------------------


def _emit(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        record = {"schema_version": SCHEMA_VERSION, **record}
        json.dump(record, out, indent=2)
        out.write("\n")
        return
    if fmt == "csv":
        row = record.get("csv_row")
        if row is None:
            raise ValueError("csv output is only available for count/approx/verify")
        writer = csv.writer(out)
        writer.writerow(["r", "n", "q", "s", "class", "exact", "main_term", "bound", "oracle"])
        writer.writerow(row)
        return
    for line in record.get("plain", []):
        out.write(line + "\n")


def _csv_row(args, exact="", main="", bound="", oracle_val="") -> list[str]:
    return [
        str(getattr(args, "r", "") or ""),
        str(args.n),
        str(getattr(args, "q", "") or ""),
        str(getattr(args, "s", "") or ""),
        getattr(args, "cls", ""),
        exact,
        main,
        bound,
        oracle_val,
    ]


# -- subcommand implementations -------------------------------------------


def _cmd_count(args, out) -> int:
    exact = mv_counts.exact_count(args.cls, args.r, args.n, args.s)
    if args.symbolic:
        value = _sym_str(exact)
    else:
        value = _int_str(exact.evaluate(args.q))
    record = {
        "command": "count",
        "query": {"class": args.cls, "r": str(args.r), "n": str(args.n),
                  "s": str(args.s) if args.s else None,
                  "q": str(args.q) if args.q else None},
        "exact": value,
        "plain": [value],
        "csv_row": _csv_row(args, exact=value),
    }
    _emit(record, args.format, out)
    return 0


def _make_approx(cls: str, r: int, n: int, s: Optional[int]):
    if cls == "reducible":
        return mv_counts.red_approx(r, n)
    if cls == "powerful":
        if s is None:
            raise ValueError("powerful needs --s")
        return mv_counts.powerful_approx(r, n, s)
    if cls == "rel_irreducible":
        return mv_counts.relirr_approx(r, n)
    if cls == "decomposable_mv":
        return mv_counts.mv_decomp_approx(r, n)
    raise ValueError(f"no approximation for class {cls!r}")


def _cmd_approx(args, out) -> int:
    rep = _make_approx(args.cls, args.r, args.n, args.s)
    if args.symbolic:
        exact = _sym_str(rep.exact) if rep.exact is not None else None
        main = str(rep.main_term)
        bound = str(rep.rel_bound) if rep.rel_bound is not None else None
        bound_sq = str(rep.rel_bound_sq) if rep.rel_bound_sq is not None else None
    else:
        q = args.q
        exact = _int_str(rep.exact.evaluate(q)) if rep.exact is not None else None
        main = str(rep.main_term.evaluate(q))
        bound = str(rep.rel_bound.evaluate(q)) if rep.rel_bound is not None else None
        bound_sq = str(rep.rel_bound_sq.evaluate(q)) if rep.rel_bound_sq is not None else None
    record = {
        "command": "approx",
        "query": {"class": args.cls, "r": str(args.r), "n": str(args.n),
                  "s": str(args.s) if args.s else None,
                  "q": str(args.q) if args.q else None},
        "exact": exact,
        "main_term": main,
        "gap_exponent": str(rep.gap_exponent) if rep.gap_exponent is not None else None,
        "rel_error_bound": bound,
        "rel_error_bound_squared": bound_sq,
        "case": rep.case,
        "plain": [
            f"case: {rep.case}",
            f"exact: {exact}",
            f"main_term: {main}",
            f"gap_exponent: {rep.gap_exponent}",
            f"rel_error_bound: {bound if bound is not None else bound_sq}"
            + ("" if bound is not None else " (squared)"),
        ],
        "csv_row": _csv_row(args, exact=exact or "", main=main,
                            bound=bound or bound_sq or ""),
    }
    _emit(record, args.format, out)
    return 0


def _cmd_series(args, out) -> int:
    coeffs = []
    for n in range(args.max_n + 1):
        if args.cls == "all":
            c = mv_counts.p_count(args.r, n)
        elif args.cls == "irreducible":
            c = mv_counts.irr_exact(args.r, n)
        elif args.cls == "reducible":
            c = mv_counts.red_exact(args.r, n)
        elif args.cls == "powerful":
            c = mv_counts.powerful_exact(args.r, n, args.s or 2)
        else:
            c = mv_counts.powerfree_exact(args.r, n, args.s or 2)
        coeffs.append(c)
    if args.q:
        values = [_int_str(c.evaluate(args.q)) for c in coeffs]
    else:
        values = [_sym_str(c) for c in coeffs]
    record = {
        "command": "series",
        "query": {"class": args.cls, "r": str(args.r), "max_n": str(args.max_n),
                  "s": str(args.s) if args.s else None,
                  "q": str(args.q) if args.q else None},
        "coefficients": values,
        "plain": [f"[z^{i}] {v}" for i, v in enumerate(values)],
    }
    _emit(record, args.format, out)
    return 0


def _cmd_decomp(args, out) -> int:
    p, d = factor_prime_power(args.q)
    bracket = uv_counts.d_n_bracket(args.n, args.q)
    lines = [
        f"case: {bracket.case_label}",
        f"lower: {bracket.lower}",
        f"upper: {bracket.upper}",
        f"exact: {bracket.exact}",
    ]
    inters = []
    n = args.n
    for ell in range(2, n):
        if n % ell:
            continue
        m = n // ell
        if not m > ell >= 2:
            continue
        if (ell * m) % p:
            val = uv_counts.tame_intersection(ell, m, args.q)
            inters.append({"l": str(ell), "m": str(m), "kind": "tame",
                           "exact": str(val)})
            lines.append(f"splits ({ell},{m}): tame intersection {val}")
        else:
            wb = uv_counts.wild_intersection_bounds(ell, m, args.q)
            inters.append({"l": str(ell), "m": str(m), "kind": "wild",
                           "lower": str(wb.lower), "upper": str(wb.upper),
                           "case": wb.case_label})
            lines.append(
                f"splits ({ell},{m}): wild bounds [{wb.lower}, {wb.upper}] ({wb.case_label})"
            )
    record = {
        "command": "decomp",
        "query": {"n": str(args.n), "q": str(args.q)},
        "bracket": {"lower": str(bracket.lower), "upper": str(bracket.upper),
                    "case": bracket.case_label,
                    "exact": str(bracket.exact) if bracket.exact is not None else None},
        "intersections": inters,
        "plain": lines,
    }
    _emit(record, args.format, out)
    return 0


def _build_family(args, ctx: FieldCtx) -> uv_families.CollisionFamily:
    fam = args.family
    if fam == "ritt1":
        w = parse_upoly(ctx, args.w)
        return uv_families.ritt_family_first(args.l, args.k, w, parse_element(ctx, args.a))
    if fam == "ritt2":
        return uv_families.ritt_family_second(
            args.l, args.m, parse_element(ctx, args.z), parse_element(ctx, args.a)
        )
    if fam == "frobenius":
        return uv_families.frobenius_family(parse_upoly(ctx, args.h))
    if fam == "S":
        return uv_families.s_family(
            ctx, parse_element(ctx, args.u), parse_element(ctx, args.s_elem),
            args.eps, args.m, args.r_power,
        )
    if fam == "M":
        return uv_families.m_family(
            ctx, parse_element(ctx, args.a), parse_element(ctx, args.b),
            args.m, args.r_power,
        )
    raise ValueError(f"unknown family {fam!r}")


def _cmd_families(args, out) -> int:
    ctx = field_from_q(args.q)
    family = _build_family(args, ctx)
    ok = family.verify()
    decs = [{"g": str(d.g), "h": str(d.h)} for d in family.decompositions]
    record = {
        "command": "families",
        "query": {"family": args.family, "q": str(args.q)},
        "f": str(family.f),
        "label": family.label,
        "decompositions": decs,
        "verified": ok,
        "plain": [f"f = {family.f}", f"label = {family.label}"]
        + [f"  g = {d['g']}   h = {d['h']}" for d in decs]
        + [f"verified: {ok}"],
    }
    _emit(record, args.format, out)
    return 0 if ok else 1


def _cmd_census(args, out) -> int:
    ctx = field_from_q(args.q)
    rep = oracle.oracle_decomp_census(args.n, ctx)
    record = {
        "command": "census",
        "query": {"n": str(args.n), "q": str(args.q)},
        "total": str(rep.total),
        "per_split": {str(e): str(v) for e, v in rep.per_split.items()},
        "pair_intersections": {f"{a},{b}": str(v) for (a, b), v in rep.pair_intersections.items()},
        "pair_intersections_nonfrobenius": {
            f"{a},{b}": str(v) for (a, b), v in rep.pair_intersections_nonfrobenius.items()
        },
        "collision_histogram": {str(k): str(v) for k, v in rep.collision_histogram.items()},
        "frobenius_members": str(rep.frobenius_members),
        "frobenius_collisions": str(rep.frobenius_collisions),
        "plain": [
            f"total decomposable: {rep.total}",
            f"per split: {rep.per_split}",
            f"pair intersections: {rep.pair_intersections}",
            f"collision histogram: {rep.collision_histogram}",
            f"frobenius members/collisions: {rep.frobenius_members}/{rep.frobenius_collisions}",
        ],
    }
    _emit(record, args.format, out)
    return 0


def _cmd_verify(args, out) -> int:
    ctx = field_from_q(args.q)
    oracle_val = oracle.oracle_count(args.cls, args.r, args.n, ctx, s=args.s)
    if args.cls == "decomposable_mv":
        rep = mv_counts.mv_decomp_approx(args.r, args.n)
        alpha = rep.main_term.evaluate(args.q)
        bsq = rep.rel_bound_sq.evaluate(args.q)
        diff = oracle_val - alpha
        ok = diff * diff <= alpha * alpha * bsq
        formula_txt = f"{alpha} (main term, rel bound squared {bsq})"
    else:
        formula = mv_counts.exact_count(args.cls, args.r, args.n, args.s).evaluate(args.q)
        ok = formula == oracle_val
        formula_txt = _int_str(formula)
    record = {
        "command": "verify",
        "query": {"class": args.cls, "r": str(args.r), "n": str(args.n),
                  "s": str(args.s) if args.s else None, "q": str(args.q)},
        "formula": formula_txt,
        "oracle": str(oracle_val),
        "verified": ok,
        "plain": [f"formula: {formula_txt}", f"oracle:  {oracle_val}",
                  f"verified: {ok}"],
        "csv_row": _csv_row(args, exact=formula_txt, oracle_val=str(oracle_val)),
    }
    _emit(record, args.format, out)
    return 0 if ok else 1


def _cmd_oeis_check(args, out) -> int:
    expected = {}
    with open(args.file, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            idx, val = line.split()[:2]
            expected[int(idx)] = int(val)
    mismatches = []
    checked = 0
    for n, val in sorted(expected.items()):
        if n > args.max_n:
            continue
        ours = mv_counts.irr_exact(args.r, n).evaluate(args.q)
        checked += 1
        if ours != val:
            mismatches.append((n, val, int(ours)))
    lines = [f"checked {checked} entries (r={args.r}, q={args.q})"]
    for n, theirs, ours in mismatches:
        lines.append(f"mismatch at n={n}: table {theirs}, computed {ours}")
    if not mismatches:
        lines.append("all entries match")
    record = {
        "command": "oeis-check",
        "query": {"file": args.file, "r": str(args.r), "q": str(args.q),
                  "max_n": str(args.max_n)},
        "checked": str(checked),
        "mismatches": [
            {"n": str(n), "table": str(t), "computed": str(o)} for n, t, o in mismatches
        ],
        "plain": lines,
    }
    _emit(record, args.format, out)
    return 0 if not mismatches else 1


# -- argument parsing ------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    parser = argparse.ArgumentParser(
        prog="ffcount",
        parents=[common],
        description="Exact counts and certified approximations for special "
        "polynomial classes over finite fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_query_flags(sp, classes, with_s=True, with_symbolic=True):
        sp.add_argument("--class", dest="cls", required=True, choices=classes)
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        if with_s:
            sp.add_argument("--s", type=int, default=None)
        if with_symbolic:
            group = sp.add_mutually_exclusive_group(required=True)
            group.add_argument("--q", type=int, default=None)
            group.add_argument("--symbolic", action="store_true")

    sp = sub.add_parser("count", parents=[common], help="exact count of a class")
    add_query_flags(sp, mv_counts.MV_CLASSES)
    sp.set_defaults(fn=_cmd_count)

    sp = sub.add_parser("approx", parents=[common], help="main term and certified error bound")
    add_query_flags(sp, APPROX_CLASSES)
    sp.set_defaults(fn=_cmd_approx)

    sp = sub.add_parser("series", parents=[common], help="generating-series coefficients 0..N")
    sp.add_argument("--class", dest="cls", required=True, choices=SERIES_CLASSES)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--s", type=int, default=None)
    sp.add_argument("--q", type=int, default=None)
    sp.set_defaults(fn=_cmd_series)

    sp = sub.add_parser("decomp", parents=[common], help="decomposable-count bracket and intersections")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.set_defaults(fn=_cmd_decomp)

    sp = sub.add_parser("families", parents=[common], help="build and verify a collision family")
    sp.add_argument("--family", required=True, choices=("ritt1", "ritt2", "frobenius", "S", "M"))
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--l", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--w")
    sp.add_argument("--h")
    sp.add_argument("--z")
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--u")
    sp.add_argument("--s-elem")
    sp.add_argument("--eps", type=int, choices=(0, 1))
    sp.add_argument("--r-power", type=int)
    sp.set_defaults(fn=_cmd_families)

    sp = sub.add_parser("census", parents=[common], help="brute-force decomposition census")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.set_defaults(fn=_cmd_census)

    sp = sub.add_parser("verify", parents=[common], help="formula against the enumeration oracle")
    sp.add_argument("--class", dest="cls", required=True, choices=mv_counts.MV_CLASSES)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, default=None)
    sp.add_argument("--q", type=int, required=True)
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("oeis-check", parents=[common], help="compare irreducible counts to a local table")
    sp.add_argument("--file", required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.set_defaults(fn=_cmd_oeis_check)

    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.fn(args, out)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
