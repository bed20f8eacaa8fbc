"""Command-line front end.

Exit codes: 0 when every expectation is met, 1 on a verification mismatch,
2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import sympy as sp

from . import catalog
from . import elliptic_kernel as ek
from . import verification as vf
from .coeff_ring import format_poly
from .operator_algebra import DiffOperator, highest_symbol

SCHEMA_VERSION = 1
DEFAULT_SEED = int(os.environ.get("A2M_SEED", "0"))


class UsageError(Exception):
    pass


def parse_number(text: str):
    """Rational literals stay exact; anything else is parsed as complex."""
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def parse_m(text: str) -> Fraction:
    try:
        m = Fraction(text)
    except ValueError:
        raise UsageError(f"m must be rational, got {text!r}") from None
    if m == 0:
        raise UsageError("m must be nonzero")
    return m


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _num_str(x) -> str | list:
    if isinstance(x, Fraction):
        return str(x)
    x = complex(x)
    return [x.real, x.imag]


# ---------------------------------------------------------------------------
# grouped layout for display
# ---------------------------------------------------------------------------

GROUPINGS = {
    # name -> (labels, rows of the linear forms in d1, d2, d3)
    "I": (("(∂₁−∂₂)", "(∂₁−2∂₃)", "(∂₁+∂₂+∂₃)"), ((1, -1, 0), (1, 0, -2), (1, 1, 1))),
}


def regroup(op: DiffOperator, forms) -> dict:
    """Rewrite the derivative part in a basis of three constant linear forms."""
    y = sp.symbols("y1:4")
    mat = sp.Matrix(forms)
    inv = mat.inv()
    subs = [sum(inv[i, j] * y[j] for j in range(3)) for i in range(3)]
    out: dict = {}
    for (a, b, c), f in op.terms.items():
        poly = sp.Poly(sp.expand(subs[0] ** a * subs[1] ** b * subs[2] ** c), *y)
        for mono, k in poly.terms():
            key = tuple(mono)
            val = out.get(key)
            term = f * Fraction(int(k.p), int(k.q))
            out[key] = term if val is None else val + term
    return {k: v for k, v in out.items() if not v.is_zero()}


def grouped_text(op: DiffOperator, labels, forms) -> str:
    sup = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
    groups = regroup(op, forms)
    lines = []
    for key in sorted(groups, key=lambda k: (-sum(k), tuple(-x for x in k))):
        mono = "".join(lab + (str(e).translate(sup) if e > 1 else "") for lab, e in zip(labels, key) if e)
        coeff = format_poly(groups[key])
        if mono and coeff == "1":
            lines.append(f"  + {mono}")
        else:
            lines.append(f"  + ({coeff}){mono}")
    return "\n".join(lines) if lines else "  0"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_wp(args) -> int:
    z = parse_number(args.z)
    params = ek.EllipticParams(parse_number(args.g2), parse_number(args.g3))
    if not params.is_rational_limit:
        params = ek.EllipticParams(complex(params.g2), complex(params.g3))
    try:
        w = ek.wp(z, params)
        res = ek.ode_residual(z, params)
    except (ek.PoleProximity, ek.InvalidParams) as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        payload = {"schema": SCHEMA_VERSION, "z": _num_str(z), "p": _num_str(w.p),
                   "dp": _num_str(w.dp), "ddp": _num_str(w.ddp), "ode_residual": res}
        _emit(json.dumps(payload) + "\n", args.out)
    else:
        _emit(f"wp    = {w.p}\nwp'   = {w.dp}\nwp''  = {w.ddp}\nODE residual = {res:.3e}\n", args.out)
    return 0


def _build(name: str, m) -> DiffOperator:
    if name not in catalog.BUILDERS:
        raise UsageError(f"unknown operator {name!r}; choose from {', '.join(catalog.BUILDERS)}")
    try:
        return catalog.build(name, m)
    except catalog.InvalidParam as exc:
        raise UsageError(str(exc)) from None


def cmd_show(args) -> int:
    m = parse_m(args.m)
    op = _build(args.op, m)
    if args.format == "json":
        payload = {"schema": SCHEMA_VERSION, "name": args.op, "m": str(m), "terms": op.to_json()}
        _emit(json.dumps(payload, separators=(",", ":"), sort_keys=True) + "\n", args.out)
        return 0
    base = args.op.split("-")[0]
    if base in ("I", "L13"):
        labels, forms = GROUPINGS["I"]
        text = f"{args.op} (m={m}) =\n" + grouped_text(op, labels, forms)
    elif base == "L12":
        labels = (f"(∂₁−{m}∂₃)", f"(∂₂−{m}∂₃)", "(∂₁+∂₂+∂₃)")
        forms = ((1, 0, -m), (0, 1, -m), (1, 1, 1))
        text = f"{args.op} (m={m}) =\n" + grouped_text(op, labels, forms)
    else:
        text = op.pretty()
    try:
        sym = highest_symbol(op).pretty()
        text += f"\nhighest symbol: {sym}"
    except ValueError:
        pass
    _emit(text + "\n", args.out)
    return 0


def _report_out(reports, args) -> None:
    if args.format == "json":
        payload = {"schema": SCHEMA_VERSION, "reports": [r.to_json(timing=args.timing) for r in reports]}
        _emit(json.dumps(payload, indent=1, sort_keys=True) + "\n", args.out)
    else:
        lines = [vf.summary_table(reports)]
        for r in reports:
            if r.witness is not None:
                lines.append(f"witness for {r.subject}: {json.dumps(r.witness)[:2000]}")
        _emit("\n".join(lines) + "\n", args.out)


def _expect(reports, expect: str) -> None:
    for r in reports:
        r.expected = expect


def cmd_commute(args) -> int:
    m = parse_m(args.m)
    names = args.pair.split(",")
    if len(names) != 2:
        raise UsageError("--pair takes two names separated by a comma")
    a, b = (_build(n.strip(), m) for n in names)
    subject = f"[{names[0]},{names[1]}] m={m}"
    reports = [vf.check_commutes(a, b, subject)]
    if args.numeric:
        from .operator_algebra import commutator

        coeffs = list(commutator(a, b).terms.values())
        if coeffs:
            reports.append(vf.numeric_crosscheck(coeffs, args.samples, args.tol, args.seed, "numeric " + subject))
        rational = vf.rational_limit_check(a, b, args.samples, args.seed, "rational limit " + subject)
        # the g2 = g3 = 0 slice may miss a failure, so it only binds when passing is expected
        if args.expect == "pass":
            rational.expected = "pass"
        reports.append(rational)
    _expect(reports[:1], args.expect)
    _report_out(reports, args)
    return 0 if all(r.matches_expectation for r in reports) else 1


def cmd_separation(args) -> int:
    m = parse_m(args.m)
    _build(args.symbol, m)
    seeds = tuple(range(args.seed, args.seed + args.seeds))
    rep = vf.separation_study(args.symbol, m, n_levels=args.samples, seeds=seeds, eps=args.eps)
    rep.expected = args.expect
    _report_out([rep], args)
    return 0 if rep.matches_expectation else 1


def cmd_suite(args) -> int:
    m_list = []
    for chunk in args.m or ["1,2,3"]:
        m_list.extend(parse_m(x) for x in chunk.split(",") if x)
    reports = vf.full_suite(m_list, args.seed, args.variant)
    _report_out(reports, args)
    return 0 if all(r.matches_expectation for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="a2m", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--out", help="write output to this path instead of stdout")
        if fmt:
            p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("wp", help="evaluate the Weierstrass function")
    p.add_argument("--z", required=True)
    p.add_argument("--g2", default="0")
    p.add_argument("--g3", default="0")
    common(p)
    p.set_defaults(func=cmd_wp)

    p = sub.add_parser("show", help="print an operator from the catalog")
    p.add_argument("--op", required=True)
    p.add_argument("--m", default="2")
    common(p)
    p.set_defaults(func=cmd_show)

    def report_flags(p):
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--timing", action="store_true", help="include wall times in JSON output")
        common(p)

    p = sub.add_parser("commute", help="check that two operators commute")
    p.add_argument("--pair", required=True)
    p.add_argument("--m", default="2")
    p.add_argument("--numeric", action="store_true", help="also run the numeric and rational-limit oracles")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--tol", type=float, default=vf.NUMERIC_TOL)
    p.add_argument("--expect", choices=("pass", "fail"), default="pass")
    report_flags(p)
    p.set_defaults(func=cmd_commute)

    p = sub.add_parser("separation", help="check that a symbol separates the fiber")
    p.add_argument("--symbol", required=True)
    p.add_argument("--m", default="2")
    p.add_argument("--samples", type=int, default=5, help="generic levels per seed")
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--eps", type=float, default=vf.SEPARATION_EPS)
    p.add_argument("--expect", choices=("pass", "fail"), default="pass")
    report_flags(p)
    p.set_defaults(func=cmd_separation)

    p = sub.add_parser("suite", help="run every check")
    p.add_argument("--m", action="append", help="deformation parameters (repeat or comma-separate)")
    p.add_argument("--variant", choices=catalog.VARIANTS, default="printed")
    report_flags(p)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"a2m: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
