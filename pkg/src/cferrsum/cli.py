"""Command-line front end.

Exit codes: 0 success, 2 domain errors (bad input or exhausted precision),
64 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cfrac import convergents, expand, parse_word, value_of
from .errors import DomainError, PrecisionExhausted
from .errsum import f_partial, f_weighted, tail_bound
from .eulercf import (
    GeneralizedCF,
    gcf_convergents,
    ln2_identity_sum,
    ln2_instance,
    parse_sequence,
    pi_identity_sum,
    pi_instance,
    telescoping_partial,
)
from .exactnum import QuadraticSurd, parse_surd
from .jpa import char_poly, jpa_expand, left_eigenvector, mat_product, verify_eigen_theta
from .numeric import eval_surd
from .suites import format_table, run_suites
from .units import fundamental_unit, pell_solutions

SCHEMA = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError(message)


def read_number(text: str) -> QuadraticSurd:
    """A digit word like ``[1;2]`` or a surd like ``(1+sqrt(5))/2``."""
    text = text.strip()
    if text.startswith("["):
        return value_of(parse_word(text))
    return parse_surd(text)


def _num(x: QuadraticSurd, prec: int) -> dict:
    return {"symbolic": str(x), "decimal": eval_surd(x, prec).to_decimal()}


# subcommands return (payload dict, table text)


def cmd_expand(args):
    x = read_number(args.number)
    e = expand(x)
    out = {"input": args.number, "value": str(x), "D": x.D, "word": str(e),
           "preperiod": list(e.preperiod), "period": list(e.period)}
    text = str(e)
    if args.terms:
        conv = convergents(e, args.terms - 1)
        out["convergents"] = [{"n": c.index, "h": c.h, "k": c.k} for c in conv]
        text += "\n" + "\n".join(f"{c.index:>4}  {c.h}/{c.k}" for c in conv)
    return out, text


def cmd_errorsum(args):
    xi = read_number(args.xi)
    s = args.s if args.s is not None else "2"
    rep = f_weighted(xi, s, args.prec)
    out = rep.as_dict(args.prec)
    lines = [f"xi = {xi}", f"period = {list(rep.period)}", f"rho = {rep.rho}"]
    lines.append(f"f({rep.s}) = {rep.f}" + (f" = {eval_surd(rep.f, args.prec).to_decimal()}" if rep.exact else ""))
    if args.terms is not None and rep.exact:
        part = f_partial(xi, rep.s, args.terms)
        bound = tail_bound(xi, rep.s, args.terms)
        out["partial"] = {"n_max": args.terms, "sum": _num(part, args.prec), "tail_bound": _num(bound, args.prec)}
        lines.append(f"partial(n_max={args.terms}) = {eval_surd(part, args.prec).to_decimal()}")
        lines.append(f"tail bound = {eval_surd(bound, args.prec).to_decimal(12)}")
    return out, "\n".join(lines)


def cmd_unit(args):
    xi = read_number(args.xi)
    rep = fundamental_unit(xi, args.repeat)
    out = rep.as_dict()
    out["decimal"] = eval_surd(rep.u, args.prec).to_decimal()
    return out, f"u = {rep.u}  N(u) = {rep.norm}  N = {rep.period}  fundamental = {rep.fundamental}"


def cmd_pell(args):
    xi = read_number(args.xi)
    sols = pell_solutions(xi, args.n)
    out = {"xi": str(xi), "D": xi.D, "solutions": [s.as_dict() for s in sols]}
    rows = [f"{s.n:>3}  x = {s.x}  y = {s.y}  x^2 - {s.D} y^2 = {s.rhs}" + ("" if s.integral else "  (half-integral)")
            for s in sols]
    return out, "\n".join(rows)


def _custom_cf(args) -> GeneralizedCF:
    if not args.a or not args.b:
        raise DomainError("custom instance needs --a and --b (const:c or poly:(c0,c1,...))")
    return GeneralizedCF(parse_sequence(args.a), parse_sequence(args.b), "custom")


def cmd_euler(args):
    terms = args.terms if args.terms is not None else 1000
    if args.instance in ("pi", "ln2") and args.xi is None:
        fn = pi_identity_sum if args.instance == "pi" else ln2_identity_sum
        rep = fn(terms, max(args.prec, 128))
        out = rep.as_dict()
        text = "\n".join(f"{k}: {v}" for k, v in out.items())
        return out, text
    cf = {"pi": pi_instance, "ln2": ln2_instance}.get(args.instance, lambda: _custom_cf(args))()
    n = min(terms, 200)
    conv = gcf_convergents(cf, n)
    out = {"instance": cf.label, "convergents": [{"n": c.index, "h": c.h, "k": c.k, "B": c.B} for c in conv[2:]]}
    lines = [f"{c.index:>4}  h={c.h}  k={c.k}  B={c.B}" for c in conv[2:]]
    if args.xi is not None:
        xi = Fraction(args.xi)
        lhs, rhs = telescoping_partial(cf, xi, n)
        out["telescoping"] = {"xi": str(xi), "N": n, "lhs": str(lhs), "rhs": str(rhs), "equal": lhs == rhs}
        lines.append(f"telescoping at xi={xi}, N={n}: {'equal' if lhs == rhs else 'DIFFERENT'}")
    return out, "\n".join(lines)


def _parse_poly(text: str) -> list[int]:
    try:
        coeffs = [int(t) for t in text.replace(" ", "").strip("()[]").split(",") if t]
    except ValueError:
        raise DomainError(f"cannot read polynomial coefficients {text!r}") from None
    if len(coeffs) < 3:
        raise DomainError("polynomial must have degree >= 2 (coefficients highest degree first)")
    return coeffs


def cmd_jpa(args):
    coeffs = _parse_poly(args.poly)
    res = jpa_expand(coeffs, args.root_index, args.steps, args.prec)
    out = res.as_dict()
    lines = [f"eta = {res.eta.to_decimal()}  (prec {res.prec})"]
    lines += [f"{i:>4}  {list(d)}" for i, d in enumerate(res.digits)]
    if res.period_guess:
        lines.append(f"candidate period (unverified): preperiod {res.period_guess[0]}, length {res.period_guess[1]}")
    if args.verify:
        if res.period_guess is None:
            raise DomainError("--verify needs a candidate period; increase --steps")
        s, p = res.period_guess
        tail = res.matrices[s : s + p]
        M = mat_product(tail)
        poly = char_poly(M)
        reports = []
        idx = 0
        while True:
            try:
                mu, B = left_eigenvector(M, idx, args.prec)
            except DomainError:
                break
            rep = verify_eigen_theta(tail, B, 8, 2.0 ** (-args.prec // 2))
            reports.append({**rep.as_dict(), "mu_decimal": mu.to_decimal(30)})
            lines.append(f"mu = {mu.to_decimal(20)}  eigen residual {rep.eigen_residual:.2e}  "
                         f"theta residual {rep.theta_residual if rep.theta_residual is None else f'{rep.theta_residual:.2e}'}")
            idx += 1
        out["verify"] = {"from_step": s, "period_product": [list(r) for r in M], "char_poly": poly, "eigen": reports}
    return out, "\n".join(lines)


def cmd_verify(args):
    only = set(args.only.split(",")) if args.only else None
    results = run_suites(args.seed, args.cases, only)
    out = {"seed": args.seed, "cases": args.cases,
           "results": [{"id": r.key, "check": r.title, "pass": r.ok, "detail": r.detail} for r in results]}
    out["all_pass"] = all(r.ok for r in results)
    return out, format_table(results)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=128, help="working precision in bits")
    common.add_argument("--format", choices=("json", "table"), default="table")
    parser = _Parser(prog="cferrsum", description="Error sums of continued fractions and related tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("expand", parents=[common], help="continued fraction of a quadratic surd")
    p.add_argument("number")
    p.add_argument("--terms", type=int, help="also list this many convergents")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("errorsum", parents=[common], help="weighted error sum f(s) of a purely periodic number")
    p.add_argument("xi")
    p.add_argument("--s", help="exponent; integers are exact, other reals > 1 numeric (default 2)")
    p.add_argument("--terms", type=int, help="compare with the partial sum up to this index")
    p.set_defaults(func=cmd_errorsum)

    p = sub.add_parser("unit", parents=[common], help="unit k_{N-1} xi + k_{N-2}")
    p.add_argument("xi")
    p.add_argument("--repeat", type=int, default=1)
    p.set_defaults(func=cmd_unit)

    p = sub.add_parser("pell", parents=[common], help="Pell solutions from powers of the unit")
    p.add_argument("--xi", required=True)
    p.add_argument("--n", type=int, default=4)
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("euler", parents=[common], help="generalized continued fractions and identity sums")
    p.add_argument("--instance", choices=("pi", "ln2", "custom"), default="pi")
    p.add_argument("--terms", type=int)
    p.add_argument("--a", help="partial denominators, const:c or poly:(c0,c1,...)")
    p.add_argument("--b", help="partial numerators, same syntax")
    p.add_argument("--xi", help="rational point for the exact telescoping check")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("jpa", parents=[common], help="Jacobi-Perron expansion of (eta, ..., eta^(d-1))")
    p.add_argument("--poly", required=True, help="integer coefficients, highest degree first")
    p.add_argument("--root-index", type=int, default=0, help="real root, counted in ascending order")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--verify", action="store_true", help="eigenvector check on the candidate period")
    p.set_defaults(func=cmd_jpa)

    p = sub.add_parser("verify", parents=[common], help="run the seeded invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--only", help="comma-separated suite ids")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        payload, text = args.func(args)
    except (DomainError, PrecisionExhausted, IndexError, ValueError, ZeroDivisionError) as exc:
        kind = "precision exhausted (raise --prec)" if isinstance(exc, PrecisionExhausted) else "domain error"
        print(f"cferrsum {args.command}: {kind}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "command": args.command, **payload}, indent=2, default=str))
    else:
        print(text)
    if args.command == "verify" and not payload["all_pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
