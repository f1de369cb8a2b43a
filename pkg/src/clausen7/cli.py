"""Command-line front end: eval, integrate, verify, discover, sample, constants.

Numeric arguments accept plain decimals, integer ratios ("3/2"), and exact
multiples of the cached constants: "2pi/7", "pi", "6phi7", "sqrt7", ...
Arguments starting with "-" other than plain negative numbers need a "--"
separator before them (argparse convention).

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import ast
import json
import math
import re
import sys
from fractions import Fraction

import mpmath

from .exceptions import (ConfigurationError, DomainError, IntegrandError,
                         NonConvergenceError, PrecisionError,
                         RelationNotFoundError, UnknownIdentityError)
from .identities import identity_ids, verify, verify_all
from .mpcontext import Real, make_context
from .quadrature import integrate_i7_pieces, tanh_sinh
from .relations import rediscover_eq6
from .specfun import clausen2, dirichlet_L, hurwitz_zeta, kronecker, zagier_A

_SYM_RE = re.compile(r"^([+-]?\d*)(pi|phi7|sqrt7|sqrt3)(?:/(\d+))?$", re.IGNORECASE)
_FRAC_RE = re.compile(r"^[+-]?\d+/\d+$")


def parse_scalar(text: str):
    """Parse a CLI numeric token into a spec resolvable against a context.

    Returns one of
      ("sym", coefficient, constant_name, denominator)
      ("frac", Fraction)
      ("dec", text)
    """
    token = text.strip()
    m = _SYM_RE.match(token)
    if m:
        coef_s, name, den_s = m.groups()
        coef = {"": 1, "+": 1, "-": -1}.get(coef_s)
        if coef is None:
            coef = int(coef_s)
        den = int(den_s) if den_s else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return ("sym", coef, name.lower(), den)
    if _FRAC_RE.match(token):
        num, den = token.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return ("frac", Fraction(int(num), int(den)))
    try:
        float(token)
    except ValueError:
        raise ValueError(f"cannot parse numeric argument {text!r}") from None
    return ("dec", token)


def resolve_scalar(spec, ctx):
    """Turn a parse_scalar() result into an mpf at working precision."""
    kind = spec[0]
    with ctx.workprec():
        if kind == "sym":
            _, coef, name, den = spec
            base = {"pi": ctx.pi, "phi7": ctx.phi7,
                    "sqrt7": ctx.sqrt7, "sqrt3": ctx.sqrt3}[name]
            return coef * base / den
        if kind == "frac":
            return ctx.mpf(spec[1])
        return ctx.mpf(spec[1])


def scalar_exact(spec):
    """The Fraction behind a token if it is exactly rational, else None."""
    if spec[0] == "frac":
        return spec[1]
    if spec[0] == "dec":
        try:
            return Fraction(spec[1])
        except ValueError:
            return None
    return None


# --------------------------------------------------------------------------
# Safe expression evaluation for `integrate custom`
# --------------------------------------------------------------------------

_EXPR_FUNCS = {
    "log": mpmath.ln, "ln": mpmath.ln, "exp": mpmath.exp, "sqrt": mpmath.sqrt,
    "sin": mpmath.sin, "cos": mpmath.cos, "tan": mpmath.tan,
    "asin": mpmath.asin, "acos": mpmath.acos, "atan": mpmath.atan,
    "abs": abs,
}
_EXPR_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
                ast.Mult: lambda a, b: a * b, ast.Div: lambda a, b: a / b,
                ast.Pow: lambda a, b: a ** b}


def compile_expression(text: str):
    """Compile a restricted arithmetic expression in the variable t.

    Allowed: numbers, + - * / **, unary +-, the functions log/ln, exp, sqrt,
    sin, cos, tan, asin, acos, atan, abs, and the names t, pi, phi7, sqrt7,
    sqrt3.  Anything else is rejected; no Python evaluation takes place.
    """
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse expression {text!r}: {exc}") from None

    def check(node):
        if isinstance(node, ast.Expression):
            check(node.body)
        elif isinstance(node, ast.BinOp) and type(node.op) in _EXPR_BINOPS:
            check(node.left)
            check(node.right)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            check(node.operand)
        elif isinstance(node, ast.Call):
            if (not isinstance(node.func, ast.Name)
                    or node.func.id not in _EXPR_FUNCS
                    or len(node.args) != 1 or node.keywords):
                raise ValueError(f"unsupported call in expression {text!r}")
            check(node.args[0])
        elif isinstance(node, ast.Name):
            if node.id not in ("t", "pi", "phi7", "sqrt7", "sqrt3"):
                raise ValueError(f"unknown name {node.id!r} in expression")
        elif isinstance(node, ast.Constant):
            if not isinstance(node.value, (int, float)):
                raise ValueError(f"unsupported constant {node.value!r} in expression")
        else:
            raise ValueError(f"unsupported syntax in expression {text!r}")

    check(tree)

    def evaluate(node, t, consts):
        if isinstance(node, ast.Expression):
            return evaluate(node.body, t, consts)
        if isinstance(node, ast.BinOp):
            return _EXPR_BINOPS[type(node.op)](evaluate(node.left, t, consts),
                                               evaluate(node.right, t, consts))
        if isinstance(node, ast.UnaryOp):
            v = evaluate(node.operand, t, consts)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Call):
            return _EXPR_FUNCS[node.func.id](evaluate(node.args[0], t, consts))
        if isinstance(node, ast.Name):
            return t if node.id == "t" else consts[node.id]
        return mpmath.mpf(node.value)

    def f(t, consts):
        return evaluate(tree, t, consts)

    return f


# --------------------------------------------------------------------------
# Output plumbing
# --------------------------------------------------------------------------

def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2)


# --------------------------------------------------------------------------
# Command handlers
# --------------------------------------------------------------------------

def _cmd_eval(args) -> int:
    ctx = make_context(args.digits)
    target = args.target
    raw = args.args

    def need(n):
        if len(raw) != n:
            raise ValueError(f"eval {target} takes {n} argument(s), got {len(raw)}")

    if target == "cl2":
        need(1)
        value = clausen2(resolve_scalar(parse_scalar(raw[0]), ctx), ctx)
    elif target == "L":
        need(2)
        d = int(raw[0])
        s_spec = parse_scalar(raw[1])
        s = scalar_exact(s_spec)
        value = dirichlet_L(d, s if s is not None else resolve_scalar(s_spec, ctx), ctx)
    elif target == "hurwitz":
        need(2)
        s_spec, a_spec = parse_scalar(raw[0]), parse_scalar(raw[1])
        s = scalar_exact(s_spec)
        a = scalar_exact(a_spec)
        value = hurwitz_zeta(s if s is not None else resolve_scalar(s_spec, ctx),
                             a if a is not None else resolve_scalar(a_spec, ctx), ctx)
    elif target == "A":
        need(1)
        value = zagier_A(resolve_scalar(parse_scalar(raw[0]), ctx), ctx)
    elif target == "kronecker":
        need(2)
        value = kronecker(int(raw[0]), int(raw[1]))
    else:
        raise ValueError(f"unknown eval target {target!r}")

    rendered = str(value) if isinstance(value, int) else value.decimal(args.digits)
    if args.format == "json":
        _emit(args, _json_dump({"command": "eval", "target": target,
                                "arguments": list(raw), "digits": args.digits,
                                "value": rendered}))
    else:
        _emit(args, rendered)
    return 0


def _piece_summary(piece) -> dict:
    return {"value": str(piece.value),
            "error_estimate": mpmath.nstr(piece.error_estimate.value, 3),
            "levels_used": piece.levels_used,
            "evaluations": piece.evaluations}


def _cmd_integrate(args) -> int:
    ctx = make_context(args.digits)
    if args.target == "i7":
        if args.args:
            raise ValueError("integrate i7 takes no further arguments")
        p1, p2 = integrate_i7_pieces(ctx, workers=args.workers)
        with ctx.workprec():
            value = Real(24 / (7 * ctx.sqrt7) * (p1.value.value + p2.value.value),
                         ctx.target_digits)
            err = Real(p1.error_estimate.value + p2.error_estimate.value,
                       ctx.target_digits)
        pieces = [p1, p2]
    elif args.target == "custom":
        if len(args.args) != 3:
            raise ValueError("integrate custom takes: a b expr")
        a = resolve_scalar(parse_scalar(args.args[0]), ctx)
        b = resolve_scalar(parse_scalar(args.args[1]), ctx)
        f = compile_expression(args.args[2])
        with ctx.workprec():
            consts = {"pi": ctx.pi, "phi7": ctx.phi7,
                      "sqrt7": ctx.sqrt7, "sqrt3": ctx.sqrt3}
        res = tanh_sinh(lambda t: f(t, consts), a, b, ctx, workers=args.workers)
        value, err, pieces = res.value, res.error_estimate, [res]
    else:
        raise ValueError(f"unknown integrate target {args.target!r}")

    levels = max(p.levels_used for p in pieces)
    evaluations = sum(p.evaluations for p in pieces)
    if args.format == "json":
        _emit(args, _json_dump({
            "command": "integrate", "target": args.target, "digits": args.digits,
            "value": value.decimal(args.digits),
            "error_estimate": mpmath.nstr(err.value, 3),
            "levels_used": levels, "evaluations": evaluations,
            "pieces": [_piece_summary(p) for p in pieces]}))
    else:
        lines = [value.decimal(args.digits),
                 f"error_estimate: {mpmath.nstr(err.value, 3)}",
                 f"levels_used: {levels}",
                 f"evaluations: {evaluations}"]
        _emit(args, "\n".join(lines))
    return 0


def _report_table(reports) -> str:
    width = max(len(r.id) for r in reports)
    lines = [f"{'id'.ljust(width)}  status  agree  threshold  seconds"]
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        lines.append(f"{r.id.ljust(width)}  {status:6}  {r.agree_digits:5d}  "
                     f"{r.threshold:9d}  {r.elapsed:7.3f}")
    passed = sum(1 for r in reports if r.passed)
    lines.append(f"{passed}/{len(reports)} passed")
    return "\n".join(lines)


def _report_detail(r) -> str:
    lines = [f"id: {r.id}",
             f"passed: {str(r.passed).lower()}",
             f"agree_digits: {r.agree_digits}",
             f"threshold: {r.threshold}"]
    if r.lhs_value is not None:
        lines.append(f"lhs: {r.lhs_value}")
        lines.append(f"rhs: {r.rhs_value}")
    if r.params:
        lines.append(f"params: {r.params} (seed {r.seed})")
    if r.error:
        lines.append(f"error: {r.error}")
    lines.append(f"elapsed: {r.elapsed:.3f} s")
    return "\n".join(lines)


def _cmd_verify(args) -> int:
    if args.id == "all":
        reports = verify_all(args.digits, seed=args.seed, workers=args.workers)
    else:
        reports = [verify(args.id, args.digits, seed=args.seed, workers=args.workers)]
    if args.format == "json":
        _emit(args, _json_dump([r.to_dict() for r in reports]))
    elif args.id == "all":
        _emit(args, _report_table(reports))
    else:
        _emit(args, _report_detail(reports[0]))
    return 0 if all(r.passed for r in reports) else 1


def _cmd_discover(args) -> int:
    if args.digits < 100:
        raise ValueError(
            f"discover needs --digits >= 100 (got {args.digits}); "
            "the six-term search is unreliable below that")
    relation = rediscover_eq6(args.digits)
    coeffs = " ".join(str(c) for c in relation.coefficients)
    residual = mpmath.nstr(relation.residual.value, 3)
    if args.format == "json":
        _emit(args, _json_dump({
            "command": "discover", "digits": args.digits,
            "coefficients": list(relation.coefficients),
            "residual": residual,
            "norm_bound": relation.norm_bound,
            "precision_used": relation.precision_used,
            "iterations": relation.iterations}))
    else:
        _emit(args, f"coefficients: {coeffs}\nresidual: {residual}\n"
                    f"precision_used: {relation.precision_used}")
    return 0


_GUARD_BAND = 1e-6


def _i7_integrand_f64(theta: float) -> float:
    s, c = math.sin(theta), math.cos(theta)
    r7 = math.sqrt(7.0)
    return math.log(abs((s + r7 * c) / (s - r7 * c)))


def _cmd_sample(args) -> int:
    points = args.points
    if points < 2:
        raise ValueError(f"sample needs at least 2 points, got {points}")
    lo, hi = math.pi / 3, math.pi / 2
    phi7 = math.atan(math.sqrt(7.0))
    left_edge = phi7 - _GUARD_BAND
    while phi7 - left_edge < _GUARD_BAND:   # keep the edge outside the band
        left_edge = math.nextafter(left_edge, 0.0)
    right_edge = phi7 + _GUARD_BAND
    while right_edge - phi7 < _GUARD_BAND:
        right_edge = math.nextafter(right_edge, 2.0)
    left = (lo, left_edge)
    right = (right_edge, hi)
    len_l = left[1] - left[0]
    len_r = right[1] - right[0]
    n_left = round(points * len_l / (len_l + len_r))
    n_left = min(max(n_left, 1), points - 1)
    n_right = points - n_left

    def linspace(a, b, k, outer_first):
        if k == 1:
            return [a if outer_first else b]
        pts = [a + i * (b - a) / (k - 1) for i in range(k)]
        pts[0], pts[-1] = a, b       # keep ends exact despite float step noise
        return pts

    thetas = (linspace(left[0], left[1], n_left, outer_first=True)
              + linspace(right[0], right[1], n_right, outer_first=False))
    rows = ["theta,value"]
    rows += [f"{t!r},{_i7_integrand_f64(t)!r}" for t in thetas]
    _emit(args, "\n".join(rows))
    return 0


def _cmd_constants(args) -> int:
    ctx = make_context(args.digits)
    names = [("pi", ctx.pi), ("sqrt3", ctx.sqrt3), ("sqrt7", ctx.sqrt7),
             ("ln2", ctx.ln2), ("phi7", ctx.phi7)]
    values = {name: Real(v, ctx.target_digits).decimal(args.digits)
              for name, v in names}
    if args.format == "json":
        _emit(args, _json_dump({"command": "constants", "digits": args.digits,
                                "values": values}))
    else:
        _emit(args, "\n".join(f"{name} = {val}" for name, val in values.items()))
    return 0


# --------------------------------------------------------------------------
# Parser and entry points
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=50,
                        help="decimal digits of working target (default 50)")
    common.add_argument("--workers", type=int, default=1,
                        help="evaluation workers for quadrature (default 1)")
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default text)")
    common.add_argument("--seed", type=int, default=1,
                        help="seed for parameterized identity checks (default 1)")
    common.add_argument("--output", default=None, metavar="PATH",
                        help="write output to PATH instead of stdout")

    parser = argparse.ArgumentParser(
        prog="clausen7",
        description="High-precision Clausen/L-series evaluation, singular "
                    "quadrature, identity verification, and integer-relation "
                    "discovery.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common],
                       help="evaluate a special function")
    p.add_argument("target", choices=("cl2", "L", "hurwitz", "A", "kronecker"))
    p.add_argument("args", nargs="*",
                   help="target arguments, e.g.: cl2 2pi/7 | L -7 2 | "
                        "hurwitz 2 1/7 | A sqrt7 | kronecker -7 10")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("integrate", parents=[common],
                       help="tanh-sinh integration")
    p.add_argument("target", choices=("i7", "custom"))
    p.add_argument("args", nargs="*", help="for custom: a b expr")
    p.set_defaults(handler=_cmd_integrate)

    p = sub.add_parser("verify", parents=[common],
                       help="verify one identity or all of them")
    p.add_argument("id", help="identity id, or 'all'")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("discover", parents=[common],
                       help="rediscover the six-term Clausen relation by PSLQ")
    p.set_defaults(handler=_cmd_discover)

    p = sub.add_parser("sample", parents=[common],
                       help="CSV sample of the i7 integrand (double precision)")
    p.add_argument("points", type=int)
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("constants", parents=[common],
                       help="print the cached fundamental constants")
    p.set_defaults(handler=_cmd_constants)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.handler(args)
    except (ConfigurationError, DomainError, PrecisionError,
            UnknownIdentityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NonConvergenceError, IntegrandError, RelationNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
