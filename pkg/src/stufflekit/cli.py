"""Command-line front end and expression evaluator.

Subcommands cover each layer of the library; symbolic results serialize
rationals as exact strings, numeric results carry explicit error bounds.
Exit codes: 0 success, 1 usage or evaluation error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import acceptance, fgl, renorm, spheremaps
from .combinatorics import (
    CommensurableSet,
    Composition,
    DiracCode,
    commensurable_to_json,
    decode,
    dirac_to_json,
    encode,
    lyndon_compositions,
    relative_cardinality,
)
from .exprs import BinOp, Call, Expr, Neg, ParseError, Rational, WordLit, parse, to_source
from .mzv import DivergentSeriesError, FloatPoly, MzvValue, check_stuffle, zeta, zeta_regularized
from .quasishuffle import (
    RegularizedPoly,
    WordPoly,
    antipode,
    coproduct,
    hoffman_exp,
    hoffman_log,
    pairing,
    regularize,
    regularized_to_json,
    wordpoly_to_json,
)
from .series import TruncSeries
from .symmfunc import SymPoly, convert, embed_qsymm, hall_pairing, sympoly_to_json

CONFIG_ENV = "STUFFLEKIT_CONFIG"


class EvalError(ValueError):
    """Type or domain error while evaluating an expression."""


@dataclass
class EvalContext:
    max_weight: int = 12
    eps: float = 1e-8
    grid: int = 24


# -- evaluator ----------------------------------------------------------------

def _as_wordpoly(value, what: str) -> WordPoly:
    if isinstance(value, WordPoly):
        return value
    if isinstance(value, Fraction):
        return value * WordPoly.unit()
    raise EvalError(f"{what} expects a word polynomial, got {type(value).__name__}")


def _as_composition(args_values, what: str) -> Composition:
    if len(args_values) == 1 and isinstance(args_values[0], WordPoly):
        p = args_values[0]
        if len(p.terms) == 1 and next(iter(p.terms.values())) == 1:
            return next(iter(p.terms))
        raise EvalError(f"{what} expects a single word")
    parts = []
    for v in args_values:
        if not (isinstance(v, Fraction) and v.denominator == 1 and v >= 1):
            raise EvalError(f"{what} expects positive integer parts or a word literal")
        parts.append(int(v))
    return Composition(parts)


def evaluate(expr: Expr, ctx: EvalContext):
    """Evaluate an expression tree to a library value."""
    if isinstance(expr, Rational):
        return expr.value
    if isinstance(expr, WordLit):
        _check_weight(sum(expr.parts), ctx)
        return WordPoly.word(expr.parts)
    if isinstance(expr, Neg):
        value = evaluate(expr.operand, ctx)
        if isinstance(value, (Fraction, WordPoly, RegularizedPoly)):
            return -1 * value
        raise EvalError("cannot negate this value")
    if isinstance(expr, BinOp):
        return _eval_binop(expr, ctx)
    if isinstance(expr, Call):
        return _eval_call(expr, ctx)
    raise EvalError(f"cannot evaluate {expr!r}")


def _check_weight(weight: int, ctx: EvalContext) -> None:
    if weight > ctx.max_weight:
        raise EvalError(f"weight {weight} exceeds the configured maximum {ctx.max_weight}")


def _eval_binop(expr: BinOp, ctx: EvalContext):
    left = evaluate(expr.left, ctx)
    right = evaluate(expr.right, ctx)
    op = expr.op
    if op in "+-":
        if isinstance(left, Fraction) and isinstance(right, Fraction):
            return left + right if op == "+" else left - right
        if isinstance(left, RegularizedPoly) or isinstance(right, RegularizedPoly):
            lp = left if isinstance(left, RegularizedPoly) else RegularizedPoly({0: _as_wordpoly(left, op)})
            rp = right if isinstance(right, RegularizedPoly) else RegularizedPoly({0: _as_wordpoly(right, op)})
            return lp + rp if op == "+" else lp - rp
        lp, rp = _as_wordpoly(left, op), _as_wordpoly(right, op)
        return lp + rp if op == "+" else lp - rp
    if op in "*#":
        if isinstance(left, Fraction) and isinstance(right, Fraction):
            return left * right
        if isinstance(left, Fraction):
            return left * right if isinstance(right, (WordPoly, RegularizedPoly)) else _fail_mul(right)
        if isinstance(right, Fraction):
            return right * left if isinstance(left, (WordPoly, RegularizedPoly)) else _fail_mul(left)
        if isinstance(left, RegularizedPoly) and isinstance(right, RegularizedPoly):
            if op == "#":
                raise EvalError("shuffle is not defined on regularized polynomials")
            return left * right
        lp, rp = _as_wordpoly(left, op), _as_wordpoly(right, op)
        return lp * rp if op == "*" else lp.shuffle(rp)
    if op == ".":
        return _as_wordpoly(left, op).concat(_as_wordpoly(right, op))
    raise EvalError(f"unknown operator {op!r}")


def _fail_mul(value):
    raise EvalError(f"cannot multiply value of type {type(value).__name__}")


def _eval_call(expr: Call, ctx: EvalContext):
    name = expr.name
    values = [evaluate(a, ctx) for a in expr.args]
    if name == "exp":
        _require_args(expr, values, 1)
        return hoffman_exp(_as_wordpoly(values[0], "exp"))
    if name == "log":
        _require_args(expr, values, 1)
        return hoffman_log(_as_wordpoly(values[0], "log"))
    if name == "regularize":
        _require_args(expr, values, 1)
        return regularize(_as_wordpoly(values[0], "regularize"))
    if name == "antipode":
        _require_args(expr, values, 1)
        return antipode(_as_wordpoly(values[0], "antipode"))
    if name == "pair":
        _require_args(expr, values, 2)
        word = _as_composition(values[:1], "pair")
        return pairing(word, _as_wordpoly(values[1], "pair"))
    if name == "zeta":
        word = _as_composition(values, "zeta")
        try:
            return zeta(word, ctx.eps)
        except DivergentSeriesError as exc:
            raise EvalError(str(exc)) from exc
    if name == "zetareg":
        word = _as_composition(values, "zetareg")
        return zeta_regularized(word, ctx.eps)
    if name == "stuffle":
        _require_args(expr, values, 2)
        u = _as_composition(values[:1], "stuffle")
        v = _as_composition(values[1:], "stuffle")
        return check_stuffle(u, v, ctx.eps)
    raise EvalError(f"unknown function {name!r}")


def _require_args(expr: Call, values, count: int) -> None:
    if len(values) != count:
        raise EvalError(f"{expr.name} takes {count} argument(s), got {len(values)}")


# -- JSON rendering -----------------------------------------------------------

def render_value(value):
    if isinstance(value, Fraction):
        return wordpoly_to_json(value * WordPoly.unit())
    if isinstance(value, WordPoly):
        return wordpoly_to_json(value)
    if isinstance(value, RegularizedPoly):
        return {"T^" + str(i): wordpoly_to_json(p) for i, p in sorted(value.coeffs.items())}
    if isinstance(value, MzvValue):
        return {"value": value.value, "error": value.error_bound}
    if isinstance(value, FloatPoly):
        return {
            "T^" + str(i): {"value": c, "error": value.error(i)}
            for i, c in sorted(value.coeffs.items())
        }
    if isinstance(value, float):
        return value
    raise EvalError(f"cannot render value of type {type(value).__name__}")


def _dump(payload, args) -> None:
    if getattr(args, "pretty", False):
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(json.dumps(payload, sort_keys=False))


# -- argument plumbing --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def load_config(path: str | None) -> dict[str, str]:
    """Flat key=value file; later lines win, blank lines and # comments skipped."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path or not os.path.exists(path):
        return {}
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise SystemExit(f"bad config line: {line!r}")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def build_context(args) -> EvalContext:
    cfg = load_config(getattr(args, "config", None))
    ctx = EvalContext()
    if "max_weight" in cfg:
        ctx.max_weight = int(cfg["max_weight"])
    if "eps" in cfg:
        ctx.eps = float(cfg["eps"])
    if "grid" in cfg:
        ctx.grid = int(cfg["grid"])
    if getattr(args, "max_weight", None) is not None:
        ctx.max_weight = args.max_weight
    if getattr(args, "eps", None) is not None:
        ctx.eps = args.eps
    if getattr(args, "grid", None) is not None:
        ctx.grid = args.grid
    return ctx


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-weight", type=int, dest="max_weight", help="symbolic truncation")
    p.add_argument("--eps", type=float, help="numeric target error")
    p.add_argument("--grid", type=int, help="quadrature refinement order")
    p.add_argument("--config", help="key=value config file (default: $%s)" % CONFIG_ENV)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="compact JSON output (default)")
    fmt.add_argument("--pretty", action="store_true", help="indented JSON output")


def _parse_composition(text: str) -> Composition:
    text = text.strip()
    if text.startswith("w(") and text.endswith(")"):
        text = text[2:-1]
    elif text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    if not text:
        return Composition()
    return Composition(int(x) for x in text.split(","))


# -- subcommands ----------------------------------------------------------------

def _cmd_qsh(args) -> int:
    ctx = build_context(args)
    value = evaluate(parse(args.expression), ctx)
    _dump(render_value(value), args)
    return 0


def _cmd_hopf(args) -> int:
    ctx = build_context(args)
    value = _as_wordpoly(evaluate(parse(args.expression), ctx), "hopf")
    if args.antipode:
        _dump(wordpoly_to_json(antipode(value)), args)
        return 0
    terms = coproduct(value)
    payload = {
        f"{to_source(WordLit(tuple(u)))} (x) {to_source(WordLit(tuple(v)))}": str(c)
        for (u, v), c in sorted(terms.items())
    }
    _dump(payload, args)
    return 0


def _cmd_sym(args) -> int:
    lam = _parse_composition(args.partition)
    f = SymPoly(args.basis, {tuple(sorted(lam, reverse=True)): Fraction(1)}) if lam \
        else SymPoly.unit(args.basis)
    if args.action == "convert":
        _dump(sympoly_to_json(convert(f, args.to)), args)
    elif args.action == "embed":
        _dump(wordpoly_to_json(embed_qsymm(f)), args)
    else:  # pair
        g_lam = _parse_composition(args.with_partition)
        g = SymPoly(args.with_basis, {tuple(sorted(g_lam, reverse=True)): Fraction(1)}) if g_lam \
            else SymPoly.unit(args.with_basis)
        _dump({"pairing": str(hall_pairing(f, g))}, args)
    return 0


def _series_json(s: TruncSeries) -> dict:
    def _coeff(c):
        if isinstance(c, Fraction):
            return str(c)
        if isinstance(c, SymPoly):
            return sympoly_to_json(c)
        return {"poly": repr(c)}

    return {
        "vars": list(s.vars),
        "maxdeg": s.maxdeg,
        "coeffs": {
            "(" + ",".join(map(str, e)) + ")": _coeff(c)
            for e, c in sorted(s.coeffs.items(), key=lambda t: (sum(t[0]), t[0]))
        },
    }


def _cmd_fgl(args) -> int:
    law = fgl.universal_fgl(args.maxdeg)
    payload = {
        "vars": list(law.vars),
        "maxdeg": law.maxdeg,
        "coeffs": {
            "(" + ",".join(map(str, e)) + ")": repr(c)
            for e, c in sorted(law.coeffs.items(), key=lambda t: (sum(t[0]), t[0]))
        },
        "integral": fgl.fgl_is_integral(args.maxdeg),
    }
    _dump(payload, args)
    return 0


def _cmd_renorm(args) -> int:
    n = args.maxdeg
    lhs = renorm.renormalize(renorm.chern_character(n), n)
    rhs = renorm.st_modulus(n)
    payload = {
        "maxdeg": n,
        "renormalized_character": _series_json(lhs),
        "modulus": _series_json(rhs),
        "equal": lhs == rhs,
    }
    _dump(payload, args)
    return 0 if lhs == rhs else 2


def _cmd_zeta(args) -> int:
    ctx = build_context(args)
    word = _parse_composition(args.composition)
    value = zeta(word, ctx.eps)
    _dump({"value": value.value, "error": value.error_bound}, args)
    return 0


def _cmd_stuffle(args) -> int:
    ctx = build_context(args)
    left = _parse_composition(args.left)
    right = _parse_composition(args.right)
    residual = check_stuffle(left, right, ctx.eps)
    _dump({"left": list(left), "right": list(right),
           "residual": residual, "eps": ctx.eps}, args)
    return 0


def _cmd_dirac(args) -> int:
    if args.action == "encode":
        missing = tuple(int(x) for x in args.missing.split(",") if x != "") if args.missing else ()
        extra = tuple(int(x) for x in args.extra.split(",") if x != "") if args.extra else ()
        s = CommensurableSet(missing, extra)
        code = encode(s)
        _dump({"set": commensurable_to_json(s),
               "relative_cardinality": relative_cardinality(s),
               "code": dirac_to_json(code)}, args)
    else:
        pi = _parse_composition(args.pi) if args.pi else Composition()
        s = decode(DiracCode(args.s0, pi))
        _dump({"code": dirac_to_json(DiracCode(args.s0, pi)),
               "set": commensurable_to_json(s),
               "relative_cardinality": relative_cardinality(s)}, args)
    return 0


def _cmd_ng(args) -> int:
    ctx = build_context(args)
    order = args.n or ctx.grid
    grid = spheremaps.QuadratureGrid(order)
    if args.action == "degree":
        maker = spheremaps.MAP_CATALOG.get(args.map)
        if maker is None:
            raise SystemExit(f"unknown map {args.map!r}; choices: {sorted(spheremaps.MAP_CATALOG)}")
        value = spheremaps.degree(maker(), grid)
        payload = {"value": value, "residual": abs(value - round(value)), "grid": order}
    elif args.action == "mercator":
        vol, _ = spheremaps.mercator(args.lam, grid)
        closed = 1.0 + (args.lam + math.sin(args.lam)) / math.pi
        payload = {"value": vol, "residual": abs(vol - closed), "grid": order}
    elif args.action == "alpha":
        plus = spheremaps.cap_extension(args.lam, "plus")
        minus = spheremaps.cap_extension(args.lam, "minus")
        value = spheremaps.nambu_goto_alpha(plus, minus, grid)
        closed = (1.0 + (args.lam + math.sin(args.lam)) / math.pi) % 1.0
        residual = min(abs(value - closed), 1.0 - abs(value - closed))
        payload = {"value": value, "residual": residual, "grid": order}
    else:  # volume
        vol = spheremaps.sphere_volume(grid)
        payload = {"value": vol, "residual": abs(vol - spheremaps.VOL_S3), "grid": order}
    _dump(payload, args)
    return 0


def _cmd_verify(args) -> int:
    params = {}
    if args.maxdeg is not None:
        params["renorm_maxdeg"] = args.maxdeg
    results = acceptance.run(args.names or None, params=params)
    failures = 0
    for res in results:
        line = f"[{'PASS' if res.passed else 'FAIL'}] {res.cid:>2} {res.name} ({res.seconds:.2f}s)"
        print(line)
        if res.detail and (args.verbose or not res.passed):
            print(f"       {res.detail}")
        failures += 0 if res.passed else 1
    print(f"{len(results) - failures}/{len(results)} criteria passed")
    return 2 if failures else 0


def _cmd_lyndon(args) -> int:
    words = lyndon_compositions(args.max_weight)
    _dump([list(w) for w in words], args)
    return 0


def _cmd_repl(args) -> int:
    ctx = build_context(args)
    print("stufflekit repl; empty line or 'quit' exits")
    while True:
        try:
            line = input("> ")
        except EOFError:
            print()
            return 0
        line = line.strip()
        if not line or line in {"quit", "exit"}:
            return 0
        try:
            value = evaluate(parse(line), ctx)
            print(json.dumps(render_value(value)))
        except ParseError as exc:
            print(f"parse error: {exc}")
            print("  " + line)
            print("  " + " " * (exc.col - 1) + "^")
        except (EvalError, ValueError) as exc:
            print(f"error: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stufflekit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qsh", help="evaluate a word-algebra expression")
    p.add_argument("expression")
    _add_common(p)
    p.set_defaults(fn=_cmd_qsh)

    p = sub.add_parser("hopf", help="coproduct or antipode of an expression")
    p.add_argument("expression")
    p.add_argument("--antipode", action="store_true")
    _add_common(p)
    p.set_defaults(fn=_cmd_hopf)

    p = sub.add_parser("sym", help="symmetric-function operations")
    p.add_argument("action", choices=("convert", "embed", "pair"))
    p.add_argument("partition", help="e.g. (2,1); empty for the unit")
    p.add_argument("--basis", default="m", choices=("m", "e", "h", "p"))
    p.add_argument("--to", default="p", choices=("m", "e", "h", "p"))
    p.add_argument("--with-partition", dest="with_partition", default="")
    p.add_argument("--with-basis", dest="with_basis", default="m", choices=("m", "e", "h", "p"))
    _add_common(p)
    p.set_defaults(fn=_cmd_sym)

    p = sub.add_parser("fgl", help="the universal formal group law")
    p.add_argument("--maxdeg", type=int, default=4)
    _add_common(p)
    p.set_defaults(fn=_cmd_fgl)

    p = sub.add_parser("renorm", help="both sides of the renormalization identity")
    p.add_argument("--maxdeg", type=int, default=4)
    _add_common(p)
    p.set_defaults(fn=_cmd_renorm)

    p = sub.add_parser("zeta", help="numeric nested zeta value")
    p.add_argument("composition", help="e.g. 2,1")
    _add_common(p)
    p.set_defaults(fn=_cmd_zeta)

    p = sub.add_parser("stuffle", help="residual of the product relation")
    p.add_argument("left")
    p.add_argument("right")
    _add_common(p)
    p.set_defaults(fn=_cmd_stuffle)

    p = sub.add_parser("dirac", help="encode/decode commensurable integer sets")
    p.add_argument("action", choices=("encode", "decode"))
    p.add_argument("--missing", default="", help="comma-separated nonnegative integers")
    p.add_argument("--extra", default="", help="comma-separated negative integers")
    p.add_argument("--s0", type=int, default=0)
    p.add_argument("--pi", default="", help="ordered partition, e.g. 3,1")
    _add_common(p)
    p.set_defaults(fn=_cmd_dirac)

    p = sub.add_parser("ng", help="sphere-map quadrature")
    p.add_argument("action", choices=("degree", "mercator", "alpha", "volume"))
    p.add_argument("--map", default="identity")
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--n", type=int, help="grid order (defaults to --grid)")
    _add_common(p)
    p.set_defaults(fn=_cmd_ng)

    p = sub.add_parser("lyndon", help="Lyndon compositions up to a weight")
    p.add_argument("max_weight", type=int)
    _add_common(p)
    p.set_defaults(fn=_cmd_lyndon)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("names", nargs="*", help="restrict to named criteria")
    p.add_argument("--maxdeg", type=int, help="override for the renormalization check")
    p.add_argument("--verbose", action="store_true")
    _add_common(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("repl", help="line-oriented evaluator")
    _add_common(p)
    p.set_defaults(fn=_cmd_repl)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except (EvalError, DivergentSeriesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return code


if __name__ == "__main__":
    sys.exit(main())
