"""The package's acceptance gate: one callable per criterion, exact tolerances.

Each criterion returns (passed, detail); :func:`run` times them and collects
results for the test suite and the ``verify`` subcommand.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np

from . import exprs, fgl, renorm, spheremaps
from .combinatorics import (
    CommensurableSet,
    compositions_up_to,
    decode,
    encode,
    relative_cardinality,
)
from .mzv import check_stuffle, zeta
from .quasishuffle import (
    NULL_BRACKET,
    STANDARD_BRACKET,
    WordPoly,
    coproduct,
    hoffman_exp,
    hoffman_log,
    quasi_shuffle,
    regularize,
)
from .series import TruncSeries
from .symmfunc import SymPoly, convert, embed_qsymm


@dataclass
class CriterionResult:
    cid: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _pairs_up_to(total_weight: int):
    words = compositions_up_to(total_weight)
    for u in words:
        for v in words:
            if u.weight + v.weight <= total_weight:
                yield u, v


def criterion_renorm(maxdeg: int = 6) -> tuple[bool, str]:
    """Renormalized exponential character equals the modulus series, exactly."""
    for n in range(maxdeg + 1):
        lhs = renorm.renormalize(renorm.chern_character(n), n)
        rhs = renorm.st_modulus(n)
        if lhs != rhs:
            return False, f"mismatch at degree {n}"
    return True, f"exact agreement through degree {maxdeg}"


def criterion_fgl_integrality(maxdeg: int = 8) -> tuple[bool, str]:
    law = fgl.universal_fgl(maxdeg)
    bad = [
        e for e, c in law.coeffs.items()
        if not c.has_integer_coefficients()
    ]
    if bad:
        return False, f"non-integral coefficients at exponents {bad[:3]}"
    return True, f"all coefficients through degree {maxdeg} lie in Z[m1,...]"


def criterion_fgl_axioms(maxdeg: int = 6) -> tuple[bool, str]:
    law = fgl.universal_fgl(maxdeg)
    # unit: F(X, 0) = X
    unit = {e: c for e, c in law.coeffs.items() if e[1] == 0}
    if unit != {(1, 0): unit.get((1, 0))} or not unit.get((1, 0)) == Fraction(1):
        return False, "unit axiom fails"
    # commutativity
    for (i, j), c in law.coeffs.items():
        if not law.coeffs.get((j, i), Fraction(0)) == c:
            return False, f"commutativity fails at {(i, j)}"
    # associativity: compare coefficients of F(F(X,Y),Z) and F(X,F(Y,Z))
    left = _fgl_three_vars(law, maxdeg, outer_first=True)
    right = _fgl_three_vars(law, maxdeg, outer_first=False)
    if left != right:
        return False, "associativity fails"
    return True, f"unit, commutativity, associativity exact through degree {maxdeg}"


def _fgl_three_vars(law: TruncSeries, maxdeg: int, outer_first: bool) -> dict:
    """Expand the iterated law on (X, Y, Z) as exponent-triple -> coefficient."""

    def law_on(a: dict, b: dict) -> dict:
        # substitute two exponent-triple polynomials into the group law
        out: dict = {}
        pow_a: dict[int, dict] = {0: {(0, 0, 0): Fraction(1)}}
        pow_b: dict[int, dict] = {0: {(0, 0, 0): Fraction(1)}}
        for k in range(1, maxdeg + 1):
            pow_a[k] = _poly3_mul(pow_a[k - 1], a, maxdeg)
            pow_b[k] = _poly3_mul(pow_b[k - 1], b, maxdeg)
        for (i, j), c in law.coeffs.items():
            term = _poly3_mul(pow_a[i], pow_b[j], maxdeg)
            for e, v in term.items():
                out[e] = out.get(e, 0) + c * v
        return {e: v for e, v in out.items() if v}

    x = {(1, 0, 0): Fraction(1)}
    y = {(0, 1, 0): Fraction(1)}
    z = {(0, 0, 1): Fraction(1)}
    if outer_first:
        return law_on(law_on(x, y), z)
    return law_on(x, law_on(y, z))


def _poly3_mul(a: dict, b: dict, maxdeg: int) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(m + n for m, n in zip(e1, e2))
            if sum(e) > maxdeg:
                continue
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def criterion_hoffman(total_weight: int = 7) -> tuple[bool, str]:
    checked = 0
    for u, v in _pairs_up_to(total_weight):
        pu, pv = WordPoly.word(u), WordPoly.word(v)
        lhs = hoffman_exp(pu.shuffle(pv))
        rhs = hoffman_exp(pu) * hoffman_exp(pv)
        if lhs != rhs:
            return False, f"intertwining fails for {u!r}, {v!r}"
        checked += 1
    for w in compositions_up_to(total_weight):
        p = WordPoly.word(w)
        if hoffman_log(hoffman_exp(p)) != p or hoffman_exp(hoffman_log(p)) != p:
            return False, f"exp/log round trip fails for {w!r}"
    return True, f"{checked} pairs intertwined, round trips exact through weight {total_weight}"


def criterion_regularization(total_weight: int = 5) -> tuple[bool, str]:
    checked = 0
    for u, v in _pairs_up_to(total_weight):
        pu, pv = WordPoly.word(u), WordPoly.word(v)
        if regularize(pu * pv) != regularize(pu) * regularize(pv):
            return False, f"homomorphism fails for {u!r}, {v!r}"
        checked += 1
    return True, f"{checked} product pairs factor through the rewriting exactly"


def criterion_bialgebra(total_weight: int = 4) -> tuple[bool, str]:
    checked = 0
    for u, v in _pairs_up_to(total_weight):
        lhs = coproduct(WordPoly.word(u) * WordPoly.word(v))
        du = coproduct(WordPoly.word(u))
        dv = coproduct(WordPoly.word(v))
        rhs: dict = {}
        for (u1, u2), cu in du.items():
            for (v1, v2), cv in dv.items():
                left = quasi_shuffle(u1, v1, STANDARD_BRACKET)
                right = quasi_shuffle(u2, v2, STANDARD_BRACKET)
                for w1, c1 in left.terms.items():
                    for w2, c2 in right.terms.items():
                        key = (w1, w2)
                        rhs[key] = rhs.get(key, Fraction(0)) + cu * cv * c1 * c2
        rhs = {k: c for k, c in rhs.items() if c}
        if lhs != rhs:
            return False, f"compatibility fails for {u!r}, {v!r}"
        checked += 1
    return True, f"coproduct respects the product on {checked} pairs"


_ZETA2 = math.pi ** 2 / 6


def criterion_mzv() -> tuple[bool, str]:
    r22 = check_stuffle((2,), (2,), 1e-9)
    r23 = check_stuffle((2,), (3,), 1e-9)
    euler = abs(zeta((2, 1), 5e-10).value - zeta((3,), 5e-10).value)
    details = f"residuals {r22:.2e}, {r23:.2e}; Euler gap {euler:.2e}"
    if r22 >= 1e-8 or r23 >= 1e-8:
        return False, details
    if euler >= 2e-9:
        return False, details
    return True, details


def criterion_newton(maxdeg: int = 10) -> tuple[bool, str]:
    for n in range(maxdeg + 1):
        for basis in ("e", "h", "p"):
            for target in ("e", "h", "p"):
                f = SymPoly.generator(basis, n)
                if convert(convert(f, target), basis) != f:
                    return False, f"round trip {basis}->{target} fails at degree {n}"
    # generating identity: e_k equals the t^k coefficient of the exponential
    series = _exp_p_series(maxdeg)
    for k in range(maxdeg + 1):
        if convert(SymPoly.generator("e", k), "p") != series[k]:
            return False, f"generating identity fails at t^{k}"
    return True, f"round trips and generating identity exact through degree {maxdeg}"


def _exp_p_series(maxdeg: int) -> list[SymPoly]:
    """Coefficients of exp(sum (-1)^(r-1) p_r t^r / r) in the power-sum basis."""
    arg = [SymPoly.zero("p") for _ in range(maxdeg + 1)]
    for r in range(1, maxdeg + 1):
        sign = 1 if r % 2 else -1
        arg[r] = Fraction(sign, r) * SymPoly.generator("p", r)
    out = [SymPoly.zero("p") for _ in range(maxdeg + 1)]
    out[0] = SymPoly.unit("p")
    power = list(out)
    fact = 1
    for j in range(1, maxdeg + 1):
        nxt = [SymPoly.zero("p") for _ in range(maxdeg + 1)]
        for d1 in range(maxdeg + 1):
            if not power[d1]:
                continue
            for d2 in range(1, maxdeg + 1 - d1):
                if arg[d2]:
                    nxt[d1 + d2] = nxt[d1 + d2] + power[d1] * arg[d2]
        power = nxt
        fact *= j
        for d in range(maxdeg + 1):
            out[d] = out[d] + Fraction(1, fact) * power[d]
    return out


def criterion_landweber(maxdeg: int = 5) -> tuple[bool, str]:
    t = fgl.SeriesSubstitution.symbolic("t", maxdeg)
    s = fgl.SeriesSubstitution.symbolic("s", maxdeg)
    images_t = fgl.landweber_coaction(t, maxdeg)
    images_s = fgl.landweber_coaction(s, maxdeg)
    composed = fgl.landweber_coaction(s.after(t), maxdeg)
    for n in range(1, maxdeg + 1):
        sequential = fgl.apply_coaction(images_t[n], images_s)
        if sequential != composed[n]:
            return False, f"monoid action law fails at e_{n}"
    return True, f"substitution action law exact through degree {maxdeg}"


def criterion_embedding(total_weight: int = 6) -> tuple[bool, str]:
    from .combinatorics import partitions

    gens = []
    for n in range(1, total_weight):
        for lam in partitions(n):
            gens.append(SymPoly("m", {lam: Fraction(1)}))
    checked = 0
    for f, g in combinations_with_replacement(gens, 2):
        fw = next(iter(f.terms)).weight
        gw = next(iter(g.terms)).weight
        if fw + gw > total_weight:
            continue
        if embed_qsymm(f * g) != embed_qsymm(f) * embed_qsymm(g):
            return False, f"multiplicativity fails for {f!r} x {g!r}"
        checked += 1
    return True, f"embedding multiplicative on {checked} generator pairs"


def criterion_dirac() -> tuple[bool, str]:
    """Exhaustive decode(encode) identity and the enumeration grading law."""
    window_missing = range(16)
    window_extra = range(-8, 0)
    missing_masks = [
        tuple(n for n in window_missing if mask >> n & 1)
        for mask in range(1 << len(window_missing))
    ]
    extra_masks = [
        tuple(n for n in window_extra if mask >> (n + 8) & 1)
        for mask in range(1 << len(window_extra))
    ]
    # enumeration heads per mask, computed once: elements below the bound
    presents = [
        [n for n in window_missing if not mask >> n & 1] + [16]
        for mask in range(1 << len(window_missing))
    ]
    bounds = [(missing[-1] + 1) if missing else 0 for missing in missing_masks]
    from .combinatorics import _canonical_set

    count = 0
    for extra in extra_masks:
        base = list(extra)
        for mask, missing in enumerate(missing_masks):
            # the mask tuples are canonical by construction; the public
            # validating constructor is exercised by the module tests
            s = _canonical_set(missing, extra)
            code = encode(s)
            back = decode(code)
            if back != s:
                return False, f"round trip fails for missing={missing} extra={extra}"
            # independent enumeration: s_k = k + #S from the partition's end on
            c = relative_cardinality(s)
            bound = bounds[mask]
            elems = base + [n for n in presents[mask] if n < bound]
            elems.append(bound)
            if len(code.pi) > len(elems) - 1:
                return False, f"partition too long for missing={missing} extra={extra}"
            for k in range(len(code.pi), len(elems)):
                if elems[k] != k + c:
                    return False, f"grading law fails for missing={missing} extra={extra}"
            count += 1
    return True, f"{count} sets round-tripped with the grading law intact"


def criterion_quadrature(order: int = 24) -> tuple[bool, str]:
    grid = spheremaps.QuadratureGrid(order)
    vol = spheremaps.sphere_volume(grid)
    if abs(vol - spheremaps.VOL_S3) > 1e-8:
        return False, f"volume off by {abs(vol - spheremaps.VOL_S3):.2e}"
    d_id = spheremaps.degree(spheremaps.identity_map(), grid)
    d_sq = spheremaps.degree(spheremaps.quaternion_square(), grid)
    if abs(d_id - 1.0) > 1e-4 or abs(d_sq - 2.0) > 1e-4:
        return False, f"degrees {d_id:.6f}, {d_sq:.6f}"
    lam_grid = np.linspace(-math.pi + 0.3, math.pi - 0.3, 11)
    worst_merc = 0.0
    for lam in lam_grid:
        value, _ = spheremaps.mercator(float(lam), grid)
        closed = 1.0 + (lam + math.sin(lam)) / math.pi
        worst_merc = max(worst_merc, abs(value - closed))
    if worst_merc > 1e-8:
        return False, f"cap volume off by {worst_merc:.2e}"
    worst_alpha = 0.0
    for lam in (-2.0, -1.0, 0.0, 1.0, 2.0):
        plus = spheremaps.cap_extension(lam, "plus")
        minus = spheremaps.cap_extension(lam, "minus")
        alpha = spheremaps.nambu_goto_alpha(plus, minus, grid)
        closed = (1.0 + (lam + math.sin(lam)) / math.pi) % 1.0
        gap = abs(alpha - closed)
        worst_alpha = max(worst_alpha, min(gap, 1.0 - gap))
    if worst_alpha > 1e-5:
        return False, f"alpha/cap-volume gap {worst_alpha:.2e}"
    return True, (f"volume {vol:.10f}, degrees {d_id:.6f}/{d_sq:.6f}, "
                  f"cap residual {worst_merc:.1e}, alpha gap {worst_alpha:.1e}")


def criterion_parser(count: int = 200) -> tuple[bool, str]:
    rng = random.Random(20260810)
    for i in range(count):
        expr = _random_expr(rng, depth=0)
        printed = exprs.to_source(expr)
        reparsed = exprs.parse(printed)
        if exprs.to_source(reparsed) != printed or reparsed != expr:
            return False, f"round trip fails for corpus item {i}: {printed!r}"
    malformed = ["w(", "1 + ", "* w(2)", "w(0)", "zeta(2,,)", ")", "w(1) @ w(2)",
                 "regularize(w(1)", "1/", "w(1,2))"]
    for src in malformed:
        try:
            exprs.parse(src)
        except exprs.ParseError as exc:
            if exc.line < 1 or exc.col < 1:
                return False, f"error for {src!r} lacks a position"
        else:
            return False, f"malformed input {src!r} parsed"
    return True, f"{count} expressions round-tripped; malformed inputs positioned"


def _random_expr(rng: random.Random, depth: int):
    choices = ["word", "number"]
    if depth < 3:
        choices += ["binop", "binop", "call", "neg"]
    kind = rng.choice(choices)
    if kind == "word":
        return exprs.WordLit(tuple(rng.randint(1, 4) for _ in range(rng.randint(0, 3))))
    if kind == "number":
        num = rng.randint(0, 9)
        den = rng.choice([1, 1, 2, 3])
        value = Fraction(num, den)
        return exprs.Rational(value)
    if kind == "neg":
        inner = _random_expr(rng, depth + 1)
        if isinstance(inner, exprs.Rational):
            return exprs.Rational(-inner.value)
        return exprs.Neg(inner)
    if kind == "call":
        name = rng.choice(["exp", "log", "regularize", "antipode"])
        return exprs.Call(name, (_random_expr(rng, depth + 1),))
    op = rng.choice(["+", "-", "*", "#", "."])
    return exprs.BinOp(op, _random_expr(rng, depth + 1), _random_expr(rng, depth + 1))


_CRITERIA = (
    (1, "renormalization identity", criterion_renorm),
    (2, "formal group law integrality", criterion_fgl_integrality),
    (3, "formal group law axioms", criterion_fgl_axioms),
    (4, "exp/log intertwining", criterion_hoffman),
    (5, "regularization homomorphism", criterion_regularization),
    (6, "bialgebra compatibility", criterion_bialgebra),
    (7, "nested sums vs analysis", criterion_mzv),
    (8, "Newton identities", criterion_newton),
    (9, "substitution action law", criterion_landweber),
    (10, "embedding multiplicativity", criterion_embedding),
    (11, "integer-sea codes", criterion_dirac),
    (12, "sphere quadrature", criterion_quadrature),
    (13, "expression round trips", criterion_parser),
)

_NAME_KEYS = {
    "renorm": 1, "fgl-integral": 2, "fgl-axioms": 3, "hoffman": 4,
    "regularize": 5, "bialgebra": 6, "mzv": 7, "newton": 8,
    "landweber": 9, "embed": 10, "dirac": 11, "ng": 12, "parser": 13,
}


def run(names=None, params=None) -> list[CriterionResult]:
    """Run all (or the named) criteria, returning timed results."""
    params = params or {}
    selected = None
    if names:
        selected = set()
        for name in names:
            if name.isdigit():
                selected.add(int(name))
            elif name in _NAME_KEYS:
                selected.add(_NAME_KEYS[name])
            else:
                raise ValueError(f"unknown criterion {name!r}; known: {sorted(_NAME_KEYS)}")
    results = []
    for cid, label, fn in _CRITERIA:
        if selected is not None and cid not in selected:
            continue
        start = time.perf_counter()
        if cid == 1 and "renorm_maxdeg" in params:
            passed, detail = fn(params["renorm_maxdeg"])
        else:
            passed, detail = fn()
        results.append(CriterionResult(cid, label, passed, detail, time.perf_counter() - start))
    return results
