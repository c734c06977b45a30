"""Numeric nested zeta sums with certified error bounds.

Values are computed by cascading partial-sum arrays: for a composition
(a_1,...,a_k) the inner sums G_j(x) = sum over x > n_j > ... > n_k >= 1 are
built level by level with cumulative sums up to a cutoff N.  The region with
the outer index beyond N splits by the largest index j still above N into

    zeta = G_1(N+1) + sum_j M_j(N) * G_{j+1}(N+1),

where M_j(N) sums the first j factors over all indices > N.  Each M_j is a
smooth pure-power tail and is enclosed by iterated Euler-Maclaurin power
expansions whose remainders are controlled by integral comparison (the
summands are completely monotone, so the truncated expansion brackets the
true value).  Cutoffs stay small; the expansions carry the precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinatorics import Composition
from .quasishuffle import (
    STANDARD_BRACKET,
    WordPoly,
    is_admissible,
    quasi_shuffle,
    regularize,
)

_MACH_EPS = float(np.finfo(float).eps)


class DivergentSeriesError(ValueError):
    """The nested sum of a non-admissible composition diverges."""


class PrecisionError(ArithmeticError):
    """The requested error bound is below what the scheme can certify."""


@dataclass(frozen=True)
class MzvValue:
    """A certified numeric evaluation of a nested zeta sum."""

    value: float
    error_bound: float
    composition: Composition


class _Interval:
    """Closed float interval with conservative outward rounding."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        if hi is None:
            hi = lo
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
            raise ArithmeticError(f"bad interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def pm(cls, mid: float, rad: float) -> "_Interval":
        return cls(mid - rad, mid + rad)

    def _slopped(self) -> "_Interval":
        slack = 1e-15 * max(abs(self.lo), abs(self.hi)) + 5e-324
        return _Interval(self.lo - slack, self.hi + slack)

    def __add__(self, other: "_Interval") -> "_Interval":
        return _Interval(self.lo + other.lo, self.hi + other.hi)._slopped()

    def __mul__(self, other: "_Interval") -> "_Interval":
        vals = (self.lo * other.lo, self.lo * other.hi,
                self.hi * other.lo, self.hi * other.hi)
        return _Interval(min(vals), max(vals))._slopped()

    def scale(self, c: float) -> "_Interval":
        a, b = self.lo * c, self.hi * c
        return _Interval(min(a, b), max(a, b))._slopped()

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def rad(self) -> float:
        return 0.5 * (self.hi - self.lo)

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"


# How many asymptotic orders each tail expansion keeps beyond its leading
# power before the remainder is folded into an interval coefficient.
_EXTRA_ORDERS = 6


def _em_tail(gamma: int) -> list[tuple[int, _Interval]]:
    """Enclosure terms for sum_{n>x} n^-gamma as powers of 1/x.

    Euler-Maclaurin through the third derivative; the next term bounds the
    remainder both ways because the summand is completely monotone.
    """
    g = float(gamma)
    terms = [
        (gamma - 1, _Interval(1.0 / (gamma - 1))),
        (gamma, _Interval(-0.5)),
        (gamma + 1, _Interval(g / 12.0)),
        (gamma + 3, _Interval(-g * (g + 1) * (g + 2) / 720.0)),
    ]
    rem = g * (g + 1) * (g + 2) * (g + 3) * (g + 4) / 30240.0
    terms.append((gamma + 5, _Interval(-rem, rem)))
    return terms


def _fold(expansion: dict[int, _Interval], cutoff: int, nmin: int) -> dict[int, _Interval]:
    """Absorb powers beyond the cutoff, valid for all x >= nmin."""
    out: dict[int, _Interval] = {}
    for beta, coef in expansion.items():
        if beta <= cutoff:
            out[beta] = out[beta] + coef if beta in out else coef
        else:
            bound = max(abs(coef.lo), abs(coef.hi)) * float(nmin) ** (cutoff - beta)
            folded = _Interval(-bound, bound)
            out[cutoff] = out[cutoff] + folded if cutoff in out else folded
    return out


def _tail_transform(expansion: dict[int, _Interval], a: int, nmin: int) -> dict[int, _Interval]:
    """From an enclosure of U(x) build one of sum_{n>x} n^-a U(n)."""
    lead = a + min(expansion) - 1
    cutoff = lead + _EXTRA_ORDERS
    out: dict[int, _Interval] = {}
    for beta, coef in expansion.items():
        for b2, c2 in _em_tail(a + beta):
            term = coef * c2
            out[b2] = out[b2] + term if b2 in out else term
    return _fold(out, cutoff, nmin)


def _eval_expansion(expansion: dict[int, _Interval], x: int) -> _Interval:
    total = _Interval(0.0)
    for beta, coef in expansion.items():
        total = total + coef.scale(float(x) ** (-beta))
    return total


def _cascade(parts: tuple[int, ...], cutoff: int) -> tuple[float, list[float], float]:
    """Partial nested sums up to the cutoff.

    Returns (G_1(N+1), [G_2(N+1), ..., G_{k+1}(N+1)], mass) where mass bounds
    the summed magnitudes feeding each cumulative sum (for the roundoff term).
    """
    n = np.arange(cutoff + 2, dtype=float)
    n[0] = 1.0  # index 0 never contributes; avoid 0^negative warnings
    g = np.ones(cutoff + 2)
    inner: list[float] = []
    mass = 0.0
    for a in reversed(parts):
        inner.append(float(g[cutoff + 1]))
        term = n ** (-float(a)) * g
        term[0] = 0.0
        csum = np.cumsum(term)
        g = np.empty(cutoff + 2)
        g[0] = g[1] = 0.0
        g[2:] = csum[1:-1]
        mass += float(csum[-1])
    inner.reverse()  # inner[j-1] = G_{j+1}(N+1) for j = 1..k
    return float(g[cutoff + 1]), inner, mass


def _zeta_once(parts: tuple[int, ...], cutoff: int) -> tuple[float, float]:
    head, inner, mass = _cascade(parts, cutoff)
    total = _Interval(head)
    expansion: dict[int, _Interval] = {0: _Interval(1.0)}
    for j, a in enumerate(parts, start=1):
        expansion = _tail_transform(expansion, a, cutoff)
        tail_j = _eval_expansion(expansion, cutoff)
        total = total + tail_j.scale(inner[j - 1])
    roundoff = 4.0 * _MACH_EPS * cutoff * (mass + 1.0)
    return total.mid, total.rad + roundoff


# The expansion brackets are exact for every cutoff (complete monotonicity),
# so precision comes from the expansion order while the float-roundoff
# allowance grows with the cutoff; start small and escalate only if needed.
_CUTOFFS = (64, 256, 1024, 4096, 16384, 65536)


def zeta(composition, target_error: float = 1e-10) -> MzvValue:
    """Evaluate the nested sum over n_1 > ... > n_k >= 1 of prod n_i^{-a_i}.

    The first letter carries the outermost (largest) index.  Only admissible
    compositions (first part >= 2) converge; regularize the rest first.
    """
    word = Composition(composition)
    if not word:
        return MzvValue(1.0, 0.0, word)
    if not is_admissible(word):
        raise DivergentSeriesError(
            f"{word!r} is not admissible (first part must be >= 2)"
        )
    if not target_error > 0:
        raise ValueError("target_error must be positive")
    parts = tuple(word)
    value = bound = None
    for cutoff in _CUTOFFS:
        value, bound = _zeta_once(parts, cutoff)
        if bound <= target_error:
            return MzvValue(value, bound, word)
    raise PrecisionError(
        f"cannot certify {word!r} to {target_error:g}; best bound {bound:g}"
    )


def check_stuffle(left, right, target_error: float = 1e-8) -> float:
    """Residual of the product relation zeta(I) zeta(J) = sum over the expansion.

    The expansion is the standard quasi-shuffle of the two compositions; all
    of its words are automatically admissible for admissible inputs.
    """
    u = Composition(left)
    v = Composition(right)
    expansion = quasi_shuffle(u, v, STANDARD_BRACKET)
    weight = 2.0 + sum(abs(float(c)) for c in expansion.terms.values())
    eps = target_error / weight
    zu = zeta(u, eps) if u else MzvValue(1.0, 0.0, u)
    zv = zeta(v, eps) if v else MzvValue(1.0, 0.0, v)
    total = 0.0
    for w, c in expansion.terms.items():
        total += float(c) * zeta(w, eps).value
    return abs(zu.value * zv.value - total)


class FloatPoly:
    """Polynomial in the formal variable T with float coefficients and bounds."""

    __slots__ = ("coeffs", "errors")

    def __init__(self, coeffs=None, errors=None):
        self.coeffs = {int(i): float(c) for i, c in (coeffs or {}).items() if c != 0.0}
        self.errors = {int(i): float(e) for i, e in (errors or {}).items()}

    def coefficient(self, i: int) -> float:
        return self.coeffs.get(i, 0.0)

    def error(self, i: int) -> float:
        return self.errors.get(i, 0.0)

    def __mul__(self, other: "FloatPoly") -> "FloatPoly":
        coeffs: dict[int, float] = {}
        errors: dict[int, float] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                coeffs[i + j] = coeffs.get(i + j, 0.0) + a * b
                cross = (abs(a) * other.error(j) + abs(b) * self.error(i)
                         + self.error(i) * other.error(j))
                errors[i + j] = errors.get(i + j, 0.0) + cross
        return FloatPoly(coeffs, errors)

    def __sub__(self, other: "FloatPoly") -> "FloatPoly":
        coeffs = dict(self.coeffs)
        for i, c in other.coeffs.items():
            coeffs[i] = coeffs.get(i, 0.0) - c
        errors = dict(self.errors)
        for i, e in other.errors.items():
            errors[i] = errors.get(i, 0.0) + e
        return FloatPoly(coeffs, errors)

    def max_residual(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def __repr__(self) -> str:
        bits = [f"{c!r}*T^{i}" for i, c in sorted(self.coeffs.items())]
        return "FloatPoly(" + " + ".join(bits) + ")" if bits else "FloatPoly(0)"


def zeta_regularized(composition, target_error: float = 1e-10) -> FloatPoly:
    """Evaluate the regularized rewriting of a word, leaving T formal.

    Admissible words give back the plain constant; the weight-one letter
    gives exactly T.
    """
    word = Composition(composition)
    reg = regularize(WordPoly.word(word))
    coeffs: dict[int, float] = {}
    errors: dict[int, float] = {}
    for i, poly in reg.coeffs.items():
        n_terms = max(len(poly.terms), 1)
        total = 0.0
        err = 0.0
        for w, c in poly.terms.items():
            mv = zeta(w, target_error / n_terms)
            total += float(c) * mv.value
            err += abs(float(c)) * mv.error_bound
        coeffs[i] = total
        errors[i] = err
    return FloatPoly(coeffs, errors)
