"""Exponential characters in two formal variables and the flow renormalizing them.

The character exp(bT) is an eigenfunction of d/dT, so the derivation series
D = sum_{n>=1} (c_{n-1}/n) d_T^n acts on it through the scalar series
L(b) = sum c_{n-1} b^n / n.  Applying exp(-D) degree by degree and reading
off the T-free part therefore lands exactly on exp(-L(b)); both sides are
computed here symbolically over the power-sum coefficient ring, where the
identity is an exact statement about finitely many rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .series import TruncSeries, exp_series, restrict_to_zero
from .symmfunc import SymPoly, cp_class


class DegreeError(ValueError):
    """A series was not truncated deeply enough for the requested operation."""


def chern_character(maxdeg: int) -> TruncSeries:
    """The exponential character sum_{k<=maxdeg} b^k T^k / k!.

    Divided powers are carried explicitly as 1/k! coefficients; the series is
    truncated at total (b,T)-degree 2*maxdeg so every retained diagonal term
    is complete.
    """
    if maxdeg < 0:
        raise ValueError("maxdeg must be nonnegative")
    coeffs = {(k, k): Fraction(1, factorial(k)) for k in range(maxdeg + 1)}
    return TruncSeries(("b", "T"), 2 * maxdeg, coeffs)


@dataclass(frozen=True)
class FlowOperator:
    """A derivation series sum_{n>=1} c_n d_T^n with central coefficients."""

    coeffs: tuple[tuple[int, SymPoly], ...]

    def __post_init__(self):
        orders = [n for n, _ in self.coeffs]
        if any(n < 1 for n in orders) or len(set(orders)) != len(orders):
            raise ValueError("operator orders must be distinct and >= 1")

    def apply(self, s: TruncSeries) -> TruncSeries:
        """One application of the operator (lowers T-degree by at least one)."""
        t_index = s.vars.index("T")
        out: dict[tuple[int, int], SymPoly | Fraction] = {}
        for n, cn in self.coeffs:
            for exps, c in s.coeffs.items():
                j = exps[t_index]
                if j < n:
                    continue
                fall = Fraction(factorial(j), factorial(j - n))
                ne = list(exps)
                ne[t_index] = j - n
                ne = tuple(ne)
                term = cn * (fall * c)
                out[ne] = out[ne] + term if ne in out else term
        return TruncSeries(s.vars, s.maxdeg, out)

    def exponential_action(self, s: TruncSeries, time: Fraction = Fraction(-1)) -> TruncSeries:
        """exp(time * D) applied term by term; finitely many terms act per degree."""
        out = s
        term = s
        r = 0
        while term:
            r += 1
            term = self.apply(term).scale(Fraction(time, r))
            out = out + term
        return out


def cartier_generator(maxorder: int) -> FlowOperator:
    """The flow generator sum_{n=1..maxorder} (p_{n-1}/n) d_T^n, with p_0 = 1."""
    if maxorder < 1:
        raise ValueError("maxorder must be >= 1")
    coeffs = tuple((n, Fraction(1, n) * cp_class(n - 1)) for n in range(1, maxorder + 1))
    return FlowOperator(coeffs)


def renormalize(s: TruncSeries, maxdeg: int) -> TruncSeries:
    """Apply exp(-D) for the degree-``maxdeg`` generator and evaluate at T = 0.

    Returns a series in b with power-sum coefficients.  For the exponential
    character this equals :func:`st_modulus` exactly.
    """
    if "T" not in s.vars or len(s.vars) != 2:
        raise DegreeError("expected a series in (b, T)")
    if s.maxdeg < 2 * maxdeg:
        raise DegreeError(
            f"series truncated at {s.maxdeg} cannot support renormalization to degree {maxdeg}"
        )
    flowed = cartier_generator(max(maxdeg, 1)).exponential_action(s)
    return restrict_to_zero(flowed, "T").truncated(maxdeg)


def st_modulus(maxdeg: int) -> TruncSeries:
    """exp(-L(b)) with L(b) = sum_{n>=1} p_{n-1} b^n / n, truncated at maxdeg."""
    if maxdeg < 0:
        raise ValueError("maxdeg must be nonnegative")
    if maxdeg == 0:
        return TruncSeries.constant(("b",), 0, Fraction(1))
    ell = TruncSeries(
        ("b",), maxdeg,
        {(n,): Fraction(1, n) * cp_class(n - 1) for n in range(1, maxdeg + 1)},
    )
    return exp_series((-1) * ell)
