"""The universal formal group law over free generators and its operations.

The group law is F(X,Y) = m^{-1}(m(X) + m(Y)) for the generic logarithm
m(T) = T + m_1 T^2 + m_2 T^3 + ..., with the m_i treated as free polynomial
generators.  The substitution monoid of series t(T) = sum t_i T^{i+1} acts
on the elementary generators through prod (1 + x_i t(T)), and the same
expansion gives the total Chern polynomial in any number of roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .mpoly import MPoly
from .series import TruncSeries, compose, invert


def universal_log(maxdeg: int) -> TruncSeries:
    """m(T) = T + m1 T^2 + m2 T^3 + ... over the free generators m_i."""
    if maxdeg < 1:
        raise ValueError("maxdeg must be >= 1")
    coeffs = {(1,): MPoly.const(1)}
    for i in range(1, maxdeg):
        coeffs[(i + 1,)] = MPoly.var(f"m{i}")
    return TruncSeries(("T",), maxdeg, coeffs)


def universal_exp(maxdeg: int) -> TruncSeries:
    """Compositional inverse of :func:`universal_log`."""
    return invert(universal_log(maxdeg))


def universal_fgl(maxdeg: int) -> TruncSeries:
    """F(X,Y) = m^{-1}(m(X) + m(Y)), truncated at total degree ``maxdeg``."""
    if maxdeg < 1:
        raise ValueError("maxdeg must be >= 1")
    log1 = universal_log(maxdeg)
    both = {}
    for (k,), c in log1.coeffs.items():
        both[(k, 0)] = c
        both[(0, k)] = both.get((0, k), MPoly()) + c
    summed = TruncSeries(("X", "Y"), maxdeg, both)
    return compose(universal_exp(maxdeg), summed)


def fgl_is_integral(maxdeg: int) -> bool:
    """Whether every coefficient of the law lies in Z[m1, m2, ...]."""
    law = universal_fgl(maxdeg)
    return all(
        isinstance(c, MPoly) and c.has_integer_coefficients()
        for c in law.coeffs.values()
    )


@dataclass(frozen=True)
class SeriesSubstitution:
    """A reparametrization t(T) = sum_{i>=0} t_i T^{i+1} (zero constant term).

    Elements of the substitution monoid; invertible under composition exactly
    when the leading coefficient is invertible.
    """

    series: TruncSeries

    def __post_init__(self):
        if len(self.series.vars) != 1:
            raise ValueError("substitutions are univariate")
        if self.series.constant_term():
            raise ValueError("substitution series must vanish at the origin")

    @classmethod
    def identity(cls, maxdeg: int) -> "SeriesSubstitution":
        return cls(TruncSeries.identity("T", maxdeg))

    @classmethod
    def from_coeffs(cls, coeffs, maxdeg: int) -> "SeriesSubstitution":
        """Build t(T) = sum coeffs[i] T^{i+1} from a leading-first sequence."""
        data = {(i + 1,): c for i, c in enumerate(coeffs)}
        return cls(TruncSeries(("T",), maxdeg, data))

    @classmethod
    def symbolic(cls, prefix: str, maxdeg: int) -> "SeriesSubstitution":
        """t(T) = T + prefix1 T^2 + prefix2 T^3 + ... with symbolic coefficients."""
        coeffs = [MPoly.const(1)] + [MPoly.var(f"{prefix}{i}") for i in range(1, maxdeg)]
        return cls.from_coeffs(coeffs, maxdeg)

    def after(self, inner: "SeriesSubstitution") -> "SeriesSubstitution":
        """The composite substitution T -> self(inner(T))."""
        return SeriesSubstitution(compose(self.series, inner.series))


def landweber_coaction(t: SeriesSubstitution, maxdeg: int) -> dict[int, MPoly]:
    """Image of each elementary generator under the substitution action.

    Reads e_n off as the T^n coefficient of sum_k e_k t(T)^k; returns the
    map n -> image for 1 <= n <= maxdeg, with e_0 = 1 understood.
    """
    if maxdeg < 1:
        raise ValueError("maxdeg must be >= 1")
    ts = t.series.truncated(min(t.series.maxdeg, maxdeg))
    acc = TruncSeries.constant(("T",), maxdeg, MPoly.const(1))
    tpow = TruncSeries.constant(("T",), maxdeg, MPoly.const(1))
    for k in range(1, maxdeg + 1):
        tpow = tpow * ts
        if not tpow:
            break
        acc = acc + tpow.map_coefficients(lambda c, k=k: MPoly.var(f"e{k}") * c)
    return {n: _as_mpoly(acc.coeffs.get((n,), MPoly())) for n in range(1, maxdeg + 1)}


def _as_mpoly(c) -> MPoly:
    return c if isinstance(c, MPoly) else MPoly.const(c)


def apply_coaction(poly: MPoly, images: dict[int, MPoly]) -> MPoly:
    """Substitute each elementary variable e_k by its image polynomial."""
    mapping = {f"e{k}": img for k, img in images.items()}
    return poly.substitute(mapping)


def chern_polynomial(n: int, t: SeriesSubstitution, maxdeg: int) -> MPoly:
    """Expansion of prod_{i=1..n} t(x_i), rewritten in the elementary basis.

    The result is a polynomial in the substitution coefficients and in
    e1..en; specializing t(T) = T leaves exactly the top generator e_n.
    """
    if n < 1:
        raise ValueError("need at least one root")
    ts = t.series.truncated(min(t.series.maxdeg, maxdeg))
    poly = MPoly.const(1)
    xnames = [f"x{i}" for i in range(1, n + 1)]
    for name in xnames:
        factor = MPoly()
        for (k,), c in ts.coeffs.items():
            factor = factor + _as_mpoly(c) * MPoly.var(name, k)
        poly = _truncate_xdeg(poly * factor, xnames, maxdeg * n)
    # split off the substitution coefficients, reduce each symmetric piece
    grouped: dict[tuple, dict[tuple[int, ...], Fraction]] = {}
    for mono, c in poly.terms.items():
        xpart = [0] * n
        rest = []
        for name, p in mono:
            if name in xnames:
                xpart[xnames.index(name)] = p
            else:
                rest.append((name, p))
        key = tuple(rest)
        grouped.setdefault(key, {})[tuple(xpart)] = c
    out = MPoly()
    for rest, xpoly in grouped.items():
        reduced = _symmetric_to_elementary(xpoly, n)
        out = out + MPoly({rest: Fraction(1)}) * reduced
    return out


def _truncate_xdeg(poly: MPoly, xnames: list[str], maxdeg: int) -> MPoly:
    xset = set(xnames)
    keep = {
        mono: c
        for mono, c in poly.terms.items()
        if sum(p for name, p in mono if name in xset) <= maxdeg
    }
    return MPoly(keep)


@lru_cache(maxsize=None)
def _elementary_in_roots(n: int, k: int) -> MPoly:
    """e_k expanded in the roots x1..xn."""
    from itertools import combinations

    out = MPoly()
    for subset in combinations(range(1, n + 1), k):
        mono = tuple((f"x{i}", 1) for i in subset)
        out = out + MPoly({mono: Fraction(1)})
    return out


def _symmetric_to_elementary(xpoly: dict[tuple[int, ...], Fraction], n: int) -> MPoly:
    """Rewrite a symmetric polynomial in n roots as a polynomial in e1..en.

    Classical leading-term descent: the lex-leading exponent of a symmetric
    polynomial is weakly decreasing, and subtracting the matching product of
    elementary functions strictly lowers it.
    """
    work = {e: c for e, c in xpoly.items() if c}
    out = MPoly()
    while work:
        lead = max(work)
        c = work[lead]
        if any(lead[i] < lead[i + 1] for i in range(n - 1)):
            raise ValueError("polynomial is not symmetric in the roots")
        epowers = [lead[i] - (lead[i + 1] if i + 1 < n else 0) for i in range(n)]
        eprod = MPoly.const(1)
        emono: list[tuple[str, int]] = []
        for j, p in enumerate(epowers, start=1):
            if p:
                eprod = eprod * _elementary_in_roots(n, j) ** p
                emono.append((f"e{j}", p))
        out = out + MPoly({tuple(emono): c})
        for mono, v in eprod.terms.items():
            exps = [0] * n
            for name, p in mono:
                exps[int(name[1:]) - 1] = p
            key = tuple(exps)
            work[key] = work.get(key, Fraction(0)) - c * v
        work = {e: v for e, v in work.items() if v}
    return out
