"""Formal power series in one or two variables, truncated by total degree.

Coefficients are duck-typed: anything with ring arithmetic against itself
and against int/Fraction scalars works (exact rationals, multivariate
polynomials, symmetric functions).  Truncation follows
ring-with-nilpotents semantics: every operation drops terms beyond the
stated total degree, and composing series truncated at different depths is
reliable through the smaller one.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


class CompositionDomainError(ValueError):
    """Substituting a series with nonzero constant term is not defined."""


class NotInvertibleError(ValueError):
    """Compositional inversion needs a vanishing constant and unit linear term."""


def _is_zero(c) -> bool:
    return not c


class TruncSeries:
    """Truncated power series with sparse exponent-vector storage."""

    __slots__ = ("vars", "maxdeg", "coeffs")

    def __init__(self, variables, maxdeg: int, coeffs=None):
        variables = tuple(variables)
        if not 1 <= len(variables) <= 2:
            raise ValueError("series support one or two variables")
        if maxdeg < 0:
            raise ValueError("maxdeg must be nonnegative")
        self.vars = variables
        self.maxdeg = int(maxdeg)
        clean = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(variables) or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps!r} for vars {variables!r}")
            if sum(exps) <= self.maxdeg and not _is_zero(c):
                clean[exps] = clean[exps] + c if exps in clean else c
        self.coeffs = {e: c for e, c in clean.items() if not _is_zero(c)}

    @classmethod
    def identity(cls, var: str, maxdeg: int, one=Fraction(1)) -> "TruncSeries":
        return cls((var,), maxdeg, {(1,): one})

    @classmethod
    def constant(cls, variables, maxdeg: int, value) -> "TruncSeries":
        zero = tuple(0 for _ in variables)
        return cls(variables, maxdeg, {zero: value})

    def coefficient(self, exps):
        return self.coeffs.get(tuple(exps), Fraction(0))

    def constant_term(self):
        return self.coefficient(tuple(0 for _ in self.vars))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.vars != other.vars:
            return False
        for e in set(self.coeffs) | set(other.coeffs):
            a = self.coeffs.get(e, Fraction(0))
            b = other.coeffs.get(e, Fraction(0))
            if not a == b:
                return False
        return True

    __hash__ = None

    def _check_compatible(self, other: "TruncSeries") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.constant(self.vars, self.maxdeg, other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return TruncSeries(self.vars, min(self.maxdeg, other.maxdeg), out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def scale(self, c) -> "TruncSeries":
        return TruncSeries(self.vars, self.maxdeg, {e: c * v for e, v in self.coeffs.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(other))
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(other))
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check_compatible(other)
        maxdeg = min(self.maxdeg, other.maxdeg)
        out = {}
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, c2 in other.coeffs.items():
                if d1 + sum(e2) > maxdeg:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return TruncSeries(self.vars, maxdeg, out)

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = TruncSeries.constant(self.vars, self.maxdeg, Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    def truncated(self, maxdeg: int) -> "TruncSeries":
        return TruncSeries(self.vars, maxdeg, self.coeffs)

    def map_coefficients(self, fn) -> "TruncSeries":
        return TruncSeries(self.vars, self.maxdeg, {e: fn(c) for e, c in self.coeffs.items()})

    def __repr__(self) -> str:
        bits = []
        for e, c in sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            bits.append(f"({c})" + (f"*{mono}" if mono else ""))
        body = " + ".join(bits) if bits else "0"
        return f"TruncSeries[{','.join(self.vars)} <= {self.maxdeg}]({body})"


def compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """Substitute g into the one-variable series f, truncating consistently."""
    if len(f.vars) != 1:
        raise ValueError("outer series must be univariate")
    if not _is_zero(g.constant_term()):
        raise CompositionDomainError("inner series must have zero constant term")
    maxdeg = min(f.maxdeg, g.maxdeg)
    out = TruncSeries.constant(g.vars, maxdeg, f.coefficient((0,)))
    gpow = TruncSeries.constant(g.vars, maxdeg, Fraction(1))
    for k in range(1, maxdeg + 1):
        gpow = gpow * g
        if not gpow:
            break
        ck = f.coeffs.get((k,))
        if ck is not None:
            out = out + gpow.scale(ck)
    return out


def invert(f: TruncSeries) -> TruncSeries:
    """Compositional inverse of f = T + higher order, to the same truncation."""
    if len(f.vars) != 1:
        raise ValueError("inversion needs a univariate series")
    if not _is_zero(f.constant_term()):
        raise NotInvertibleError("series must vanish at the origin")
    if not f.coefficient((1,)) == Fraction(1):
        raise NotInvertibleError("series must have unit linear coefficient")
    var = f.vars[0]
    g = TruncSeries.identity(var, f.maxdeg)
    for n in range(2, f.maxdeg + 1):
        err = compose(f, g).coeffs.get((n,))
        if err is not None and not _is_zero(err):
            g = g - TruncSeries((var,), f.maxdeg, {(n,): err})
    return g


def differentiate(s: TruncSeries, var: str) -> TruncSeries:
    idx = s.vars.index(var)
    out = {}
    for e, c in s.coeffs.items():
        if e[idx] == 0:
            continue
        ne = tuple(k - 1 if i == idx else k for i, k in enumerate(e))
        out[ne] = c * e[idx] if ne not in out else out[ne] + c * e[idx]
    return TruncSeries(s.vars, s.maxdeg, out)


def exp_series(s: TruncSeries) -> TruncSeries:
    """exp of a series with zero constant term (finite sum per degree)."""
    if not _is_zero(s.constant_term()):
        raise CompositionDomainError("exponential needs zero constant term")
    out = TruncSeries.constant(s.vars, s.maxdeg, Fraction(1))
    power = TruncSeries.constant(s.vars, s.maxdeg, Fraction(1))
    for k in range(1, s.maxdeg + 1):
        power = power * s
        if not power:
            break
        out = out + power.scale(Fraction(1, factorial(k)))
    return out


def restrict_to_zero(s: TruncSeries, var: str) -> TruncSeries:
    """Set one variable of a bivariate series to zero."""
    if len(s.vars) != 2:
        raise ValueError("restriction applies to bivariate series")
    idx = s.vars.index(var)
    keep = 1 - idx
    out = {}
    for e, c in s.coeffs.items():
        if e[idx] == 0:
            out[(e[keep],)] = c
    return TruncSeries((s.vars[keep],), s.maxdeg, out)
