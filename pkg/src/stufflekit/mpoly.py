"""Sparse exact polynomials in arbitrarily many named commuting variables."""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction

# A monomial is a name-sorted tuple of (variable, positive power) pairs.
Monomial = tuple[tuple[str, int], ...]


def _mul_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for name, p in m2:
        acc[name] = acc.get(name, 0) + p
    return tuple(sorted(acc.items()))


class MPoly:
    """Polynomial over the rationals with string-named variables."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(sorted((str(n), int(p)) for n, p in mono if p))
            c = Fraction(c)
            if c:
                acc[mono] = acc.get(mono, Fraction(0)) + c
        self.terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def const(cls, c) -> "MPoly":
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MPoly":
        return cls({((name, power),): Fraction(1)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return not self.terms
            return self.terms == {(): other}
        return NotImplemented

    __hash__ = None

    def __add__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return MPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "MPoly":
        return self + (-1) * other

    def __rsub__(self, other) -> "MPoly":
        return (-1) * self + other

    def __neg__(self) -> "MPoly":
        return (-1) * self

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return MPoly()
            return MPoly({m: other * c for m, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mul_monomials(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def substitute(self, mapping: Mapping[str, "MPoly | Fraction | int"]) -> "MPoly":
        """Replace variables by polynomials; unmapped variables pass through."""
        out = MPoly()
        for mono, c in self.terms.items():
            term = MPoly.const(c)
            for name, p in mono:
                repl = mapping.get(name)
                if repl is None:
                    repl = MPoly.var(name)
                elif not isinstance(repl, MPoly):
                    repl = MPoly.const(repl)
                term = term * repl ** p
            out = out + term
        return out

    def variables(self) -> set[str]:
        return {name for mono in self.terms for name, _ in mono}

    def total_degree(self) -> int:
        return max((sum(p for _, p in m) for m in self.terms), default=0)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for mono, c in sorted(self.terms.items()):
            names = "*".join(n if p == 1 else f"{n}^{p}" for n, p in mono)
            bits.append(f"{c}" if not names else f"{c}*{names}")
        return " + ".join(bits)
