"""The word algebra on compositions and its quasi-shuffle structure.

One parametrized product family (a pluggable letter-merge bracket), the
deconcatenation coproduct with its antipode, the block-contraction
exponential/logarithm pair intertwining shuffle with the merged product,
regularization into a polynomial ring over admissible words with a central
variable, the word/monomial duality pairing, and Laurent-polynomial twists.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .combinatorics import Composition, EMPTY_WORD, compositions


@dataclass(frozen=True)
class Bracket:
    """Commutative letter-merge rule selecting one member of the product family.

    ``rule(a, b)`` gives the merged-letter terms contributed when letters a
    and b collide, as a map letter -> coefficient.  The standard rule merges
    to a+b (the stuffle); the null rule drops merge terms (the shuffle).
    Associativity of the induced product is a property of the rule, checked
    by tests rather than assumed.  Instances are compared by identity of the
    rule, so share bracket objects rather than rebuilding them.
    """

    name: str
    rule: Callable[[int, int], Mapping[int, Fraction]]


STANDARD_BRACKET = Bracket("standard", lambda a, b: {a + b: Fraction(1)})
NULL_BRACKET = Bracket("null", lambda a, b: {})


class WordPoly:
    """Finite rational linear combination of compositions."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc: dict[Composition, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for w, c in items:
            if not isinstance(w, Composition):
                w = Composition(w)
            c = Fraction(c)
            if c:
                acc[w] = acc.get(w, Fraction(0)) + c
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def word(cls, parts) -> "WordPoly":
        return cls({Composition(parts): Fraction(1)})

    @classmethod
    def unit(cls) -> "WordPoly":
        return cls.word(())

    @classmethod
    def zero(cls) -> "WordPoly":
        return cls()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, WordPoly):
            return self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "WordPoly") -> "WordPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return WordPoly(out)

    def __sub__(self, other: "WordPoly") -> "WordPoly":
        return self + (-1) * other

    def __neg__(self) -> "WordPoly":
        return (-1) * self

    def scale(self, c) -> "WordPoly":
        c = Fraction(c)
        if not c:
            return WordPoly()
        return WordPoly({w: c * v for w, v in self.terms.items()})

    def __rmul__(self, other) -> "WordPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other):
        """``*`` is the standard quasi-shuffle product; scalars scale."""
        if isinstance(other, WordPoly):
            return self.product(other, STANDARD_BRACKET)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def product(self, other: "WordPoly", bracket: Bracket = STANDARD_BRACKET) -> "WordPoly":
        out: dict[Composition, Fraction] = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                c = cu * cv
                for w, cw in _qsh(u, v, bracket).terms.items():
                    out[w] = out.get(w, Fraction(0)) + c * cw
        return WordPoly(out)

    def shuffle(self, other: "WordPoly") -> "WordPoly":
        return self.product(other, NULL_BRACKET)

    def concat(self, other: "WordPoly") -> "WordPoly":
        """Bilinear concatenation (the free-algebra product on the dual side)."""
        out: dict[Composition, Fraction] = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                w = Composition(tuple(u) + tuple(v))
                out[w] = out.get(w, Fraction(0)) + cu * cv
        return WordPoly(out)

    def weights(self) -> set[int]:
        return {w.weight for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def __repr__(self) -> str:
        if not self.terms:
            return "WordPoly(0)"
        bits = [f"{c}*{w!r}" for w, c in sorted(self.terms.items())]
        return "WordPoly(" + " + ".join(bits) + ")"


def quasi_shuffle(u, v, bracket: Bracket = STANDARD_BRACKET) -> WordPoly:
    """Product of two words by the recursion
    (a u') * (b v') = a (u' * b v') + b (a u' * v') + [a,b] (u' * v')."""
    return _qsh(Composition(u), Composition(v), bracket)


@lru_cache(maxsize=None)
def _qsh(u: Composition, v: Composition, bracket: Bracket) -> WordPoly:
    if not u:
        return WordPoly.word(v)
    if not v:
        return WordPoly.word(u)
    a, us = u[0], Composition(u[1:])
    b, vs = v[0], Composition(v[1:])
    out: dict[Composition, Fraction] = {}

    def _prepend(letter: int, poly: WordPoly, scale: Fraction) -> None:
        for w, c in poly.terms.items():
            key = Composition((letter,) + tuple(w))
            out[key] = out.get(key, Fraction(0)) + scale * c

    _prepend(a, _qsh(us, v, bracket), Fraction(1))
    _prepend(b, _qsh(u, vs, bracket), Fraction(1))
    merged = bracket.rule(a, b)
    if merged:
        rest = _qsh(us, vs, bracket)
        for letter, mc in merged.items():
            _prepend(letter, rest, Fraction(mc))
    return WordPoly(out)


def deconcat_coproduct(w) -> list[tuple[Composition, Composition]]:
    """All splittings w = u . v, including the trivial ones, coefficient 1 each."""
    w = Composition(w)
    return [(Composition(w[:i]), Composition(w[i:])) for i in range(len(w) + 1)]


def coproduct(p: WordPoly) -> dict[tuple[Composition, Composition], Fraction]:
    """Deconcatenation coproduct extended linearly, as a tensor-term map."""
    out: dict[tuple[Composition, Composition], Fraction] = {}
    for w, c in p.terms.items():
        for u, v in deconcat_coproduct(w):
            out[(u, v)] = out.get((u, v), Fraction(0)) + c
    return {k: c for k, c in out.items() if c}


def counit(p: WordPoly) -> Fraction:
    return p.terms.get(EMPTY_WORD, Fraction(0))


def antipode(p: WordPoly, bracket: Bracket = STANDARD_BRACKET) -> WordPoly:
    """Antipode of the quasi-shuffle bialgebra (sign-alternating deconcatenation).

    Plumbing for the Hopf-axiom tests; defined by S(w) = -sum S(u) * v over
    proper splittings w = u.v with u != w.
    """
    out = WordPoly()
    for w, c in p.terms.items():
        out = out + c * _antipode_word(w, bracket)
    return out


@lru_cache(maxsize=None)
def _antipode_word(w: Composition, bracket: Bracket) -> WordPoly:
    if not w:
        return WordPoly.unit()
    out = WordPoly()
    for u, v in deconcat_coproduct(w):
        if u == w:
            continue
        out = out + _antipode_word(u, bracket).product(WordPoly.word(v), bracket)
    return (-1) * out


def hoffman_exp(p: WordPoly) -> WordPoly:
    """Graded bijection turning the shuffle into the standard quasi-shuffle.

    Sums over groupings of consecutive letters into blocks; blocks of sizes
    (c1,...,ck) contribute the block-sum contraction with weight
    1/(c1! ... ck!).
    """
    return _hoffman_apply(p, "exp")


def hoffman_log(p: WordPoly) -> WordPoly:
    """Two-sided inverse of :func:`hoffman_exp` (Moebius-style signed blocks)."""
    return _hoffman_apply(p, "log")


def _hoffman_apply(p: WordPoly, mode: str) -> WordPoly:
    out = WordPoly()
    for w, c in p.terms.items():
        out = out + c * _hoffman_word(w, mode)
    return out


@lru_cache(maxsize=None)
def _hoffman_word(w: Composition, mode: str) -> WordPoly:
    n = len(w)
    if n == 0:
        return WordPoly.unit()
    out: dict[Composition, Fraction] = {}
    for blocks in compositions(n):
        contracted = []
        coeff = Fraction(1)
        pos = 0
        for size in blocks:
            contracted.append(sum(w[pos:pos + size]))
            if mode == "exp":
                coeff /= factorial(size)
            else:
                coeff /= size
            pos += size
        if mode == "log" and (n - len(blocks)) % 2:
            coeff = -coeff
        key = Composition(contracted)
        out[key] = out.get(key, Fraction(0)) + coeff
    return WordPoly(out)


def is_admissible(w) -> bool:
    """First part >= 2 (or empty): the words spanning the convergent subalgebra."""
    w = tuple(w)
    return not w or w[0] >= 2


class RegularizedPoly:
    """Polynomial in a central variable T with admissible-word coefficients.

    Multiplication uses the standard quasi-shuffle on coefficients with T
    central; coefficients are stored on the left purely as a serialization
    convention.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        acc: dict[int, WordPoly] = {}
        for i, p in (coeffs or {}).items():
            if not isinstance(p, WordPoly):
                p = WordPoly(p)
            if any(not is_admissible(w) for w in p.terms):
                raise ValueError("coefficients must be supported on admissible words")
            if p:
                acc[int(i)] = acc.get(int(i), WordPoly()) + p
        self.coeffs = {i: p for i, p in acc.items() if p}

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, RegularizedPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "RegularizedPoly") -> "RegularizedPoly":
        out = dict(self.coeffs)
        for i, p in other.coeffs.items():
            out[i] = out.get(i, WordPoly()) + p
        return RegularizedPoly(out)

    def __sub__(self, other: "RegularizedPoly") -> "RegularizedPoly":
        return self + (-1) * other

    def __rmul__(self, other) -> "RegularizedPoly":
        if isinstance(other, (int, Fraction)):
            return RegularizedPoly({i: other * p for i, p in self.coeffs.items()})
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, RegularizedPoly):
            return self.product(other)
        if isinstance(other, (int, Fraction)):
            return other * self
        return NotImplemented

    def product(self, other: "RegularizedPoly",
                bracket: Bracket = STANDARD_BRACKET) -> "RegularizedPoly":
        out: dict[int, WordPoly] = {}
        for i, p in self.coeffs.items():
            for j, q in other.coeffs.items():
                out[i + j] = out.get(i + j, WordPoly()) + p.product(q, bracket)
        return RegularizedPoly(out)

    def degree(self) -> int:
        return max(self.coeffs, default=0)

    def substitute_back(self) -> WordPoly:
        """Replace T by the weight-one letter and multiply out; inverts regularize."""
        y1 = WordPoly.word((1,))
        power = WordPoly.unit()
        powers = {0: power}
        for i in range(1, self.degree() + 1):
            power = power * y1
            powers[i] = power
        out = WordPoly()
        for i, p in self.coeffs.items():
            out = out + p * powers[i]
        return out

    def __repr__(self) -> str:
        bits = [f"T^{i}: {p!r}" for i, p in sorted(self.coeffs.items())]
        return "RegularizedPoly{" + ", ".join(bits) + "}"


def regularize(p: WordPoly) -> RegularizedPoly:
    """Unique rewriting of a word polynomial over admissible words and central T.

    The weight-one letter maps to T; non-admissible words are reduced by the
    product relation that moves their leading 1 into a T factor.
    """
    out = RegularizedPoly()
    for w, c in p.terms.items():
        out = out + c * _regularize_word(w)
    return out


def _tshift(r: RegularizedPoly, k: int = 1) -> RegularizedPoly:
    return RegularizedPoly({i + k: p for i, p in r.coeffs.items()})


@lru_cache(maxsize=None)
def _regularize_word(w: Composition) -> RegularizedPoly:
    if is_admissible(w):
        return RegularizedPoly({0: WordPoly.word(w)})
    j = 0
    while j < len(w) and w[j] == 1:
        j += 1
    tail = Composition(w[j:])
    prev = Composition((1,) * (j - 1) + tuple(tail))
    expansion = _qsh(Composition((1,)), prev, STANDARD_BRACKET)
    # expansion = j*w + r, with every word of r having fewer leading ones
    assert expansion.terms.get(w) == j
    rest = WordPoly({ww: cc for ww, cc in expansion.terms.items() if ww != w})
    reg_rest = RegularizedPoly()
    for ww, cc in rest.terms.items():
        reg_rest = reg_rest + cc * _regularize_word(ww)
    return Fraction(1, j) * (_tshift(_regularize_word(prev)) - reg_rest)


def pairing(word, qsymm_elt: WordPoly) -> Fraction:
    """Duality pairing: the coefficient of the word in the monomial expansion."""
    return qsymm_elt.terms.get(Composition(word), Fraction(0))


class SubstitutionError(ValueError):
    """Raised when a variable substitution has no polynomial expansion."""


class LaurentPoly:
    """Laurent polynomial in one variable T with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc: dict[int, Fraction] = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                acc[int(e)] = acc.get(int(e), Fraction(0)) + c
        self.terms = {e: c for e, c in acc.items() if c}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-1) * other

    def __rmul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: other * c for e, c in self.terms.items()})
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out: dict[int, Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
            return LaurentPoly(out)
        if isinstance(other, (int, Fraction)):
            return other * self
        return NotImplemented

    def __repr__(self) -> str:
        bits = [f"{c}*T^{e}" for e, c in sorted(self.terms.items())]
        return "LaurentPoly(" + " + ".join(bits) + ")" if bits else "LaurentPoly(0)"


def alexander_twist(p: LaurentPoly, gamma) -> LaurentPoly:
    """Substitute T -> T - gamma and expand.

    ``gamma`` is a rational, read as a rational multiple of the formal period
    unit; nothing here needs its numeric value.  Negative exponents admit no
    polynomial expansion, so they are refused unless gamma is zero.
    """
    gamma = Fraction(gamma)
    if gamma == 0:
        return LaurentPoly(p.terms)
    if any(e < 0 for e in p.terms):
        raise SubstitutionError("cannot substitute T - gamma into negative powers of T")
    out: dict[int, Fraction] = {}
    for e, c in p.terms.items():
        for k in range(e + 1):
            out[k] = out.get(k, Fraction(0)) + c * comb(e, k) * (-gamma) ** (e - k)
    return LaurentPoly(out)


def wordpoly_to_json(p: WordPoly) -> dict[str, str]:
    return {_word_key(w): str(c) for w, c in sorted(p.terms.items(), key=lambda t: (t[0].weight, t[0]))}


def wordpoly_from_json(data: Mapping[str, str]) -> WordPoly:
    return WordPoly({_word_from_key(k): Fraction(v) for k, v in data.items()})


def _word_key(w: Composition) -> str:
    return "(" + ",".join(map(str, w)) + ")"


def _word_from_key(key: str) -> Composition:
    body = key.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"malformed word key: {key!r}")
    body = body[1:-1].strip()
    if not body:
        return EMPTY_WORD
    return Composition(int(x) for x in body.split(","))


def regularized_to_json(r: RegularizedPoly) -> dict[str, dict[str, str]]:
    return {str(i): wordpoly_to_json(p) for i, p in sorted(r.coeffs.items())}
