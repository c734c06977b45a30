"""Symmetric functions over the rationals in the m, e, h, and p bases.

Conversions pivot through power sums: the generating identity
E(t) = exp(sum (-1)^(r-1) p_r t^r / r) and its complete-function twin give
exact recurrences for e <-> p and h <-> p, while the monomial basis goes
through per-degree transition matrices computed from honest expansions in
finitely many variables.  Everything is exact Fraction arithmetic.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from functools import lru_cache

from .combinatorics import EMPTY_PARTITION, Partition, partitions
from .quasishuffle import Composition, WordPoly

BASES = ("m", "e", "h", "p")

# Bases whose partition-indexed elements are products of the one-part
# generators, so multiplication is just a multiset merge.
_FREE_BASES = ("e", "h", "p")


class SymPoly:
    """Partition-indexed symmetric function, tagged with its basis."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms=None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")
        self.basis = basis
        acc: dict[Partition, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for lam, c in items:
            if not isinstance(lam, Partition):
                lam = Partition(lam)
            c = Fraction(c)
            if c:
                acc[lam] = acc.get(lam, Fraction(0)) + c
        self.terms = {lam: c for lam, c in acc.items() if c}

    @classmethod
    def unit(cls, basis: str = "p") -> "SymPoly":
        return cls(basis, {EMPTY_PARTITION: Fraction(1)})

    @classmethod
    def zero(cls, basis: str = "p") -> "SymPoly":
        return cls(basis)

    @classmethod
    def generator(cls, basis: str, n: int) -> "SymPoly":
        """The degree-n generator of the basis (e_n, h_n, p_n, or m_(n))."""
        if n == 0:
            return cls.unit(basis)
        return cls(basis, {Partition((n,)): Fraction(1)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymPoly):
            if self.basis == other.basis:
                return self.terms == other.terms
            return _to_p(self).terms == _to_p(other).terms
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return not self.terms
            return self.terms == {EMPTY_PARTITION: other}
        return NotImplemented

    __hash__ = None

    def __add__(self, other) -> "SymPoly":
        if isinstance(other, (int, Fraction)):
            other = SymPoly(self.basis, {EMPTY_PARTITION: other})
        if not isinstance(other, SymPoly):
            return NotImplemented
        if other.basis != self.basis:
            raise ValueError("convert to a common basis before adding")
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, Fraction(0)) + c
        return SymPoly(self.basis, out)

    __radd__ = __add__

    def __sub__(self, other) -> "SymPoly":
        return self + (-1) * other

    def __neg__(self) -> "SymPoly":
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return SymPoly(self.basis)
            return SymPoly(self.basis, {lam: other * c for lam, c in self.terms.items()})
        if not isinstance(other, SymPoly):
            return NotImplemented
        if self.basis in _FREE_BASES and other.basis == self.basis:
            out: dict[Partition, Fraction] = {}
            for lam, c1 in self.terms.items():
                for mu, c2 in other.terms.items():
                    key = Partition(tuple(lam) + tuple(mu))
                    out[key] = out.get(key, Fraction(0)) + c1 * c2
            return SymPoly(self.basis, out)
        # monomial (or mixed-basis) products route through power sums
        prod = _to_p(self) * _to_p(other)
        return convert(prod, self.basis)

    __rmul__ = __mul__

    def degrees(self) -> set[int]:
        return {lam.weight for lam in self.terms}

    def homogeneous_part(self, n: int) -> "SymPoly":
        return SymPoly(self.basis, {lam: c for lam, c in self.terms.items() if lam.weight == n})

    def __repr__(self) -> str:
        if not self.terms:
            return f"SymPoly[{self.basis}](0)"
        bits = [f"{c}*{self.basis}{tuple(lam)}" for lam, c in sorted(self.terms.items())]
        return "SymPoly(" + " + ".join(bits) + ")"


# -- Newton recurrences: e and h generators expanded in power sums ----------

@lru_cache(maxsize=None)
def _e_in_p(n: int) -> SymPoly:
    # n e_n = sum_{r=1..n} (-1)^(r-1) p_r e_{n-r}
    if n == 0:
        return SymPoly.unit("p")
    acc = SymPoly.zero("p")
    for r in range(1, n + 1):
        sign = 1 if r % 2 else -1
        acc = acc + sign * (SymPoly.generator("p", r) * _e_in_p(n - r))
    return Fraction(1, n) * acc


@lru_cache(maxsize=None)
def _h_in_p(n: int) -> SymPoly:
    # n h_n = sum_{r=1..n} p_r h_{n-r}
    if n == 0:
        return SymPoly.unit("p")
    acc = SymPoly.zero("p")
    for r in range(1, n + 1):
        acc = acc + SymPoly.generator("p", r) * _h_in_p(n - r)
    return Fraction(1, n) * acc


@lru_cache(maxsize=None)
def _p_in_e(n: int) -> SymPoly:
    if n == 0:
        return SymPoly.unit("e")
    sign = 1 if n % 2 else -1
    acc = Fraction(n) * SymPoly.generator("e", n)
    for r in range(1, n):
        rsign = 1 if r % 2 else -1
        acc = acc - rsign * (_p_in_e(r) * SymPoly.generator("e", n - r))
    return sign * acc


@lru_cache(maxsize=None)
def _p_in_h(n: int) -> SymPoly:
    if n == 0:
        return SymPoly.unit("h")
    acc = Fraction(n) * SymPoly.generator("h", n)
    for r in range(1, n):
        acc = acc - _p_in_h(r) * SymPoly.generator("h", n - r)
    return acc


def _product_image(lam: Partition, gen_image) -> SymPoly:
    out = gen_image(0)  # the unit of the target basis
    for part in lam:
        out = out * gen_image(part)
    return out


# -- monomial basis: transition matrices from explicit expansions ------------

def _expand_power_product(mu: Partition, nvars: int) -> dict[tuple[int, ...], Fraction]:
    """Expand p_mu in nvars variables as a sparse exponent-vector polynomial."""
    poly = {tuple([0] * nvars): Fraction(1)}
    for part in mu:
        nxt: dict[tuple[int, ...], Fraction] = {}
        for exps, c in poly.items():
            for i in range(nvars):
                key = list(exps)
                key[i] += part
                key = tuple(key)
                nxt[key] = nxt.get(key, Fraction(0)) + c
        poly = nxt
    return poly


@lru_cache(maxsize=None)
def _p_in_m_matrix(n: int) -> dict[Partition, dict[Partition, Fraction]]:
    """For each mu |- n, the m-basis coefficients of p_mu."""
    out = {}
    for mu in partitions(n):
        expansion = _expand_power_product(mu, n)
        row = {}
        for lam in partitions(n):
            rep = tuple(lam) + (0,) * (n - len(lam))
            c = expansion.get(rep)
            if c:
                row[lam] = c
        out[mu] = row
    return out


@lru_cache(maxsize=None)
def _m_in_p_matrix(n: int) -> dict[Partition, dict[Partition, Fraction]]:
    """For each lam |- n, the p-basis coefficients of m_lam (matrix inverse)."""
    parts = list(partitions(n))
    index = {lam: i for i, lam in enumerate(parts)}
    size = len(parts)
    # columns indexed by mu: entry (lam, mu) = coefficient of m_lam in p_mu
    forward = _p_in_m_matrix(n)
    mat = [[Fraction(0)] * size for _ in range(size)]
    for mu, row in forward.items():
        j = index[mu]
        for lam, c in row.items():
            mat[index[lam]][j] = c
    inv = _invert_matrix(mat)
    out: dict[Partition, dict[Partition, Fraction]] = {}
    for lam in parts:
        i = index[lam]
        out[lam] = {mu: inv[index[mu]][i] for mu in parts if inv[index[mu]][i]}
    return out


def _invert_matrix(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    size = len(mat)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(mat)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if aug[r][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = Fraction(1) / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def _to_p(f: SymPoly) -> SymPoly:
    if f.basis == "p":
        return f
    out = SymPoly.zero("p")
    if f.basis == "e":
        for lam, c in f.terms.items():
            out = out + c * _product_image(lam, _e_in_p)
        return out
    if f.basis == "h":
        for lam, c in f.terms.items():
            out = out + c * _product_image(lam, _h_in_p)
        return out
    for lam, c in f.terms.items():  # monomial basis, degree by degree
        if not lam:
            out = out + c * SymPoly.unit("p")
            continue
        row = _m_in_p_matrix(lam.weight)[lam]
        out = out + SymPoly("p", {mu: c * v for mu, v in row.items()})
    return out


def _from_p(f: SymPoly, target: str) -> SymPoly:
    if target == "p":
        return f
    if target == "e":
        out = SymPoly.zero("e")
        for lam, c in f.terms.items():
            out = out + c * _product_image(lam, _p_in_e)
        return out
    if target == "h":
        out = SymPoly.zero("h")
        for lam, c in f.terms.items():
            out = out + c * _product_image(lam, _p_in_h)
        return out
    out = SymPoly.zero("m")
    for mu, c in f.terms.items():
        if not mu:
            out = out + c * SymPoly.unit("m")
            continue
        row = _p_in_m_matrix(mu.weight)[mu]
        out = out + SymPoly("m", {lam: c * v for lam, v in row.items()})
    return out


def convert(f: SymPoly, target_basis: str) -> SymPoly:
    """Exact change of basis; round trips are the identity."""
    if target_basis not in BASES:
        raise ValueError(f"unknown basis {target_basis!r}")
    if target_basis == f.basis:
        return f
    return _from_p(_to_p(f), target_basis)


def hall_pairing(f: SymPoly, g: SymPoly) -> Fraction:
    """The pairing with <h_lam, m_mu> = delta; symmetric and positive definite."""
    fh = convert(f, "h")
    gm = convert(g, "m")
    total = Fraction(0)
    for lam, c in fh.terms.items():
        d = gm.terms.get(lam)
        if d:
            total += c * d
    return total


def _arrangements(lam: Partition):
    """All distinct orderings of the parts of a partition."""
    parts = sorted(lam, reverse=True)

    def rec(remaining: tuple[int, ...]):
        if not remaining:
            yield ()
            return
        seen = set()
        for i, part in enumerate(remaining):
            if part in seen:
                continue
            seen.add(part)
            rest = remaining[:i] + remaining[i + 1:]
            for tail in rec(rest):
                yield (part,) + tail

    yield from rec(tuple(parts))


def embed_qsymm(f: SymPoly) -> WordPoly:
    """Orbit-sum embedding into the word algebra: m_lam -> sum of rearrangements.

    An algebra map onto its image: products of symmetric functions go to
    standard quasi-shuffle products of the embedded words.
    """
    fm = convert(f, "m")
    out: dict[Composition, Fraction] = {}
    for lam, c in fm.terms.items():
        for arrangement in _arrangements(lam):
            w = Composition(arrangement)
            out[w] = out.get(w, Fraction(0)) + c
    return WordPoly(out)


def cp_class(k: int) -> SymPoly:
    """The degree-k projective-space class in its power-sum incarnation."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return SymPoly.unit("p")
    return SymPoly.generator("p", k)


def sympoly_to_json(f: SymPoly) -> dict:
    terms = {
        "(" + ",".join(map(str, lam)) + ")": str(c)
        for lam, c in sorted(f.terms.items(), key=lambda t: (t[0].weight, t[0]))
    }
    return {"basis": f.basis, "terms": terms}


def sympoly_from_json(data: Mapping) -> SymPoly:
    terms = {}
    for key, val in data.get("terms", {}).items():
        body = key.strip()[1:-1].strip()
        lam = Partition(int(x) for x in body.split(",")) if body else EMPTY_PARTITION
        terms[lam] = Fraction(val)
    return SymPoly(data["basis"], terms)
