"""Compositions, partitions, Lyndon words, and commensurable integer sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class Composition(tuple):
    """Finite ordered sequence of positive integers (possibly empty).

    Compositions index words over the alphabet of positive integers.  The
    total order used throughout the package is plain tuple comparison:
    part by part, with a proper prefix sorting before its extensions.
    """

    def __new__(cls, parts=()):
        if isinstance(parts, cls):
            return parts
        if type(parts) is not tuple:
            parts = tuple(parts)
        if parts:
            if not all(type(a) is int for a in parts):
                parts = tuple(int(a) for a in parts)
            if min(parts) < 1:
                raise ValueError(f"composition parts must be positive: {parts!r}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    def __repr__(self) -> str:
        return "w(%s)" % ",".join(map(str, self))


EMPTY_WORD = Composition()


class Partition(tuple):
    """Weakly decreasing sequence of positive integers (canonicalized on input)."""

    def __new__(cls, parts=()):
        parts = tuple(sorted((int(a) for a in parts), reverse=True))
        if any(a < 1 for a in parts):
            raise ValueError(f"partition parts must be positive: {parts!r}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)


EMPTY_PARTITION = Partition()


@lru_cache(maxsize=None)
def compositions(weight: int) -> tuple[Composition, ...]:
    """All compositions of ``weight`` in lexicographic order (2^(n-1) of them)."""
    if weight < 0:
        raise ValueError("weight must be nonnegative")
    if weight == 0:
        return (EMPTY_WORD,)
    out = []
    for first in range(1, weight + 1):
        for rest in compositions(weight - first):
            out.append(Composition((first,) + tuple(rest)))
    return tuple(out)


def compositions_up_to(max_weight: int) -> list[Composition]:
    """All compositions of weight 0..max_weight, by weight then lexicographically."""
    return [w for n in range(max_weight + 1) for w in compositions(n)]


@lru_cache(maxsize=None)
def _partitions_bounded(weight: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if weight == 0:
        return ((),)
    out = []
    for first in range(min(weight, max_part), 0, -1):
        for rest in _partitions_bounded(weight - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def partitions(weight: int) -> tuple[Partition, ...]:
    """All partitions of ``weight`` in reverse lexicographic order."""
    if weight < 0:
        raise ValueError("weight must be nonnegative")
    return tuple(Partition(p) for p in _partitions_bounded(weight, weight if weight else 1))


def is_lyndon(word) -> bool:
    """True if the word is strictly smaller than all of its proper rotations."""
    w = tuple(word)
    if not w:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_compositions(max_weight: int) -> list[Composition]:
    """Lyndon compositions of weight 1..max_weight, grouped by weight.

    These index the free polynomial generators of the quasi-shuffle algebra.
    """
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    return [w for n in range(1, max_weight + 1) for w in compositions(n) if is_lyndon(w)]


def lyndon_factorization(word) -> list[Composition]:
    """Factor a composition into a weakly decreasing product of Lyndon words.

    Duval's algorithm; the factorization is unique (Chen-Fox-Lyndon).
    """
    s = tuple(word)
    n = len(s)
    out: list[Composition] = []
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and s[k] <= s[j]:
            k = i if s[k] < s[j] else k + 1
            j += 1
        while i <= k:
            out.append(Composition(s[i:i + j - k]))
            i += j - k
    return out


@dataclass(frozen=True)
class CommensurableSet:
    """Subset of the integers with finite symmetric difference from Z+.

    Stored by its deviation from the nonnegative integers: ``missing`` lists
    nonnegative integers absent from the set, ``extra`` lists negative
    integers present in it.  All enumeration is lazy over this finite window.
    """

    missing: tuple[int, ...] = ()
    extra: tuple[int, ...] = ()

    def __post_init__(self):
        miss = tuple(sorted(set(self.missing)))
        ext = tuple(sorted(set(self.extra)))
        if miss and (miss[0] < 0 or not all(type(n) is int for n in miss)):
            raise ValueError("missing entries must be nonnegative integers")
        if ext and (ext[-1] >= 0 or not all(type(n) is int for n in ext)):
            raise ValueError("extra entries must be negative integers")
        object.__setattr__(self, "missing", miss)
        object.__setattr__(self, "extra", ext)

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return n in self.extra
        return n not in self.missing

    def deviation_bound(self) -> int:
        """Least b >= 0 such that every integer >= b belongs to the set."""
        return self.missing[-1] + 1 if self.missing else 0

    def head(self) -> list[int]:
        """The elements below ``deviation_bound``, in increasing order."""
        miss = self.missing
        out = list(self.extra)
        out.extend(n for n in range(self.deviation_bound()) if n not in miss)
        return out

    def shift(self, k: int) -> "CommensurableSet":
        """The translated set {s + k : s in S}, back in canonical form."""
        hi = self.deviation_bound() + abs(k) + 1
        lo = (self.extra[0] if self.extra else 0) - abs(k) - 1
        missing = tuple(n for n in range(0, hi) if (n - k) not in self)
        extra = tuple(n for n in range(lo, 0) if (n - k) in self)
        return CommensurableSet(missing, extra)


ZPLUS = CommensurableSet()


def _canonical_set(missing: tuple[int, ...], extra: tuple[int, ...]) -> CommensurableSet:
    # fast path for internally produced, already-canonical deviation tuples
    s = object.__new__(CommensurableSet)
    object.__setattr__(s, "missing", missing)
    object.__setattr__(s, "extra", extra)
    return s


def relative_cardinality(s: CommensurableSet) -> int:
    """Signed count of the deviation from Z+.

    Normalized so that the increasing enumeration s_0 < s_1 < ... of the set
    eventually satisfies s_k = k + relative_cardinality(s).
    """
    return len(s.missing) - len(s.extra)


@dataclass(frozen=True)
class DiracCode:
    """Least element of a commensurable set plus its ordered gap partition."""

    s0: int
    pi: Composition = EMPTY_WORD

    def __post_init__(self):
        object.__setattr__(self, "pi", Composition(self.pi))


def encode(s: CommensurableSet) -> DiracCode:
    """The (least element, ordered partition of gaps) code determining ``s``.

    The partition stops at the least index from which the enumeration obeys
    s_k = k + relative_cardinality(s); it is empty for Z+ and its translates.
    """
    c = relative_cardinality(s)
    elems = s.head()
    elems.append(s.deviation_bound())  # first element of the guaranteed tail run
    k_max = len(elems) - 1
    while k_max > 0 and elems[k_max - 1] == k_max - 1 + c:
        k_max -= 1
    pi = Composition(elems[i + 1] - elems[i] for i in range(k_max))
    return DiracCode(elems[0], pi)


def decode(code: DiracCode) -> CommensurableSet:
    """Rebuild the commensurable set from its code; inverse of :func:`encode`."""
    pi = Composition(code.pi)  # re-validates positivity for hand-built codes
    elems = [int(code.s0)]
    for p in pi:
        elems.append(elems[-1] + p)
    run_start = elems[-1]  # the set continues run_start, run_start+1, ... from here
    members = set(elems)
    missing = tuple(n for n in range(0, run_start) if n not in members)
    if elems[0] >= 0:
        extra = ()
    else:
        extra = tuple(sorted({n for n in elems if n < 0} | set(range(min(run_start, 0), 0))))
    return _canonical_set(missing, extra)


def composition_to_json(w) -> list[int]:
    return list(w)


def composition_from_json(data) -> Composition:
    return Composition(data)


def commensurable_to_json(s: CommensurableSet) -> dict:
    return {"missing": list(s.missing), "extra": list(s.extra)}


def commensurable_from_json(data) -> CommensurableSet:
    return CommensurableSet(tuple(data.get("missing", ())), tuple(data.get("extra", ())))


def dirac_to_json(code: DiracCode) -> dict:
    return {"s0": code.s0, "pi": list(code.pi)}


def dirac_from_json(data) -> DiracCode:
    return DiracCode(int(data["s0"]), Composition(data.get("pi", ())))
