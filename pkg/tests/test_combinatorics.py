"""Compositions, Lyndon words, and commensurable-set codes."""

import pytest

from stufflekit.combinatorics import (
    CommensurableSet,
    Composition,
    DiracCode,
    Partition,
    commensurable_from_json,
    commensurable_to_json,
    compositions,
    compositions_up_to,
    decode,
    dirac_from_json,
    dirac_to_json,
    encode,
    is_lyndon,
    lyndon_compositions,
    lyndon_factorization,
    partitions,
    relative_cardinality,
)


def brute_force_lyndon(word) -> bool:
    """Independent rotation test, written from the definition."""
    w = list(word)
    if not w:
        return False
    rotations = [w[i:] + w[:i] for i in range(1, len(w))]
    return all(w < r for r in rotations)


def mobius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def test_composition_basics():
    w = Composition((1, 2, 1))
    assert w.weight == 4
    assert repr(w) == "w(1,2,1)"
    with pytest.raises(ValueError):
        Composition((1, 0))
    assert Partition((1, 3, 2)) == (3, 2, 1)


def test_composition_counts():
    for n in range(1, 9):
        assert len(compositions(n)) == 2 ** (n - 1)
    assert compositions(0) == (Composition(),)


def test_lyndon_examples():
    assert lyndon_compositions(1) == [Composition((1,))]
    assert lyndon_compositions(2) == [Composition((1,)), Composition((2,))]
    weight3 = [w for w in lyndon_compositions(3) if w.weight == 3]
    assert weight3 == [Composition((1, 2)), Composition((3,))]


def test_lyndon_against_brute_force():
    listed = set(lyndon_compositions(7))
    for n in range(1, 8):
        for w in compositions(n):
            assert (w in listed) == brute_force_lyndon(w)


def test_lyndon_counts_match_necklace_formula():
    # weight-n Lyndon compositions match binary Lyndon words of length n >= 2
    by_weight = {}
    for w in lyndon_compositions(8):
        by_weight.setdefault(w.weight, 0)
        by_weight[w.weight] += 1
    assert by_weight[1] == 1
    for n in range(2, 9):
        witt = sum(mobius(d) * 2 ** (n // d) for d in range(1, n + 1) if n % d == 0) // n
        assert by_weight[n] == witt


def test_no_lyndon_word_is_a_power():
    for w in lyndon_compositions(8):
        for period in range(1, len(w)):
            if len(w) % period == 0:
                assert tuple(w) != tuple(w[:period]) * (len(w) // period)


def test_chen_fox_lyndon_factorization():
    for n in range(0, 9):
        for w in compositions(n):
            factors = lyndon_factorization(w)
            assert all(is_lyndon(f) for f in factors)
            assert all(factors[i] >= factors[i + 1] for i in range(len(factors) - 1))
            joined = tuple(x for f in factors for x in f)
            assert joined == tuple(w)


# -- commensurable sets -------------------------------------------------------


def enumeration_oracle(s: CommensurableSet, probes=range(40, 50)) -> int:
    """Fit s_k = k + c by listing elements directly from membership."""
    elements = [n for n in range(min(s.extra, default=0) - 1, 70) if n in s]
    fits = {elements[k] - k for k in probes}
    assert len(fits) == 1
    return fits.pop()


def test_relative_cardinality_examples():
    assert relative_cardinality(CommensurableSet()) == 0
    assert relative_cardinality(CommensurableSet(missing=(0,))) == 1
    assert relative_cardinality(CommensurableSet(extra=(-1,))) == -1


def test_relative_cardinality_matches_enumeration():
    cases = [
        CommensurableSet(),
        CommensurableSet(missing=(0, 1, 5)),
        CommensurableSet(extra=(-4, -1)),
        CommensurableSet(missing=(2,), extra=(-3, -2, -1)),
        CommensurableSet(missing=(0, 1, 2, 3), extra=(-8,)),
    ]
    for s in cases:
        assert relative_cardinality(s) == enumeration_oracle(s)


def test_shift_changes_cardinality_by_one():
    cases = [
        CommensurableSet(),
        CommensurableSet(missing=(1, 3)),
        CommensurableSet(missing=(0,), extra=(-2,)),
    ]
    for s in cases:
        assert relative_cardinality(s.shift(1)) == relative_cardinality(s) + 1
        assert relative_cardinality(s.shift(-1)) == relative_cardinality(s) - 1
        assert s.shift(3).shift(-3) == s


def test_encode_examples():
    assert encode(CommensurableSet()) == DiracCode(0, Composition())
    assert encode(CommensurableSet(missing=(0, 1))) == DiracCode(2, Composition())
    assert encode(CommensurableSet(missing=(1, 2))) == DiracCode(0, Composition((3,)))


def test_decode_examples():
    assert decode(DiracCode(0, Composition())) == CommensurableSet()
    assert decode(DiracCode(0, Composition((3,)))) == CommensurableSet(missing=(1, 2))
    with pytest.raises(ValueError):
        decode(DiracCode(0, (0, 2)))


def test_ordered_partition_matters():
    a = decode(DiracCode(0, Composition((1, 2))))
    b = decode(DiracCode(0, Composition((2, 1))))
    assert a != b
    assert sorted((1, 2)) == sorted((2, 1))  # same underlying multiset


def test_roundtrip_small_window_exhaustive():
    for mmask in range(1 << 6):
        missing = tuple(n for n in range(6) if mmask >> n & 1)
        for emask in range(1 << 3):
            extra = tuple(n for n in range(-3, 0) if emask >> (n + 3) & 1)
            s = CommensurableSet(missing, extra)
            assert decode(encode(s)) == s


def test_validation():
    with pytest.raises(ValueError):
        CommensurableSet(missing=(-1,))
    with pytest.raises(ValueError):
        CommensurableSet(extra=(1,))


def test_json_round_trips():
    s = CommensurableSet(missing=(0, 3), extra=(-2,))
    assert commensurable_from_json(commensurable_to_json(s)) == s
    code = encode(s)
    assert dirac_from_json(dirac_to_json(code)) == code


def test_partitions_enumeration():
    assert len(partitions(6)) == 11
    assert partitions(0) == (Partition(),)
    assert all(p.weight == 5 for p in partitions(5))


def test_compositions_up_to():
    words = compositions_up_to(3)
    assert len(words) == 1 + 1 + 2 + 4
