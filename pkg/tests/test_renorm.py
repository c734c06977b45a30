"""The exponential character, the derivation flow, and the modulus identity."""

from fractions import Fraction

import pytest

from stufflekit.renorm import (
    DegreeError,
    FlowOperator,
    cartier_generator,
    chern_character,
    renormalize,
    st_modulus,
)
from stufflekit.series import TruncSeries, differentiate, restrict_to_zero
from stufflekit.symmfunc import SymPoly


def P(n):
    return SymPoly.generator("p", n)


def test_chern_character_examples():
    assert chern_character(0) == TruncSeries(("b", "T"), 0, {(0, 0): 1})
    c2 = chern_character(2)
    assert c2 == TruncSeries(("b", "T"), 4, {(0, 0): 1, (1, 1): 1, (2, 2): Fraction(1, 2)})


def test_character_is_an_eigenfunction():
    # d/dT applied to the character multiplies by b, through one degree less
    c = chern_character(4)
    lhs = differentiate(c, "T")
    b_times = TruncSeries(("b", "T"), 8, {(k + 1, k): v for (k, _), v in c.coeffs.items()})
    for exps in set(lhs.coeffs) | set(b_times.coeffs):
        if sum(exps) <= 2 * 3:  # both sides complete through the b^3 T^3 diagonal
            assert lhs.coefficient(exps) == b_times.coefficient(exps)


def test_cartier_generator_examples():
    d1 = cartier_generator(1)
    assert d1.coeffs == ((1, SymPoly.unit("p")),)
    d2 = cartier_generator(2)
    assert d2.coeffs[1] == (2, Fraction(1, 2) * P(1))
    d3 = cartier_generator(3)
    assert d3.coeffs[2] == (3, Fraction(1, 3) * P(2))


def test_st_modulus_examples():
    assert st_modulus(0) == TruncSeries(("b",), 0, {(0,): 1})
    assert st_modulus(1) == TruncSeries(("b",), 1, {(0,): 1, (1,): -1})
    m2 = st_modulus(2)
    expected_b2 = Fraction(1, 2) * (SymPoly.unit("p") - P(1))
    assert m2.coefficient((2,)) == expected_b2


def test_renormalize_constant():
    one = TruncSeries(("b", "T"), 4, {(0, 0): 1})
    assert renormalize(one, 2) == TruncSeries(("b",), 2, {(0,): 1})


def test_renormalize_character_small():
    out = renormalize(chern_character(2), 2)
    assert out.coefficient((0,)) == 1
    assert out.coefficient((1,)) == -1
    assert out.coefficient((2,)) == Fraction(1, 2) * (SymPoly.unit("p") - P(1))


def test_modulus_identity_through_degree_four():
    for n in range(5):
        assert renormalize(chern_character(n), n) == st_modulus(n)


def test_renormalize_catches_shallow_truncation():
    with pytest.raises(DegreeError):
        renormalize(chern_character(2), 3)


def test_eigenvalue_route():
    # exp(-D) exp(bT) = exp(-L(b)) exp(bT) as a (b,T)-series through total degree 4
    n = 4
    character = chern_character(n)
    flowed = cartier_generator(n).exponential_action(character).truncated(n)
    modulus = st_modulus(n)
    lifted = TruncSeries(("b", "T"), n, {(k, 0): c for (k,), c in modulus.coeffs.items()})
    product = (lifted * character.truncated(n)).truncated(n)
    assert flowed == product


def test_flow_is_one_parameter_family():
    d = cartier_generator(4)
    series = chern_character(4)
    s, t = Fraction(1, 3), Fraction(-2, 5)
    once = d.exponential_action(d.exponential_action(series, t), s)
    combined = d.exponential_action(series, s + t)
    assert once == combined


def test_flow_commutes_with_central_coefficients():
    d = cartier_generator(3)
    base = chern_character(3)
    c = P(2) + 3 * SymPoly.unit("p")
    scaled = base.map_coefficients(lambda v: c * v)
    assert d.apply(scaled) == d.apply(base).map_coefficients(lambda v: c * v)


def test_modulus_against_direct_expansion():
    # independent oracle: expand exp(-L(b)) monomial by monomial in dicts
    maxdeg = 5
    from stufflekit.combinatorics import Partition

    arg = {n: Fraction(-1, n) for n in range(1, maxdeg + 1)}  # -L coefficients of p_{n-1}
    # table[d] maps partition of p-indices -> coefficient, tracking b-degree d
    table = [dict() for _ in range(maxdeg + 1)]
    table[0][Partition()] = Fraction(1)
    power = [dict(t) for t in table]
    fact = 1
    for j in range(1, maxdeg + 1):
        nxt = [dict() for _ in range(maxdeg + 1)]
        for d1, entries in enumerate(power):
            for lam, c in entries.items():
                for n, a in arg.items():
                    if d1 + n > maxdeg:
                        continue
                    mu = Partition(tuple(lam) + ((n - 1,) if n > 1 else ()))
                    key_weight = d1 + n
                    nxt[key_weight][mu] = nxt[key_weight].get(mu, Fraction(0)) + c * a
        power = nxt
        fact *= j
        for d in range(maxdeg + 1):
            for lam, c in power[d].items():
                table[d][lam] = table[d].get(lam, Fraction(0)) + c / fact
    modulus = st_modulus(maxdeg)
    for d in range(maxdeg + 1):
        expected = SymPoly("p", {lam: c for lam, c in table[d].items() if c})
        assert modulus.coefficient((d,)) == expected


def test_flow_operator_validation():
    with pytest.raises(ValueError):
        FlowOperator(((0, SymPoly.unit("p")),))
