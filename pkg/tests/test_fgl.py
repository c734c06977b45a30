"""Series plumbing, the universal group law, and the substitution action."""

from fractions import Fraction

import pytest

from stufflekit.fgl import (
    SeriesSubstitution,
    apply_coaction,
    chern_polynomial,
    fgl_is_integral,
    landweber_coaction,
    universal_exp,
    universal_fgl,
    universal_log,
)
from stufflekit.mpoly import MPoly
from stufflekit.series import (
    CompositionDomainError,
    NotInvertibleError,
    TruncSeries,
    compose,
    differentiate,
    exp_series,
    invert,
    restrict_to_zero,
)


def S(maxdeg, coeffs):
    return TruncSeries(("T",), maxdeg, coeffs)


def test_compose_identity():
    f = S(5, {(1,): 1, (3,): 2})
    ident = TruncSeries.identity("T", 5)
    assert compose(f, ident) == f
    assert compose(ident, f) == f


def test_compose_hand_example():
    a, b = Fraction(2), Fraction(-3)
    f = S(3, {(1,): 1, (2,): a})
    g = S(3, {(1,): 1, (2,): b})
    expected = S(3, {(1,): 1, (2,): a + b, (3,): 2 * a * b})
    assert compose(f, g) == expected


def test_compose_truncation_coherence():
    a, b = Fraction(1, 2), Fraction(5)
    deep = compose(S(5, {(1,): 1, (2,): a}), S(5, {(1,): 1, (2,): b}))
    shallow = compose(S(3, {(1,): 1, (2,): a}), S(3, {(1,): 1, (2,): b}))
    assert deep.truncated(3) == shallow


def test_compose_requires_zero_constant():
    with pytest.raises(CompositionDomainError):
        compose(S(3, {(1,): 1}), S(3, {(0,): 1, (1,): 1}))


def test_invert_examples():
    assert invert(TruncSeries.identity("T", 4)) == TruncSeries.identity("T", 4)
    a = Fraction(3)
    f = S(3, {(1,): 1, (2,): a})
    assert invert(f) == S(3, {(1,): 1, (2,): -a, (3,): 2 * a * a})
    g = S(5, {(1,): 1, (2,): Fraction(1, 2), (3,): Fraction(-2, 7)})
    assert invert(invert(g)) == g
    assert compose(g, invert(g)) == TruncSeries.identity("T", 5)


def test_invert_requires_unit_linear_term():
    with pytest.raises(NotInvertibleError):
        invert(S(3, {(1,): 2}))
    with pytest.raises(NotInvertibleError):
        invert(S(3, {(0,): 1, (1,): 1}))


def test_differentiate_and_restrict():
    s = TruncSeries(("b", "T"), 4, {(1, 2): 3, (2, 0): 5})
    ds = differentiate(s, "T")
    assert ds == TruncSeries(("b", "T"), 4, {(1, 1): 6})
    assert restrict_to_zero(s, "T") == TruncSeries(("b",), 4, {(2,): 5})


def test_exp_series():
    s = S(4, {(1,): 1})
    e = exp_series(s)
    assert e == S(4, {(0,): 1, (1,): 1, (2,): Fraction(1, 2),
                      (3,): Fraction(1, 6), (4,): Fraction(1, 24)})


def test_universal_log_exp_duality():
    log10 = universal_log(10)
    assert compose(log10, universal_exp(10)) == TruncSeries.identity(
        "T", 10, MPoly.const(1)
    )


def test_fgl_additive_specialization():
    law = universal_fgl(5)
    # kill every generator: the law collapses to X + Y
    collapsed = law.map_coefficients(lambda c: c.substitute(
        {name: Fraction(0) for name in c.variables()}))
    assert collapsed == TruncSeries(("X", "Y"), 5, {(1, 0): Fraction(1), (0, 1): Fraction(1)})


def test_fgl_degree_two_term():
    law = universal_fgl(2)
    assert law.coefficient((1, 1)) == -2 * MPoly.var("m1")
    assert law.coefficient((1, 0)) == 1
    assert law.coefficient((0, 1)) == 1


def test_fgl_unit_and_symmetry():
    law = universal_fgl(5)
    for (i, j), c in law.coeffs.items():
        if j == 0:
            assert (i, c == 1) == (1, True)
        assert law.coefficient((j, i)) == c


def test_fgl_integrality_through_degree_six():
    assert fgl_is_integral(6)


def test_landweber_identity_and_example():
    ident = SeriesSubstitution.identity(4)
    images = landweber_coaction(ident, 4)
    for n in range(1, 5):
        assert images[n] == MPoly.var(f"e{n}")
    t = SeriesSubstitution.from_coeffs([1, MPoly.var("t1")], 4)
    images = landweber_coaction(t, 4)
    assert images[2] == MPoly.var("e2") + MPoly.var("t1") * MPoly.var("e1")


def test_landweber_action_law_small():
    t = SeriesSubstitution.symbolic("t", 4)
    s = SeriesSubstitution.symbolic("s", 4)
    images_t = landweber_coaction(t, 4)
    images_s = landweber_coaction(s, 4)
    composed = landweber_coaction(s.after(t), 4)
    for n in range(1, 5):
        assert apply_coaction(images_t[n], images_s) == composed[n]


def test_chern_polynomial_examples():
    ident = SeriesSubstitution.identity(3)
    assert chern_polynomial(1, ident, 3) == MPoly.var("e1")
    assert chern_polynomial(2, ident, 3) == MPoly.var("e2")
    t = SeriesSubstitution.from_coeffs([1, MPoly.var("t1")], 3)
    e1, e2, t1 = MPoly.var("e1"), MPoly.var("e2"), MPoly.var("t1")
    # brute expansion of (x1 + t1 x1^2)(x2 + t1 x2^2) in two roots:
    # e2 + t1 e1 e2 + t1^2 e2^2
    assert chern_polynomial(2, t, 4) == e2 + t1 * e1 * e2 + t1 ** 2 * e2 ** 2


def test_chern_polynomial_top_class():
    ident = SeriesSubstitution.identity(2)
    assert chern_polynomial(3, ident, 2) == MPoly.var("e3")


def test_substitution_validation():
    with pytest.raises(ValueError):
        SeriesSubstitution(TruncSeries(("T",), 3, {(0,): 1, (1,): 1}))


def test_mpoly_substitute_and_integrality():
    p = MPoly.var("a") * MPoly.var("b") + 2
    q = p.substitute({"a": MPoly.const(3)})
    assert q == 3 * MPoly.var("b") + 2
    assert p.has_integer_coefficients()
    assert not (Fraction(1, 2) * p).has_integer_coefficients()
