"""Certified nested-sum evaluations against classical closed forms."""

import math

import pytest

from stufflekit.combinatorics import Composition, compositions
from stufflekit.mzv import (
    DivergentSeriesError,
    FloatPoly,
    check_stuffle,
    zeta,
    zeta_regularized,
)
from stufflekit.quasishuffle import WordPoly, is_admissible, quasi_shuffle

ZETA3 = 1.2020569031595942854
ZETA5 = 1.0369277551433699263


def test_zeta_two():
    v = zeta((2,), 1e-10)
    assert v.error_bound <= 1e-10
    assert abs(v.value - math.pi ** 2 / 6) <= 1e-10


def test_zeta_three():
    v = zeta((3,), 1e-10)
    assert abs(v.value - ZETA3) <= 1e-10


def test_zeta_four_closed_form():
    v = zeta((4,), 1e-10)
    assert abs(v.value - math.pi ** 4 / 90) <= 1e-10


def test_euler_identity():
    a = zeta((2, 1), 1e-9)
    b = zeta((3,), 1e-9)
    assert abs(a.value - b.value) <= 2e-9


def test_depth_two_closed_form():
    # zeta(2,2) = pi^4 / 120
    v = zeta((2, 2), 1e-9)
    assert abs(v.value - math.pi ** 4 / 120) <= 1e-9


def test_deep_duality_identities():
    # zeta(2,1,...,1) with n ones equals zeta(n+2)
    for n, expected in ((2, math.pi ** 4 / 90), (3, ZETA5)):
        word = (2,) + (1,) * n
        v = zeta(word, 1e-9)
        assert abs(v.value - expected) <= 2e-9, word


def test_certified_bounds_hold():
    references = {
        (2,): math.pi ** 2 / 6,
        (3,): ZETA3,
        (4,): math.pi ** 4 / 90,
        (2, 2): math.pi ** 4 / 120,
        (2, 1): ZETA3,
        (2, 1, 1): math.pi ** 4 / 90,
    }
    for word, ref in references.items():
        v = zeta(word, 1e-9)
        assert abs(v.value - ref) <= v.error_bound, word


def test_divergent_inputs_rejected():
    with pytest.raises(DivergentSeriesError):
        zeta((1,), 1e-6)
    with pytest.raises(DivergentSeriesError):
        zeta((1, 2), 1e-6)


def test_monotone_in_first_part():
    values = [zeta((a,), 1e-10).value for a in range(2, 9)]
    assert all(x > y for x, y in zip(values, values[1:]))


def test_stuffle_examples():
    assert check_stuffle((2,), (2,), 1e-9) < 1e-8
    assert check_stuffle((2,), (3,), 1e-9) < 1e-8
    assert check_stuffle((2,), (), 1e-9) == 0.0


def test_stuffle_all_admissible_pairs_weight_six():
    words = [w for n in range(2, 5) for w in compositions(n) if is_admissible(w)]
    for u in words:
        for v in words:
            if u.weight + v.weight > 6 or u > v:
                continue
            eps = 1e-9
            residual = check_stuffle(u, v, eps)
            expansion = quasi_shuffle(u, v)
            budget = sum(abs(float(c)) * eps for c in expansion.terms.values()) + 2 * eps
            assert residual < 10 * budget, (u, v, residual)


def test_zeta_regularized_examples():
    t_poly = zeta_regularized((1,), 1e-9)
    assert t_poly.coeffs == {1: 1.0}

    const = zeta_regularized((2, 1), 1e-9)
    assert set(const.coeffs) == {0}
    assert abs(const.coefficient(0) - ZETA3) <= 1e-8

    mixed = zeta_regularized((1, 2), 1e-9)
    assert abs(mixed.coefficient(1) - math.pi ** 2 / 6) <= 1e-8
    # the constant coefficient is -zeta(2,1) - zeta(3) = -2 zeta(3)
    assert abs(mixed.coefficient(0) + 2 * ZETA3) <= 1e-8


def test_zeta_regularized_is_multiplicative():
    words = [w for n in range(1, 5) for w in compositions(n)]
    for u in words:
        for v in words:
            if u.weight + v.weight > 4 or u > v:
                continue
            pu = zeta_regularized(u, 1e-10)
            pv = zeta_regularized(v, 1e-10)
            product_poly = pu * pv
            stuffed = quasi_shuffle(u, v)
            combined = FloatPoly()
            for w, c in stuffed.terms.items():
                pw = zeta_regularized(w, 1e-10)
                combined = combined - FloatPoly(
                    {i: -float(c) * x for i, x in pw.coeffs.items()},
                    {i: abs(float(c)) * pw.error(i) for i in pw.errors},
                )
            gap = product_poly - combined
            slack = 1e-7 + sum(product_poly.errors.values()) + sum(combined.errors.values())
            assert gap.max_residual() <= slack, (u, v)


def test_mzv_value_records_composition():
    v = zeta((3, 1), 1e-8)
    assert v.composition == Composition((3, 1))
    assert v.error_bound <= 1e-8
