"""Basis conversions, the Hall pairing, and the orbit-sum embedding."""

from fractions import Fraction

import pytest

from stufflekit.combinatorics import Partition, partitions
from stufflekit.quasishuffle import WordPoly
from stufflekit.symmfunc import (
    SymPoly,
    convert,
    cp_class,
    embed_qsymm,
    hall_pairing,
    sympoly_from_json,
    sympoly_to_json,
)

E = lambda n: SymPoly.generator("e", n)
H = lambda n: SymPoly.generator("h", n)
P = lambda n: SymPoly.generator("p", n)


def test_convert_examples():
    assert convert(E(1), "p") == P(1)
    assert convert(E(2), "p") == SymPoly("p", {(1, 1): Fraction(1, 2), (2,): Fraction(-1, 2)})
    expected = SymPoly("p", {
        (1, 1, 1): Fraction(1, 6), (2, 1): Fraction(-1, 2), (3,): Fraction(1, 3),
    })
    assert convert(E(3), "p") == expected


def test_roundtrips_through_degree_ten():
    for n in range(11):
        for basis in ("e", "h", "p"):
            for target in ("e", "h", "p", "m"):
                f = SymPoly.generator(basis, n) if n else SymPoly.unit(basis)
                assert convert(convert(f, target), basis) == f


def test_monomial_roundtrips():
    for n in range(7):
        for lam in partitions(n):
            f = SymPoly("m", {lam: 1}) if n else SymPoly.unit("m")
            for target in ("e", "h", "p"):
                assert convert(convert(f, target), "m") == f


def test_newton_generating_identity():
    # E(t) = exp(sum (-1)^(r-1) p_r t^r / r), expanded with a local series helper
    maxdeg = 10
    arg = {r: Fraction((-1) ** (r - 1), r) for r in range(1, maxdeg + 1)}
    # coefficients of exp(...) in the power-sum basis, degree by degree
    coeffs = [dict() for _ in range(maxdeg + 1)]
    coeffs[0][Partition()] = Fraction(1)
    power = [dict(c) for c in coeffs]
    fact = 1
    for j in range(1, maxdeg + 1):
        nxt = [dict() for _ in range(maxdeg + 1)]
        for d1, table in enumerate(power):
            for lam, c in table.items():
                for r, a in arg.items():
                    if d1 + r > maxdeg:
                        continue
                    mu = Partition(tuple(lam) + (r,))
                    nxt[d1 + r][mu] = nxt[d1 + r].get(mu, Fraction(0)) + c * a
        power = nxt
        fact *= j
        for d in range(maxdeg + 1):
            for lam, c in power[d].items():
                coeffs[d][lam] = coeffs[d].get(lam, Fraction(0)) + c / fact
    for k in range(maxdeg + 1):
        expected = SymPoly("p", {lam: c for lam, c in coeffs[k].items() if c})
        assert convert(E(k), "p") == expected


def test_hall_pairing_examples():
    h21 = SymPoly("h", {(2, 1): 1})
    m21 = SymPoly("m", {(2, 1): 1})
    m111 = SymPoly("m", {(1, 1, 1): 1})
    assert hall_pairing(h21, m21) == 1
    assert hall_pairing(h21, m111) == 0
    assert hall_pairing(P(2), P(2)) == 2


def test_hall_pairing_power_sum_norms():
    # <p_lam, p_mu> = z_lam delta; z is the centralizer order
    import math

    def z(lam):
        out = 1
        for part in set(lam):
            mult = list(lam).count(part)
            out *= part ** mult * math.factorial(mult)
        return out

    for n in range(1, 6):
        for lam in partitions(n):
            for mu in partitions(n):
                f = SymPoly("p", {lam: 1})
                g = SymPoly("p", {mu: 1})
                expected = z(lam) if lam == mu else 0
                assert hall_pairing(f, g) == expected


def test_hall_pairing_cross_degree_is_zero():
    assert hall_pairing(H(2), SymPoly("m", {(1, 1, 1): 1})) == 0


def test_embed_examples():
    m21 = SymPoly("m", {(2, 1): 1})
    assert embed_qsymm(m21) == WordPoly({(2, 1): 1, (1, 2): 1})
    m111 = SymPoly("m", {(1, 1, 1): 1})
    assert embed_qsymm(m111) == WordPoly({(1, 1, 1): 1})
    m1 = SymPoly("m", {(1,): 1})
    assert m1 * m1 == SymPoly("m", {(2,): 1, (1, 1): 2})
    assert embed_qsymm(m1 * m1) == embed_qsymm(m1) * embed_qsymm(m1)
    assert embed_qsymm(m1 * m1) == WordPoly({(2,): 1, (1, 1): 2})


def test_embed_injective_by_rank():
    for n in range(1, 7):
        rows = []
        for lam in partitions(n):
            image = embed_qsymm(SymPoly("m", {lam: 1}))
            rows.append(image.terms)
        words = sorted({w for row in rows for w in row})
        index = {w: i for i, w in enumerate(words)}
        matrix = [[Fraction(0)] * len(words) for _ in rows]
        for r, row in enumerate(rows):
            for w, c in row.items():
                matrix[r][index[w]] = c
        rank = _row_rank(matrix)
        assert rank == len(rows)


def _row_rank(matrix):
    mat = [row[:] for row in matrix]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def test_embed_multiplicative_up_to_weight_six():
    gens = [(n, lam) for n in range(1, 6) for lam in partitions(n)]
    for n1, lam in gens:
        for n2, mu in gens:
            if n1 + n2 > 6 or (n1, lam) > (n2, mu):
                continue
            f = SymPoly("m", {lam: 1})
            g = SymPoly("m", {mu: 1})
            assert embed_qsymm(f * g) == embed_qsymm(f) * embed_qsymm(g)


def test_cp_class():
    assert cp_class(0) == SymPoly.unit("p")
    assert cp_class(1) == P(1)
    assert cp_class(3) == P(3)
    with pytest.raises(ValueError):
        cp_class(-1)


def test_mixed_basis_equality_and_products():
    assert convert(E(2), "h") == SymPoly("h", {(1, 1): 1, (2,): -1})
    assert E(2) == convert(E(2), "p")  # cross-basis equality converts
    prod = SymPoly("m", {(1,): 1}) * SymPoly("m", {(2,): 1})
    assert prod == SymPoly("m", {(3,): 1, (2, 1): 1})


def test_json_round_trip():
    f = SymPoly("p", {(3, 1): Fraction(1, 2)})
    data = sympoly_to_json(f)
    assert data == {"basis": "p", "terms": {"(3,1)": "1/2"}}
    assert sympoly_from_json(data) == f


def test_addition_requires_matching_basis():
    with pytest.raises(ValueError):
        E(2) + SymPoly("p", {(2,): 1})
    assert (E(2) + 1).terms[Partition()] == 1
