from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from wordpoly.errors import DomainError, ShapeError
from wordpoly.polyring import (
    ONE,
    X,
    ZERO,
    IntPoly,
    PolyMatrix,
    cyclic_quotient,
    det,
    divides,
    exact_div,
    format_poly,
    gcd,
    lowest_term,
    parse_poly,
    rank,
)
from wordpoly.words import encode

SX = sympy.Symbol("X")


def to_sympy(p: IntPoly):
    return sum((c * SX**d for d, c in p.terms()), sympy.Integer(0))


def from_sympy(expr) -> IntPoly:
    poly = sympy.Poly(sympy.expand(expr), SX)
    return IntPoly({int(m[0]): int(c) for m, c in zip(poly.monoms(), poly.coeffs())})


def P(*coeffs: int) -> IntPoly:
    return IntPoly.from_coeffs(coeffs)


polys = st.dictionaries(st.integers(0, 8), st.integers(-5, 5), max_size=5).map(IntPoly)


# -- canonical form and text ----------------------------------------------------

def test_no_zero_coefficients_stored():
    p = IntPoly({0: 1, 3: 0, 2: -2})
    assert p.terms() == [(0, 1), (2, -2)]
    assert IntPoly({1: 0}) == ZERO


@pytest.mark.parametrize(
    "poly, text",
    [
        (P(1, 2, 1, 2), "1 + 2*X + X^2 + 2*X^3"),
        (ZERO, "0"),
        (P(-1, 0, 1), "-1 + X^2"),
        (P(0, 1, 0, -1), "X - X^3"),
        (P(0, -3), "-3*X"),
    ],
)
def test_format_and_parse(poly, text):
    assert format_poly(poly) == text
    assert parse_poly(text) == poly


@given(polys)
def test_text_round_trip(p):
    assert parse_poly(format_poly(p)) == p


# -- ring axioms against sympy --------------------------------------------------

@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys, polys)
def test_product_matches_sympy(a, b):
    assert from_sympy(to_sympy(a) * to_sympy(b)) == a * b


@given(polys, st.integers(-3, 3))
def test_evaluation_matches_sympy(a, x):
    assert a(x) == to_sympy(a).subs(SX, x)


# -- divisibility ---------------------------------------------------------------

@pytest.mark.parametrize(
    "a, n, expected",
    [(4, 2, P(1, 0, 1)), (6, 2, P(1, 0, 1, 0, 1)), (5, 5, ONE)],
)
def test_cyclic_quotient(a, n, expected):
    q = cyclic_quotient(a, n)
    assert q == expected
    assert q * (X**n - 1) == X**a - 1


def test_cyclic_quotient_rejects_non_divisor():
    with pytest.raises(DomainError):
        cyclic_quotient(5, 2)


def test_divides_examples():
    assert divides(P(1, 0, 1), P(1, 2, 1, 2))
    assert exact_div(P(1, 2, 1, 2), P(1, 0, 1)) == P(1, 2)
    assert not divides(P(1, 1), P(1, 2))
    assert divides(P(3, 1), ZERO)
    with pytest.raises(DomainError):
        divides(ZERO, ONE)


def test_exact_div_rejects_remainder():
    with pytest.raises(DomainError):
        exact_div(P(1, 2), P(1, 1))


@given(polys, polys)
def test_divides_agrees_with_sympy(d, p):
    if d.is_zero():
        return
    _, r = sympy.div(to_sympy(p), to_sympy(d), SX)
    assert divides(d, p) == (sympy.expand(r) == 0)


@pytest.mark.parametrize("a", range(1, 13))
@pytest.mark.parametrize("b", range(1, 13))
def test_gcd_of_cyclotomic_differences(a, b):
    from math import gcd as igcd

    assert gcd(X**a - 1, X**b - 1) == X ** igcd(a, b) - 1


def test_lowest_term():
    assert lowest_term(X**2 - 1) == (0, -1)
    assert lowest_term(X**3 + 2 * X**5) == (3, 1)
    assert lowest_term(encode((1, 2, 1, 2))) == (0, 1)
    with pytest.raises(DomainError):
        lowest_term(ZERO)


# -- matrices -------------------------------------------------------------------

def to_sympy_matrix(m: PolyMatrix):
    return sympy.Matrix([[to_sympy(e) for e in row] for row in m.rows])


def test_rank_examples():
    assert rank(PolyMatrix([[ONE - X**2, X - ONE]])) == 1
    assert rank(PolyMatrix([[ONE - X, X - ONE], [2 - 2 * X, 2 * X - 2]])) == 1
    assert rank(PolyMatrix([[ZERO, ZERO], [ZERO, ZERO]])) == 0


def test_det_examples():
    assert det(PolyMatrix([[ONE]])) == ONE
    assert det(PolyMatrix([[ONE - X, X], [X, ONE - X]])) == ONE - 2 * X
    assert det(PolyMatrix([[ONE, ZERO], [ZERO, ONE]])) == ONE
    with pytest.raises(ShapeError):
        det(PolyMatrix([[ONE, X]]))


def test_ragged_matrix_rejected():
    with pytest.raises(ShapeError):
        PolyMatrix([[ONE, X], [ONE]])


def _random_matrix(rng: random.Random, rows: int, cols: int, degree: int = 3) -> PolyMatrix:
    def entry():
        if rng.random() < 0.25:
            return ZERO
        return IntPoly({d: rng.randint(-2, 2) for d in range(rng.randint(0, degree) + 1)})

    return PolyMatrix([[entry() for _ in range(cols)] for _ in range(rows)])


def _low_rank_matrix(rng: random.Random, rows: int, cols: int, r: int) -> PolyMatrix:
    a = _random_matrix(rng, rows, r, 2)
    b = _random_matrix(rng, r, cols, 2)
    return PolyMatrix(
        [[sum((a[i, k] * b[k, j] for k in range(r)), ZERO) for j in range(cols)] for i in range(rows)]
    )


@pytest.mark.parametrize("seed", range(40))
def test_rank_and_det_match_sympy(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 4), rng.randint(1, 4)
    m = _random_matrix(rng, rows, cols) if seed % 2 else _low_rank_matrix(rng, rows, cols, rng.randint(1, 2))
    sm = to_sympy_matrix(m)
    assert rank(m) == sm.rank()
    if rows == cols:
        assert det(m) == from_sympy(sm.det(method="berkowitz"))


@pytest.mark.parametrize("seed", range(20))
def test_rank_matches_evaluation_at_large_points(seed):
    rng = random.Random(1000 + seed)
    m = _low_rank_matrix(rng, 3, 4, rng.randint(1, 3))
    bound = 2 + max(e.degree for row in m.rows for e in row)
    symbolic = rank(m)
    for x in range(bound + 50, bound + 55):
        assert sympy.Matrix(m.evaluate(x)).rank() == symbolic


@pytest.mark.parametrize("seed", range(20))
def test_det_multiplicative(seed):
    rng = random.Random(2000 + seed)
    a, b = _random_matrix(rng, 2, 2), _random_matrix(rng, 2, 2)
    ab = PolyMatrix(
        [[a[i, 0] * b[0, j] + a[i, 1] * b[1, j] for j in range(2)] for i in range(2)]
    )
    assert det(ab) == det(a) * det(b)


@settings(max_examples=50)
@given(st.lists(st.lists(polys, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_agrees_with_sympy_3x3(rows):
    m = PolyMatrix(rows)
    assert det(m) == from_sympy(to_sympy_matrix(m).det(method="berkowitz"))
