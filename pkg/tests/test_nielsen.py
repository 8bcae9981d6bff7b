from __future__ import annotations

import random

import pytest

from _corpus import E1_TEXT, E2_TEXT, all_equations, eq, random_equation
from wordpoly.equations import apply, is_solution, length_type
from wordpoly.errors import DomainError, NotASolutionError
from wordpoly.nielsen import (
    REGULAR,
    SINGULAR,
    Decomposition,
    ElementaryTransformation,
    coefficient_matrix,
    decompose,
    length_type_cone,
    occurrence_matrix,
    principal_solution,
    recompose,
    residual_morphism,
)
from wordpoly.oracle import SearchBound, combinatorial_rank, enumerate_solutions
from wordpoly.polyring import ONE, ZERO, IntPoly, PolyMatrix, rank
from wordpoly.words import encode

COMM = eq("x1x2 = x2x1")


def _int_rank(rows) -> int:
    return rank(PolyMatrix([[IntPoly.constant(a) if a else ZERO for a in r] for r in rows]))


def test_commutation_example():
    h = ((1, 2), (1, 2, 1, 2))
    d = decompose(COMM, h)
    assert d.erased == frozenset()
    assert d.steps == (
        ElementaryTransformation(REGULAR, target=1, source=0),
        ElementaryTransformation(SINGULAR, target=1, source=0),
    )
    assert d.theta[0] == (1, 2)
    assert principal_solution(d) == ((0,), (0, 0))
    assert recompose(d) == h
    assert d.rank_bound == 1
    assert occurrence_matrix(d, 2) == [[1, 0], [2, 0]]
    assert coefficient_matrix(d, 2) == PolyMatrix([[ONE, ZERO], [IntPoly({0: 1, 2: 1}), ZERO]])
    assert length_type_cone(d) == [(1, 2), (0, 0)]
    assert encode((1, 2, 1, 2)) == IntPoly({0: 1, 2: 1}) * encode((1, 2))


def test_trivial_equation():
    h = ((1,), (2, 2))
    d = decompose(eq("x1x2 = x1x2"), h)
    assert d.steps == () and d.theta == h and d.erased == frozenset()


def test_erased_unknowns():
    d = decompose(COMM, ((1,), ()))
    assert d.erased == frozenset({1}) and d.steps == ()
    assert recompose(d) == ((1,), ())
    assert occurrence_matrix(d, 0) == [[1, 0], [0, 0]]


def test_identity_stage():
    d = decompose(COMM, ((1,), (1,)))
    assert occurrence_matrix(d, 0) == [[1, 0], [0, 1]]
    assert coefficient_matrix(d, 0) == PolyMatrix([[ONE, ZERO], [ZERO, ONE]])
    with pytest.raises(DomainError):
        occurrence_matrix(d, 5)


def test_not_a_solution():
    with pytest.raises(NotASolutionError):
        decompose(COMM, ((1,), (2,)))


def test_transformation_validation():
    with pytest.raises(DomainError):
        ElementaryTransformation("other", 0, 1)
    with pytest.raises(DomainError):
        ElementaryTransformation(REGULAR, 1, 1)


def test_json_round_trip():
    d = decompose(eq(E1_TEXT), ((1,), (2,), (1, 2)))
    assert Decomposition.from_json(d.to_json()) == d


def test_cone_spans_plane_for_cover_example():
    e1, e2 = eq(E1_TEXT), eq(E2_TEXT)
    h = ((1,), (2,), (1, 2))
    assert is_solution(h, e1) and is_solution(h, e2)
    d = decompose(e1, h)
    gens = [g for g in length_type_cone(d) if any(g)]
    for g in gens:
        assert g[0] + g[1] == g[2]
    assert _int_rank(gens) == 2


def check_solution(e, h) -> None:
    d = decompose(e, h)
    assert recompose(d) == h
    phi = principal_solution(d)
    assert apply(phi, e.lhs) == apply(phi, e.rhs)
    r = combinatorial_rank(h)
    assert r <= d.rank_bound
    prev = _int_rank(occurrence_matrix(d, 0))
    for k, step in enumerate(d.steps, start=1):
        cur = _int_rank(occurrence_matrix(d, k))
        if step.kind == REGULAR:
            assert cur == prev
        else:
            assert prev - 1 <= cur <= prev
        prev = cur
    assert prev >= d.rank_bound
    m = len(d.steps)
    b = coefficient_matrix(d, m)
    g = residual_morphism(d, m)
    assert g == d.theta
    for i in range(e.n):
        total = ZERO
        for j in range(e.n):
            if b[i, j] and g[j]:
                total = total + b[i, j] * encode(g[j])
        assert total == encode(h[i])
    assert rank(b) >= r
    cone = length_type_cone(d)
    lt = tuple(sum(len(g[i]) * cone[i][x] for i in range(e.n)) for x in range(e.n))
    assert lt == length_type(h)


def test_suite_on_small_exhaustive_set():
    bound = SearchBound.uniform(3, 2)
    for e in all_equations(3, 4):
        for h in enumerate_solutions(e, bound):
            check_solution(e, h)


@pytest.mark.parametrize("seed", range(20))
def test_suite_random_longer(seed):
    rng = random.Random(seed)
    e = random_equation(rng, 3, 8)
    for h in enumerate_solutions(e, SearchBound.uniform(3, 3))[:200]:
        check_solution(e, h)


def test_coefficient_identity_for_other_residuals():
    e = eq(E1_TEXT)
    h = ((1,), (2,), (1, 2))
    d = decompose(e, h)
    m = len(d.steps)
    f = principal_solution(d)
    b = coefficient_matrix(d, m)
    lengths = length_type(d.theta)
    rng = random.Random(3)
    for _ in range(20):
        g = tuple(tuple(rng.randint(1, 3) for _ in range(k)) for k in lengths)
        for i in range(e.n):
            total = sum((b[i, j] * encode(g[j]) for j in range(e.n) if b[i, j] and g[j]), ZERO)
            assert total == encode(apply(g, f[i]))
