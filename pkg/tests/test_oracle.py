from __future__ import annotations

import itertools
import random

import pytest

from _corpus import E1_TEXT, E2_TEXT, all_equations, all_words, eq, random_equation
from wordpoly.equations import EquationSystem, WordEquation, weqpeq_residual
from wordpoly.errors import BudgetExceededError, DomainError, ShapeError
from wordpoly.oracle import (
    SearchBound,
    brute_force_solutions,
    check_chain,
    check_independent,
    combinatorial_rank,
    enumerate_solutions,
    estimate,
    rank_solutions,
)
from wordpoly.polyring import ZERO
from wordpoly.words import primitive_root

XYZ = eq("xyz = zxy")


def test_enumerate_example_exact():
    sols = enumerate_solutions(XYZ, SearchBound((1, 1, 2)), exact=True)
    assert len(sols) == 4
    assert all(h[2] == h[0] + h[1] for h in sols)


def test_trivial_equation_gives_everything():
    b = SearchBound((2, 1))
    sols = enumerate_solutions(eq("x1x2 = x1x2"), b)
    assert len(sols) == (1 + 2 + 4) * (1 + 2)


def test_length_argument():
    for h in enumerate_solutions(eq("x1 = x2x1x2"), SearchBound((3, 3))):
        assert h[1] == ()


def test_canonical_order():
    sols = enumerate_solutions(XYZ, SearchBound.uniform(3, 2))
    keys = [(tuple(len(w) for w in h), h) for h in sols]
    assert keys == sorted(keys)


@pytest.mark.parametrize("seed", range(25))
def test_matches_literal_enumeration(seed):
    rng = random.Random(seed)
    eqs = [random_equation(rng, 3, 6, min_side=0) for _ in range(rng.randint(1, 2))]
    b = SearchBound.uniform(3, 2)
    assert enumerate_solutions(eqs, b) == brute_force_solutions(eqs, b)


@pytest.mark.parametrize("seed", range(10))
def test_solutions_are_exactly_zero_residual(seed):
    rng = random.Random(50 + seed)
    e = random_equation(rng, 3, 6)
    b = SearchBound.uniform(3, 2)
    sols = set(enumerate_solutions(e, b))
    for h in brute_force_solutions(EquationSystem((), 3), b):
        assert (h in sols) == (weqpeq_residual(e, h) == ZERO)


def test_jobs_do_not_change_output():
    e = eq(E1_TEXT)
    b = SearchBound.uniform(3, 3)
    assert enumerate_solutions(e, b, jobs=1) == enumerate_solutions(e, b, jobs=2)


def test_budget():
    b = SearchBound.uniform(3, 4)
    assert estimate(eq("x1 = x1", 3), b) > 1000
    with pytest.raises(BudgetExceededError):
        enumerate_solutions(eq("x1 = x1", 3), b, cap=1000)


def test_bound_validation():
    with pytest.raises(DomainError):
        SearchBound((1,), 0)
    with pytest.raises(DomainError):
        SearchBound((-1,))
    with pytest.raises(ShapeError):
        enumerate_solutions(XYZ, SearchBound((1, 1)))


@pytest.mark.parametrize(
    "h, r",
    [
        (((1,), (2,), (1, 2)), 2),
        (((1,), (1, 1), (1, 1, 1)), 1),
        (((), (), ()), 0),
        (((1, 2), (2, 1)), 2),
        (((1, 2, 1), (1, 2)), 2),
        (((1, 1, 2), (1, 2), (2, 1, 2)), 2),
        (((1, 2), (1, 2, 1, 2), ()), 1),
        (((1,), (2,), (3,)), 3),
    ],
)
def test_rank_examples(h, r):
    assert combinatorial_rank(h) == r


def test_rank_cap():
    with pytest.raises(BudgetExceededError):
        combinatorial_rank(((1,) * 40, (2,) * 40))


def test_rank_monotone_and_rank_one_characterization():
    ws = all_words(3, min_len=0)
    for h in itertools.product(ws, repeat=3):
        r = combinatorial_rank(h)
        nonempty = [w for w in h if w]
        assert r <= len(nonempty)
        roots = {primitive_root(w)[0] for w in nonempty}
        assert (r <= 1) == (len(roots) <= 1)


def _rank_by_definition(h) -> int:
    """Search over all sets of words up to the total image length."""
    images = [w for w in h if w]
    if not images:
        return 0
    longest = max(len(w) for w in images)
    alphabet = sorted({a for w in images for a in w})
    cands = [w for k in range(1, longest + 1) for w in itertools.product(alphabet, repeat=k)]

    def fact(w, pieces):
        reach = {0}
        for i in range(len(w)):
            if i in reach:
                for p in pieces:
                    if w[i:i + len(p)] == p:
                        reach.add(i + len(p))
        return len(w) in reach

    for r in range(1, len(images) + 1):
        for pieces in itertools.combinations(cands, r):
            if all(fact(w, pieces) for w in images):
                return r
    return len(images)


@pytest.mark.parametrize("seed", range(40))
def test_rank_matches_definition(seed):
    rng = random.Random(seed)
    h = tuple(tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 4))) for _ in range(3))
    assert combinatorial_rank(h) == _rank_by_definition(h)


def test_rank_solutions_filter():
    sols = enumerate_solutions(XYZ, SearchBound.uniform(3, 2))
    twos = rank_solutions(sols, 2)
    assert twos and all(combinatorial_rank(h) == 2 for h in twos)


def test_independent_examples():
    b = SearchBound.uniform(2, 3)
    rep = check_independent([eq("x1x2 = x2x1"), eq("x1x2x2 = x2x2x1")], b)
    # both equations have the same solutions: commuting pairs
    assert rep.witnesses == (None, None) and not rep.confirmed
    rep = check_independent([eq("x1x2 = x2x1"), eq("x1 = x1", 2)], b)
    assert rep.witnesses[1] is None
    rep = check_independent([eq("x1x2 = x2x1")], b)
    assert rep.confirmed


def test_chain_examples():
    b = SearchBound.uniform(3, 3)
    e1, e2 = eq(E1_TEXT), eq(E2_TEXT)
    rep = check_chain([e1], b)
    assert rep.confirmed
    rep = check_chain([e1, e1], b)
    assert rep.witnesses[1] is None
    rep = check_chain([e1, e2, eq("x1x3 = x3x1")], b, required_rank=2)
    assert rep.witnesses[0] is not None
    found = sum(1 for w in rep.witnesses if w is not None)
    assert found <= 3


def test_exhaustive_small_agreement_with_residual():
    b = SearchBound.uniform(2, 2)
    universe = brute_force_solutions(EquationSystem((), 2), b)
    for e in all_equations(2, 4):
        sols = set(enumerate_solutions(e, b))
        assert sols == {h for h in universe if weqpeq_residual(e, h) == ZERO}
