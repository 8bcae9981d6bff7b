from __future__ import annotations

import random

import pytest

from _corpus import negative_instance, positive_instance
from wordpoly.errors import DomainError, LengthsIncompatibleError
from wordpoly.periodicity import PeriodicityInstance, expand, group_coefficients, implies_all
from wordpoly.words import encode

EQUAL = PeriodicityInstance(s=((1,), ()), u=((2, 1),), t=((), (1,)), v=((1, 2),))


def test_expand_examples():
    assert expand(EQUAL, 2) == ((1, 2, 1, 2, 1), (1, 2, 1, 2, 1))
    assert expand(EQUAL, 0) == ((1,), (1,))
    odd = PeriodicityInstance(((1,), ()), ((1,),), ((1, 1), ()), ((1,),))
    assert expand(odd, 0) == ((1,), (1, 1))
    with pytest.raises(DomainError):
        expand(EQUAL, -1)


def test_validation():
    with pytest.raises(DomainError):
        PeriodicityInstance(((),), (), ((), ()), ((1,),))
    with pytest.raises(DomainError):
        PeriodicityInstance(((), ()), ((),), ((), ()), ((1,),))
    with pytest.raises(DomainError):
        PeriodicityInstance(((),), ((1,),), ((), ()), ((1,),))


def test_grouped_coefficients_examples():
    g = group_coefficients(EQUAL)
    assert g.vanishes
    ones = PeriodicityInstance(((), (1,)), ((1,),), ((), (1, 1)), ((1,),))
    assert not group_coefficients(ones).vanishes
    with pytest.raises(LengthsIncompatibleError):
        group_coefficients(PeriodicityInstance(((), ()), ((1,),), ((), ()), ((1, 1),)))


def test_implies_all_examples():
    r = implies_all(EQUAL, {0, 1})
    assert r.holds_on_values and r.holds_for_all is True and r.certificate is not None
    only_one = PeriodicityInstance(((), (1,)), ((1,),), ((), ()), ((1, 1),))
    r = implies_all(only_one, {1})
    assert r.holds_on_values and r.holds_for_all is None
    never = PeriodicityInstance(((), (1,)), ((1,),), ((), (1, 1)), ((1,),))
    r = implies_all(never, {0, 1})
    assert not r.holds_on_values and r.holds_for_all is False


@pytest.mark.parametrize("seed", range(60))
def test_grouping_matches_direct_difference(seed):
    rng = random.Random(seed)
    inst = positive_instance(rng) if seed % 2 else negative_instance(rng)
    try:
        g = group_coefficients(inst)
    except LengthsIncompatibleError:
        return
    assert len(g.k_set) <= inst.n - 1
    assert len(g.groups) <= inst.m + inst.n
    for i in range(11):
        a, b = expand(inst, i)
        assert g.evaluate(i) == g.denominator * (encode(a) - encode(b))
        assert g.difference(i) == encode(a) - encode(b)


@pytest.mark.parametrize("seed", range(40))
def test_positive_instances_certified(seed):
    rng = random.Random(seed)
    inst = positive_instance(rng)
    values = rng.sample(range(21), inst.m + inst.n)
    r = implies_all(inst, values)
    assert r.holds_for_all is True
    for i in range(21):
        a, b = expand(inst, i)
        assert a == b


@pytest.mark.parametrize("seed", range(40))
def test_negative_instances_rejected(seed):
    rng = random.Random(10_000 + seed)
    inst = negative_instance(rng)
    values = rng.sample(range(21), inst.m + inst.n)
    r = implies_all(inst, values)
    assert not r.holds_on_values
    assert r.holds_for_all is False


def test_nonconsecutive_values():
    r = implies_all(EQUAL, {3, 17})
    assert r.holds_for_all is True
