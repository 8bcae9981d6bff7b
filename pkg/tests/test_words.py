from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _corpus import all_words
from wordpoly.errors import DomainError, InvalidAlphabetError, NotAWordImageError
from wordpoly.polyring import ZERO, IntPoly, cyclic_quotient, divides, format_poly
from wordpoly.words import (
    commutation_report,
    decode,
    encode,
    encode_power,
    fine_wilf_check,
    format_word,
    is_primitive,
    parse_word,
    power,
    primitive_root,
)

words = st.lists(st.integers(1, 9), max_size=8).map(tuple)


@pytest.mark.parametrize(
    "w, text",
    [((1, 2, 1, 2), "1 + 2*X + X^2 + 2*X^3"), ((), "0"), ((1, 2, 2, 1), "1 + 2*X + 2*X^2 + X^3")],
)
def test_encode_examples(w, text):
    assert format_poly(encode(w)) == text
    assert decode(encode(w)) == w


def test_encode_rejects_bad_letters():
    with pytest.raises(InvalidAlphabetError):
        encode((1, 0))
    with pytest.raises(InvalidAlphabetError):
        encode((-3,))


def test_decode_rejects_gaps_and_nonpositive():
    with pytest.raises(NotAWordImageError):
        decode(IntPoly({0: 1, 2: 1}))
    with pytest.raises(NotAWordImageError):
        decode(IntPoly({0: 1, 1: -1}))
    assert decode(ZERO) == ()


def test_encode_injective_small():
    seen = {}
    for w in all_words(4, alphabet=9):
        p = encode(w)
        assert p not in seen
        seen[p] = w


@given(words, words)
def test_injectivity_random(u, v):
    assert (encode(u) == encode(v)) == (u == v)


@given(st.lists(words, max_size=5))
def test_concatenation_identity(parts):
    total = ZERO
    offset = 0
    for w in parts:
        total = total + encode(w).shift(offset)
        offset += len(w)
    assert encode(sum(parts, ())) == total


@pytest.mark.parametrize("w", all_words(4, min_len=1))
def test_power_identity(w):
    for k in range(5):
        assert encode_power(w, k) == encode(power(w, k))


def test_encode_power_examples():
    assert encode_power((1, 2), 2) == encode((1, 2, 1, 2))
    assert encode_power((1, 2), 0) == ZERO
    assert encode_power((1,), 3) == encode((1, 1, 1))
    with pytest.raises(DomainError):
        encode_power((), 2)


@pytest.mark.parametrize(
    "w, root, k",
    [((1, 2, 1, 2), (1, 2), 2), ((1, 2), (1, 2), 1), ((1, 1, 1), (1,), 3), ((1, 2, 1), (1, 2, 1), 1)],
)
def test_primitive_root_examples(w, root, k):
    assert primitive_root(w) == (root, k)


def test_primitive_root_empty():
    with pytest.raises(DomainError):
        primitive_root(())


def _brute_root(w):
    for d in range(1, len(w) + 1):
        if len(w) % d == 0 and w[:d] * (len(w) // d) == w:
            return w[:d], len(w) // d


@pytest.mark.parametrize("w", all_words(8, min_len=1))
def test_primitive_root_matches_brute_force(w):
    assert primitive_root(w) == _brute_root(w)


def test_primitive_words_are_not_divisible():
    for w in all_words(8, min_len=1):
        root, k = primitive_root(w)
        p = encode(w)
        n = len(w)
        if k == 1:
            for d in range(1, n):
                if n % d == 0:
                    assert not divides(cyclic_quotient(n, d), p), w
        else:
            assert divides(cyclic_quotient(n, len(root)), p)


@pytest.mark.parametrize(
    "u, v, bound, prefix, applies",
    [((1, 2), (1, 2, 1, 2), 4, 4, True), ((1,), (1,), 1, 1, True), ((1, 2), (2, 1), 2, 0, False)],
)
def test_fine_wilf_examples(u, v, bound, prefix, applies):
    r = fine_wilf_check(u, v)
    assert (r.bound, r.common_prefix_len, r.applies) == (bound, prefix, applies)
    if applies:
        assert r.roots_equal


def test_fine_wilf_rejects_empty():
    with pytest.raises(DomainError):
        fine_wilf_check((), (1,))


def test_fine_wilf_exhaustive():
    ws = all_words(5, min_len=1)
    for u, v in itertools.product(ws, ws):
        r = fine_wilf_check(u, v)
        if r.applies:
            assert r.roots_equal, (u, v)


def test_fine_wilf_bound_is_sharp_somewhere():
    r = fine_wilf_check((1, 2, 1), (1, 2))
    assert not r.roots_equal
    assert r.common_prefix_len == r.bound - 1


@pytest.mark.parametrize(
    "u, v, value",
    [((1, 2), (1, 2, 1, 2), True), ((1,), (2,), False), ((1,), (1,), True)],
)
def test_commutation_examples(u, v, value):
    r = commutation_report(u, v)
    assert r.consistent
    assert r.rho_equal is value


def test_commutation_exhaustive():
    ws = all_words(4, min_len=1)
    for u, v in itertools.product(ws, ws):
        assert commutation_report(u, v).consistent, (u, v)


def test_commutation_rejects_empty():
    with pytest.raises(DomainError):
        commutation_report((1,), ())


@pytest.mark.parametrize(
    "text, word",
    [("1212", (1, 2, 1, 2)), ("1 2 1", (1, 2, 1)), ("[1,12,3]", (1, 12, 3)), ("", ()), ("[]", ())],
)
def test_parse_word(text, word):
    assert parse_word(text) == word


@given(st.lists(st.integers(1, 30), max_size=6).map(tuple))
def test_word_text_round_trip(w):
    assert parse_word(format_word(w)) == w


def test_parse_word_errors():
    for bad in ("12a", "[1,2", "[0]", "1,2"):
        with pytest.raises(DomainError):
            parse_word(bad)


def test_is_primitive_counts():
    # number of primitive binary words of length n: sum over d | n of mu(n/d) 2^d
    counts = {1: 2, 2: 2, 3: 6, 4: 12, 5: 30, 6: 54}
    for n, expected in counts.items():
        got = sum(1 for w in itertools.product((1, 2), repeat=n) if is_primitive(w))
        assert got == expected
