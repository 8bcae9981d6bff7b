"""Words over positive-integer alphabets and their polynomial encodings.

A word is a tuple of positive integers.  Its encoding is the polynomial
whose coefficient of ``X**i`` is the letter at position ``i``; since no
letter is zero the map is injective.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import DomainError, InvalidAlphabetError, NotAWordImageError
from .polyring import ONE, ZERO, IntPoly, cyclic_quotient, exact_div

Word = tuple[int, ...]

EMPTY: Word = ()


def as_word(letters: Iterable[int]) -> Word:
    """Validate ``letters`` and return them as a :data:`Word`."""
    w = tuple(letters)
    for a in w:
        if not isinstance(a, int) or isinstance(a, bool) or a < 1:
            raise InvalidAlphabetError(f"letter {a!r} is not a positive integer")
    return w


def parse_word(text: str) -> Word:
    """Parse ``1212``, ``1 2 1 2`` or ``[1,12,3]``; empty text is the empty word."""
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise DomainError(f"unterminated bracketed word {text!r}")
        inner = s[1:-1].strip()
        if not inner:
            return EMPTY
        try:
            return as_word(int(tok) for tok in inner.split(","))
        except ValueError as exc:
            if isinstance(exc, InvalidAlphabetError):
                raise
            raise DomainError(f"bad letter in {text!r}") from None
    digits = s.replace(" ", "")
    if not digits.isdigit() and digits:
        raise DomainError(f"bad word text {text!r}")
    return as_word(int(ch) for ch in digits)


def format_word(w: Sequence[int]) -> str:
    """Digit-run form when every letter is below 10, bracketed list otherwise."""
    if all(a <= 9 for a in w):
        return "".join(str(a) for a in w)
    return "[" + ",".join(str(a) for a in w) + "]"


def power(w: Sequence[int], k: int) -> Word:
    return tuple(w) * k


# -- encoding -------------------------------------------------------------

def encode(w: Sequence[int]) -> IntPoly:
    """The polynomial ``w[0] + w[1] X + ... + w[n-1] X^(n-1)``."""
    return IntPoly._raw(dict(enumerate(as_word(w))))


def decode(p: IntPoly) -> Word:
    """Inverse of :func:`encode`."""
    coeffs = p.coefficients()
    for i, c in enumerate(coeffs):
        if c < 1:
            raise NotAWordImageError(
                f"coefficient {c} at X^{i} of {p} is not a letter"
            )
    return tuple(coeffs)


def encode_power(w: Sequence[int], k: int) -> IntPoly:
    """Encoding of ``w**k`` from ``P(w) (X^(k|w|) - 1) / (X^|w| - 1)``."""
    w = as_word(w)
    if k < 0:
        raise DomainError("negative exponent")
    if k == 0:
        return ZERO
    if not w:
        raise DomainError("power formula undefined for the empty word")
    n = len(w)
    numer = encode(w) * (IntPoly.monomial(k * n) - ONE)
    return exact_div(numer, IntPoly.monomial(n) - ONE)


# -- primitivity ----------------------------------------------------------

def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def primitive_root(w: Sequence[int]) -> tuple[Word, int]:
    """The primitive root ``u`` of ``w`` and the exponent ``k`` with ``u**k == w``."""
    w = as_word(w)
    if not w:
        raise DomainError("the empty word has no primitive root")
    n = len(w)
    for d in _divisors(n):
        if w[:d] * (n // d) == w:
            return w[:d], n // d
    raise AssertionError("unreachable")


def is_primitive(w: Sequence[int]) -> bool:
    return primitive_root(w)[1] == 1


# -- classical checks -----------------------------------------------------

@dataclass(frozen=True)
class FineWilfReport:
    bound: int
    common_prefix_len: int
    applies: bool
    roots_equal: bool


def _power_prefix(w: Word, length: int) -> Word:
    reps = -(-length // len(w))
    return (w * reps)[:length]


def fine_wilf_check(u: Sequence[int], v: Sequence[int]) -> FineWilfReport:
    """Compare ``u^inf`` and ``v^inf`` on their first ``|u|+|v|-gcd`` letters."""
    u, v = as_word(u), as_word(v)
    if not u or not v:
        raise DomainError("Fine-Wilf check needs nonempty words")
    bound = len(u) + len(v) - gcd(len(u), len(v))
    pu, pv = _power_prefix(u, bound), _power_prefix(v, bound)
    common = 0
    while common < bound and pu[common] == pv[common]:
        common += 1
    applies = common >= bound
    roots_equal = primitive_root(u)[0] == primitive_root(v)[0]
    return FineWilfReport(bound, common, applies, roots_equal)


@dataclass(frozen=True)
class CommutationReport:
    rho_equal: bool
    all_equal_length_products_equal: bool
    nontrivial_relation_exists: bool
    rational_encodings_equal: bool

    @property
    def consistent(self) -> bool:
        return len({self.rho_equal, self.all_equal_length_products_equal,
                    self.nontrivial_relation_exists,
                    self.rational_encodings_equal}) == 1


def _products(u: Word, v: Word, max_factors: int):
    for k in range(max_factors + 1):
        for choice in itertools.product((u, v), repeat=k):
            yield sum(choice, ())


def commutation_report(u: Sequence[int], v: Sequence[int], max_factors: int = 4) -> CommutationReport:
    """Evaluate the four equivalent commutation conditions separately.

    Products over ``{u, v}`` are checked up to ``max_factors`` factors.
    """
    u, v = as_word(u), as_word(v)
    if not u or not v:
        raise DomainError("commutation check needs nonempty words")
    rho = primitive_root(u)[0] == primitive_root(v)[0]

    by_length: dict[int, Word] = {}
    all_equal = True
    for prod in _products(u, v, max_factors):
        seen = by_length.setdefault(len(prod), prod)
        if seen != prod:
            all_equal = False
            break

    relation = u + v == v + u

    x_u = IntPoly.monomial(len(u)) - ONE
    x_v = IntPoly.monomial(len(v)) - ONE
    rational = encode(u) * x_v == encode(v) * x_u
    return CommutationReport(rho, all_equal, relation, rational)
