"""Generalized polynomials with linear-form exponents.

A linear form ``a1 X1 + ... + an Xn`` with nonnegative integer coefficients
is stored as the tuple ``(a1, ..., an)``.  A :class:`GenPoly` is a finite
integer combination of monomials ``X^p`` where ``p`` is such a form.
Substituting a length type ``L`` for ``(X1, ..., Xn)`` turns it into an
ordinary :class:`~wordpoly.polyring.IntPoly`.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, ShapeError
from .polyring import IntPoly

LinearForm = tuple[int, ...]


def form(coeffs: Iterable[int]) -> LinearForm:
    f = tuple(coeffs)
    if any(not isinstance(a, int) or a < 0 for a in f):
        raise DomainError(f"linear form {f!r} has a negative coefficient")
    return f


def unit_form(n: int, i: int) -> LinearForm:
    """The form ``X_(i+1)`` (``i`` is 0-based)."""
    return tuple(1 if j == i else 0 for j in range(n))


def form_value(p: LinearForm, lengths: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(p, lengths))


def precedes(p: LinearForm, q: LinearForm) -> bool:
    """``p`` is componentwise at most ``q``, hence ``p(L) <= q(L)`` on all ``L >= 0``."""
    if len(p) != len(q):
        raise ShapeError(f"forms of dimension {len(p)} and {len(q)}")
    return all(a <= b for a, b in zip(p, q))


def format_form(p: LinearForm) -> str:
    parts = []
    for i, a in enumerate(p, start=1):
        if a:
            parts.append(f"X{i}" if a == 1 else f"{a}X{i}")
    return "+".join(parts) if parts else "0"


_FORM_TERM = re.compile(r"(\d*)X(\d+)")


def parse_form(text: str, n: int) -> LinearForm:
    s = text.replace(" ", "")
    coeffs = [0] * n
    if s == "0":
        return tuple(coeffs)
    for part in s.split("+"):
        m = _FORM_TERM.fullmatch(part)
        if not m:
            raise DomainError(f"bad linear form {text!r}")
        idx = int(m.group(2)) - 1
        if not 0 <= idx < n:
            raise ShapeError(f"X{idx + 1} outside dimension {n}")
        coeffs[idx] += int(m.group(1)) if m.group(1) else 1
    return tuple(coeffs)


class GenPoly:
    """Element of the monoid ring of linear forms in ``n`` variables."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[LinearForm, int] | None = None):
        self.n = n
        clean: dict[LinearForm, int] = {}
        if terms:
            for p, c in terms.items():
                p = form(p)
                if len(p) != n:
                    raise ShapeError(f"form {p} in a dimension-{n} ring")
                if c:
                    clean[p] = clean.get(p, 0) + c
                    if not clean[p]:
                        del clean[p]
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict[LinearForm, int]) -> "GenPoly":
        g = cls.__new__(cls)
        g.n = n
        g._terms = terms
        return g

    @classmethod
    def monomial(cls, p: Sequence[int], coeff: int = 1) -> "GenPoly":
        p = form(p)
        return cls(len(p), {p: coeff})

    @classmethod
    def zero(cls, n: int) -> "GenPoly":
        return cls._raw(n, {})

    def terms(self) -> list[tuple[LinearForm, int]]:
        """Terms in canonical (lexicographic) order of exponent vectors."""
        return sorted(self._terms.items())

    def coeff(self, p: LinearForm) -> int:
        return self._terms.get(tuple(p), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: "GenPoly") -> None:
        if not isinstance(other, GenPoly):
            raise TypeError(f"cannot combine GenPoly with {type(other).__name__}")
        if other.n != self.n:
            raise ShapeError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "GenPoly") -> "GenPoly":
        self._check(other)
        out = dict(self._terms)
        for p, c in other._terms.items():
            v = out.get(p, 0) + c
            if v:
                out[p] = v
            else:
                out.pop(p, None)
        return GenPoly._raw(self.n, out)

    def __neg__(self) -> "GenPoly":
        return GenPoly._raw(self.n, {p: -c for p, c in self._terms.items()})

    def __sub__(self, other: "GenPoly") -> "GenPoly":
        self._check(other)
        return self + (-other)

    def __mul__(self, other: "GenPoly | int") -> "GenPoly":
        if isinstance(other, int):
            return GenPoly._raw(self.n, {p: c * other for p, c in self._terms.items() if c * other})
        self._check(other)
        out: dict[LinearForm, int] = {}
        for p1, c1 in self._terms.items():
            for p2, c2 in other._terms.items():
                p = tuple(a + b for a, b in zip(p1, p2))
                out[p] = out.get(p, 0) + c1 * c2
        return GenPoly._raw(self.n, {p: c for p, c in out.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GenPoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def evaluate_at(self, lengths: Sequence[int]) -> IntPoly:
        return evaluate_at(self, lengths)

    def __repr__(self) -> str:
        return f"GenPoly({self.n}, {str(self)!r})"

    def __str__(self) -> str:
        return format_genpoly(self)


def gp_arith(a: GenPoly, b: GenPoly, op: str) -> GenPoly:
    """Ring operation ``op`` in ``{"add", "sub", "mul"}``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise DomainError(f"unknown operation {op!r}")


def evaluate_at(g: GenPoly, lengths: Sequence[int]) -> IntPoly:
    """Substitute the length type ``lengths`` for ``(X1, ..., Xn)``.

    Distinct forms may take the same value; their coefficients add up.
    """
    if len(lengths) != g.n:
        raise ShapeError(f"length type of dimension {len(lengths)} for a dimension-{g.n} polynomial")
    if any(x < 0 for x in lengths):
        raise DomainError(f"negative entry in length type {tuple(lengths)}")
    out: dict[int, int] = {}
    for p, c in g._terms.items():
        d = form_value(p, lengths)
        out[d] = out.get(d, 0) + c
    return IntPoly({d: c for d, c in out.items() if c})


def split_signs(g: GenPoly) -> tuple[list[LinearForm], list[LinearForm]]:
    """Exponent lists of positive and negative monomials, repeated by multiplicity."""
    pos: list[LinearForm] = []
    neg: list[LinearForm] = []
    for p, c in g.terms():
        (pos if c > 0 else neg).extend([p] * abs(c))
    return pos, neg


def format_genpoly(g: GenPoly) -> str:
    """Text form such as ``1 - X^{X3}`` or ``2*X^{2X1+X2}``."""
    terms = g.terms()
    if not terms:
        return "0"
    parts = []
    for i, (p, c) in enumerate(terms):
        body = "" if not any(p) else f"X^{{{format_form(p)}}}"
        mag = abs(c)
        if not body:
            mono = str(mag)
        else:
            mono = body if mag == 1 else f"{mag}*{body}"
        if i == 0:
            parts.append(mono if c > 0 else f"-{mono}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {mono}")
    return " ".join(parts)


_GP_TERM = re.compile(r"([+-]?)(\d*)\*?(?:X\^\{([^}]*)\})?")


def parse_genpoly(text: str, n: int) -> GenPoly:
    """Inverse of :func:`format_genpoly`."""
    s = text.replace(" ", "")
    if s == "0":
        return GenPoly.zero(n)
    terms: dict[LinearForm, int] = {}
    pos = 0
    while pos < len(s):
        m = _GP_TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and m.group(3) is None):
            raise DomainError(f"cannot parse generalized polynomial at {s[pos:]!r}")
        if pos > 0 and not m.group(1):
            raise DomainError(f"missing sign before {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        p = parse_form(m.group(3), n) if m.group(3) is not None else (0,) * n
        terms[p] = terms.get(p, 0) + sign * c
        pos = m.end()
    return GenPoly(n, terms)
