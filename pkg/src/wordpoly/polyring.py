"""Exact univariate integer polynomials and polynomial matrices.

Polynomials are sparse maps ``degree -> coefficient`` with Python integers
as coefficients, so nothing ever overflows or rounds.  Matrix rank and
determinant use fraction-free (Bareiss) elimination: every intermediate
entry is a minor of the input, and each division is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import DomainError, ShapeError

Number = Union[int, Fraction]


class IntPoly:
    """A polynomial in ``X`` with integer coefficients.

    Instances are immutable and hashable.  Zero coefficients are never
    stored, so two equal polynomials always have equal term maps.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean: dict[int, int] = {}
        if terms:
            for deg, c in terms.items():
                if not isinstance(deg, int) or deg < 0:
                    raise DomainError(f"invalid degree {deg!r}")
                if not isinstance(c, int):
                    raise DomainError(f"coefficient {c!r} is not an integer")
                if c:
                    clean[deg] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "IntPoly":
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "IntPoly":
        """Build from a dense coefficient list, constant term first."""
        return cls({i: c for i, c in enumerate(coeffs) if c})

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPoly":
        return cls({degree: coeff})

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls({0: c})

    # -- inspection -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree of the polynomial; ``-1`` for the zero polynomial."""
        return max(self._terms) if self._terms else -1

    @property
    def low_degree(self) -> int:
        return min(self._terms) if self._terms else -1

    def coeff(self, degree: int) -> int:
        return self._terms.get(degree, 0)

    def terms(self) -> list[tuple[int, int]]:
        """``(degree, coefficient)`` pairs in ascending degree."""
        return sorted(self._terms.items())

    def coefficients(self) -> list[int]:
        """Dense coefficient list, constant term first."""
        return [self._terms.get(i, 0) for i in range(self.degree + 1)]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "IntPoly | int") -> "IntPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for d, c in other._terms.items():
            v = out.get(d, 0) + c
            if v:
                out[d] = v
            else:
                out.pop(d, None)
        return IntPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly._raw({d: -c for d, c in self._terms.items()})

    def __sub__(self, other: "IntPoly | int") -> "IntPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "IntPoly | int") -> "IntPoly":
        return (-self) + other

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, int] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                d = d1 + d2
                out[d] = out.get(d, 0) + c1 * c2
        return IntPoly._raw({d: c for d, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        if k < 0:
            raise DomainError("negative exponent")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "IntPoly":
        """Multiply by ``X**k``."""
        if k < 0:
            raise DomainError("negative shift")
        return IntPoly._raw({d + k: c for d, c in self._terms.items()})

    def __call__(self, x: Number) -> Number:
        total: Number = 0
        for d, c in self._terms.items():
            total += c * x**d
        return total

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPoly.constant(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"IntPoly({str(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        return parse_poly(text)


def _coerce(value: object) -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    if isinstance(value, int):
        return IntPoly.constant(value)
    return NotImplemented  # type: ignore[return-value]


ZERO = IntPoly()
ONE = IntPoly.constant(1)
X = IntPoly.monomial(1)


# -- text form ------------------------------------------------------------

def _monomial_text(deg: int, coeff: int, variable: str) -> str:
    body = "" if deg == 0 else (variable if deg == 1 else f"{variable}^{deg}")
    mag = abs(coeff)
    if not body:
        return str(mag)
    return body if mag == 1 else f"{mag}*{body}"


def format_poly(p: IntPoly, variable: str = "X") -> str:
    """Canonical text: ascending degree, e.g. ``1 + 2*X - X^3``."""
    terms = p.terms()
    if not terms:
        return "0"
    parts = []
    for i, (deg, c) in enumerate(terms):
        mono = _monomial_text(deg, c, variable)
        if i == 0:
            parts.append(mono if c > 0 else f"-{mono}")
        else:
            parts.append(f"+ {mono}" if c > 0 else f"- {mono}")
    return " ".join(parts)


_TERM = re.compile(r"([+-]?)(\d*)\*?(X(?:\^(\d+))?)?")


def parse_poly(text: str) -> IntPoly:
    """Inverse of :func:`format_poly` (also accepts unspaced input)."""
    s = text.replace(" ", "")
    if not s:
        raise DomainError("empty polynomial text")
    terms: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise DomainError(f"cannot parse polynomial at {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        if pos > 0 and not m.group(1):
            raise DomainError(f"missing sign before {s[pos:]!r}")
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            deg = int(m.group(4)) if m.group(4) else 1
        else:
            deg = 0
        terms[deg] = terms.get(deg, 0) + sign * c
        pos = m.end()
    return IntPoly(terms)


# -- division -------------------------------------------------------------

def _qdivmod(p: Mapping[int, Fraction], d: Mapping[int, Fraction]):
    rem = {k: v for k, v in p.items() if v}
    quo: dict[int, Fraction] = {}
    dd = max(d)
    lead = d[dd]
    while rem:
        top = max(rem)
        if top < dd:
            break
        factor = rem[top] / lead
        shift = top - dd
        quo[shift] = factor
        for k, v in d.items():
            nv = rem.get(k + shift, 0) - factor * v
            if nv:
                rem[k + shift] = nv
            else:
                rem.pop(k + shift, None)
    return quo, rem


def divmod_rational(p: IntPoly, d: IntPoly) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
    """Division with remainder over the rationals.

    Returns ``(quotient, remainder)`` as sparse ``degree -> Fraction`` maps.
    """
    if d.is_zero():
        raise DomainError("division by the zero polynomial")
    pf = {k: Fraction(v) for k, v in p.terms()}
    df = {k: Fraction(v) for k, v in d.terms()}
    return _qdivmod(pf, df)


def divides(d: IntPoly, p: IntPoly) -> bool:
    """True iff ``d`` divides ``p`` in Q[X]."""
    _, rem = divmod_rational(p, d)
    return not rem


def exact_div(p: IntPoly, d: IntPoly) -> IntPoly:
    """Quotient ``p / d`` in Z[X]; raises if the division is not exact."""
    if d.is_zero():
        raise DomainError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    if len(d) == 1:
        (dd, dc), = d.terms()
        out = {}
        for k, v in p.terms():
            q, r = divmod(v, dc)
            if r or k < dd:
                raise DomainError(f"{d} does not divide {p} exactly")
            out[k - dd] = q
        return IntPoly._raw(out)
    rem = dict(p._terms)
    dterms = d._terms
    dd = d.degree
    lead = dterms[dd]
    quo: dict[int, int] = {}
    while rem:
        top = max(rem)
        if top < dd:
            break
        factor, r = divmod(rem[top], lead)
        if r:
            raise DomainError(f"{d} does not divide {p} exactly")
        shift = top - dd
        quo[shift] = factor
        for k, v in dterms.items():
            nv = rem.get(k + shift, 0) - factor * v
            if nv:
                rem[k + shift] = nv
            else:
                rem.pop(k + shift, None)
    if rem:
        raise DomainError(f"{d} does not divide {p} exactly")
    return IntPoly._raw(quo)


def gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Greatest common divisor over Q, returned as a primitive integer
    polynomial with positive leading coefficient (0 if both are 0)."""
    fa = {k: Fraction(v) for k, v in a.terms()}
    fb = {k: Fraction(v) for k, v in b.terms()}
    while fb:
        _, r = _qdivmod(fa, fb)
        fa, fb = fb, r
    if not fa:
        return ZERO
    from math import gcd as igcd, lcm

    den = lcm(*(v.denominator for v in fa.values()))
    ints = {k: int(v * den) for k, v in fa.items()}
    g = igcd(*ints.values())
    sign = 1 if ints[max(ints)] > 0 else -1
    return IntPoly({k: sign * v // g for k, v in ints.items()})


def cyclic_quotient(a: int, n: int) -> IntPoly:
    """``(X^a - 1) / (X^n - 1) = 1 + X^n + X^2n + ... + X^(a-n)``."""
    if n < 1 or a < 1:
        raise DomainError("cyclic_quotient needs positive arguments")
    if a % n:
        raise DomainError(f"{n} does not divide {a}")
    return IntPoly._raw({k: 1 for k in range(0, a, n)})


def lowest_term(p: IntPoly) -> tuple[int, int]:
    """``(degree, coefficient)`` of the nonzero monomial of least degree."""
    if p.is_zero():
        raise DomainError("the zero polynomial has no lowest term")
    d = p.low_degree
    return d, p.coeff(d)


# -- matrices -------------------------------------------------------------

class PolyMatrix:
    """A rectangular matrix of :class:`IntPoly` entries."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[IntPoly | int]]):
        rows = [tuple(_as_poly(e) for e in row) for row in rows]
        if not rows or not rows[0]:
            raise ShapeError("a matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged matrix rows")
        self._rows = tuple(rows)
        self.nrows = len(rows)
        self.ncols = width

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple[IntPoly, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> IntPoly:
        i, j = ij
        return self._rows[i][j]

    def column(self, j: int) -> tuple[IntPoly, ...]:
        return tuple(r[j] for r in self._rows)

    def delete_columns(self, cols: Iterable[int]) -> "PolyMatrix":
        drop = set(cols)
        return PolyMatrix([[e for j, e in enumerate(r) if j not in drop] for r in self._rows])

    def evaluate(self, x: Number) -> list[list[Number]]:
        return [[e(x) for e in r] for r in self._rows]

    def to_strings(self) -> list[list[str]]:
        return [[str(e) for e in r] for r in self._rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.to_strings()!r})"


def _as_poly(e: IntPoly | int) -> IntPoly:
    if isinstance(e, IntPoly):
        return e
    if isinstance(e, int):
        return IntPoly.constant(e)
    raise DomainError(f"matrix entry {e!r} is not a polynomial")


def _bareiss(rows: list[list[IntPoly]]) -> tuple[list[list[IntPoly]], int, int, list[int]]:
    """Fraction-free row echelon form.

    Pivot rule: among candidate rows pick the entry of least degree, ties
    broken by row index.  Returns (matrix, rank, swap parity, pivot cols).
    """
    a = [list(r) for r in rows]
    m = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    prev = ONE
    swaps = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == m:
            break
        best = None
        for i in range(r, m):
            e = a[i][c]
            if e and (best is None or e.degree < a[best][c].degree):
                best = i
        if best is None:
            continue
        if best != r:
            a[r], a[best] = a[best], a[r]
            swaps += 1
        piv = a[r][c]
        prow = a[r]
        for i in range(r + 1, m):
            row = a[i]
            lead = row[c]
            for j in range(c + 1, ncols):
                row[j] = exact_div(piv * row[j] - lead * prow[j], prev)
            row[c] = ZERO
        # entries left of the pivot in lower rows are already zero
        prev = piv
        pivots.append(c)
        r += 1
    return a, r, swaps, pivots


def rank(m: PolyMatrix) -> int:
    """Rank over the field of rational functions Q(X)."""
    _, r, _, _ = _bareiss([list(row) for row in m.rows])
    return r


def det(m: PolyMatrix) -> IntPoly:
    """Exact determinant of a square polynomial matrix."""
    if m.nrows != m.ncols:
        raise ShapeError(f"determinant of a {m.nrows}x{m.ncols} matrix")
    a, r, swaps, _ = _bareiss([list(row) for row in m.rows])
    if r < m.nrows:
        return ZERO
    d = a[-1][-1]
    return -d if swaps % 2 else d
