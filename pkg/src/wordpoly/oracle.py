"""Brute-force ground truth for small instances.

Solutions are enumerated one length type at a time.  At a fixed length
type an equation only identifies letter positions with each other, so the
positions are merged with a union-find and every assignment of letters to
the resulting classes is a solution.  This never touches polynomials,
which keeps it independent of the criteria it is used to check.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .equations import (
    EquationSystem,
    LengthType,
    Morphism,
    WordEquation,
    apply,
    is_solution,
)
from .errors import BudgetExceededError, DomainError, ShapeError
from .words import Word, as_word

DEFAULT_CAP = 10**7
RANK_LENGTH_CAP = 64


@dataclass(frozen=True)
class SearchBound:
    """Componentwise maximum image lengths and alphabet ``{1..alphabet_size}``."""

    max_lengths: LengthType
    alphabet_size: int = 2

    def __post_init__(self):
        object.__setattr__(self, "max_lengths", tuple(self.max_lengths))
        if self.alphabet_size < 1:
            raise DomainError("alphabet size must be positive")
        if any(x < 0 for x in self.max_lengths):
            raise DomainError("negative length bound")

    @classmethod
    def uniform(cls, n: int, max_length: int, alphabet_size: int = 2) -> "SearchBound":
        return cls((max_length,) * n, alphabet_size)


def length_types(max_lengths: Sequence[int]) -> Iterator[LengthType]:
    """All ``L <= max_lengths`` componentwise, in lexicographic order."""
    return itertools.product(*(range(m + 1) for m in max_lengths))


def _as_system(system, n: Optional[int] = None) -> EquationSystem:
    if isinstance(system, EquationSystem):
        return system
    if isinstance(system, WordEquation):
        return EquationSystem((system,), system.n)
    eqs = tuple(system)
    if not eqs:
        if n is None:
            raise ShapeError("empty system needs an explicit number of unknowns")
        return EquationSystem((), n)
    return EquationSystem.of(eqs)


def position_classes(system: EquationSystem, lengths: Sequence[int]) -> Optional[list[list[int]]]:
    """Classes of letter positions forced equal at ``lengths``.

    Positions of all images laid end to end are numbered ``0 .. sum(L)-1``.
    Returns ``None`` when some equation has sides of different length.
    """
    offsets = list(itertools.accumulate(lengths, initial=0))
    total = offsets[-1]
    parent = list(range(total))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def expand(side: Sequence[int]) -> list[int]:
        out: list[int] = []
        for x in side:
            out.extend(range(offsets[x], offsets[x] + lengths[x]))
        return out

    for eq in system:
        left, right = expand(eq.lhs), expand(eq.rhs)
        if len(left) != len(right):
            return None
        for a, b in zip(left, right):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for p in range(total):
        groups.setdefault(find(p), []).append(p)
    return sorted(groups.values())


def _cell(args) -> list[Morphism]:
    system, lengths, k = args
    return solutions_at(system, lengths, k)


def solutions_at(system, lengths: Sequence[int], alphabet_size: int = 2) -> list[Morphism]:
    """All solutions of exact length type ``lengths`` over ``{1..alphabet_size}``."""
    system = _as_system(system, len(lengths))
    if len(lengths) != system.n:
        raise ShapeError(f"length type of size {len(lengths)} for {system.n} unknowns")
    classes = position_classes(system, lengths)
    if classes is None:
        return []
    offsets = list(itertools.accumulate(lengths, initial=0))
    total = offsets[-1]
    owner = [0] * total
    for ci, cls in enumerate(classes):
        for p in cls:
            owner[p] = ci
    out = []
    letters = range(1, alphabet_size + 1)
    for assignment in itertools.product(letters, repeat=len(classes)):
        flat = [assignment[owner[p]] for p in range(total)]
        out.append(tuple(tuple(flat[offsets[i]:offsets[i + 1]]) for i in range(len(lengths))))
    out.sort()
    return out


def estimate(system, bound: SearchBound, exact: bool = False) -> int:
    """Number of candidate morphisms :func:`enumerate_solutions` would generate."""
    system = _as_system(system, len(bound.max_lengths))
    cells = [bound.max_lengths] if exact else length_types(bound.max_lengths)
    total = 0
    for lengths in cells:
        classes = position_classes(system, lengths)
        if classes is not None:
            total += bound.alphabet_size ** len(classes)
    return total


def enumerate_solutions(
    system,
    bound: SearchBound,
    *,
    exact: bool = False,
    jobs: int = 1,
    cap: int = DEFAULT_CAP,
) -> list[Morphism]:
    """Every solution with image lengths at most ``bound.max_lengths``.

    With ``exact=True`` only the length type ``bound.max_lengths`` itself is
    searched.  Output is sorted by length type, then by image contents, and
    does not depend on ``jobs``.
    """
    system = _as_system(system, len(bound.max_lengths))
    if len(bound.max_lengths) != system.n:
        raise ShapeError(f"search bound of size {len(bound.max_lengths)} for {system.n} unknowns")
    count = estimate(system, bound, exact)
    if count > cap:
        raise BudgetExceededError(f"{count} candidate morphisms exceed the cap of {cap}")
    cells = [tuple(bound.max_lengths)] if exact else list(length_types(bound.max_lengths))
    work = [(system, lengths, bound.alphabet_size) for lengths in cells]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_cell, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        chunks = [_cell(w) for w in work]
    out = [h for chunk in chunks for h in chunk]
    out.sort(key=lambda h: (tuple(len(w) for w in h), h))
    return out


# -- combinatorial rank -----------------------------------------------------

def _factors(images: Sequence[Word]) -> list[Word]:
    seen = set()
    for w in images:
        for i in range(len(w)):
            for j in range(i + 1, len(w) + 1):
                seen.add(w[i:j])
    return sorted(seen, key=lambda f: (len(f), f))


def _factorizes(w: Word, pieces: Sequence[Word]) -> bool:
    n = len(w)
    reach = [False] * (n + 1)
    reach[0] = True
    for i in range(n):
        if not reach[i]:
            continue
        for p in pieces:
            if w[i:i + len(p)] == p:
                reach[i + len(p)] = True
    return reach[n]


@lru_cache(maxsize=1 << 16)
def _rank(images: tuple[Word, ...]) -> int:
    distinct = sorted(set(images), key=lambda f: (len(f), f))
    if not distinct:
        return 0
    factors = _factors(distinct)
    first = distinct[0]
    prefixes = [first[:i] for i in range(1, len(first) + 1)]
    for r in range(1, len(distinct)):
        # some element of A must be a prefix of the shortest image
        for head in prefixes:
            others = [f for f in factors if f != head]
            for rest in itertools.combinations(others, r - 1):
                pieces = (head,) + rest
                if all(_factorizes(w, pieces) for w in distinct):
                    return r
    return len(distinct)


def combinatorial_rank(h: Sequence[Sequence[int]], cap: int = RANK_LENGTH_CAP) -> int:
    """Least ``r`` such that all images lie in ``A*`` for an ``r``-element set ``A``.

    Candidate sets are drawn from factors of the images; every element of a
    minimal ``A`` occurs in some factorization, so nothing is missed.
    """
    images = tuple(as_word(w) for w in h)
    total = sum(len(w) for w in images)
    if total > cap:
        raise BudgetExceededError(f"total image length {total} exceeds rank cap {cap}")
    return _rank(tuple(w for w in images if w))


# -- independence and chains ------------------------------------------------

@dataclass(frozen=True)
class WitnessReport:
    """Per-equation witnesses; ``None`` means none was found within the bound."""

    witnesses: tuple[Optional[Morphism], ...]
    bound: SearchBound
    required_rank: Optional[int] = None

    @property
    def confirmed(self) -> bool:
        return all(w is not None for w in self.witnesses)


def _first_violation(
    base: EquationSystem,
    target: WordEquation,
    bound: SearchBound,
    required_rank: Optional[int],
    jobs: int,
    cap: int,
) -> Optional[Morphism]:
    for h in enumerate_solutions(base, bound, jobs=jobs, cap=cap):
        if apply(h, target.lhs) == apply(h, target.rhs):
            continue
        if required_rank is not None and combinatorial_rank(h) != required_rank:
            continue
        return h
    return None


def check_independent(system, bound: SearchBound, *, jobs: int = 1, cap: int = DEFAULT_CAP) -> WitnessReport:
    """For each equation, a morphism solving all the others but not it."""
    system = _as_system(system)
    witnesses = []
    for i, eq in enumerate(system):
        others = EquationSystem(system.equations[:i] + system.equations[i + 1:], system.n)
        witnesses.append(_first_violation(others, eq, bound, None, jobs, cap))
    return WitnessReport(tuple(witnesses), bound)


def check_chain(
    system,
    bound: SearchBound,
    *,
    required_rank: Optional[int] = None,
    jobs: int = 1,
    cap: int = DEFAULT_CAP,
) -> WitnessReport:
    """For each position, a morphism solving every preceding equation but not
    this one; optionally only witnesses of combinatorial rank ``required_rank``."""
    system = _as_system(system)
    witnesses = []
    for i, eq in enumerate(system):
        before = EquationSystem(system.equations[:i], system.n)
        witnesses.append(_first_violation(before, eq, bound, required_rank, jobs, cap))
    return WitnessReport(tuple(witnesses), bound, required_rank)


def rank_solutions(solutions: Sequence[Morphism], r: int) -> list[Morphism]:
    """The members of ``solutions`` whose combinatorial rank is exactly ``r``."""
    return [h for h in solutions if combinatorial_rank(h) == r]


def brute_force_solutions(system, bound: SearchBound) -> list[Morphism]:
    """Literal enumeration of every morphism within ``bound``; slow, used to
    cross-check :func:`enumerate_solutions` on tiny cases."""
    system = _as_system(system, len(bound.max_lengths))
    letters = range(1, bound.alphabet_size + 1)
    words_by_len = [
        [tuple(t) for t in itertools.product(letters, repeat=k)]
        for k in range(max(bound.max_lengths, default=0) + 1)
    ]
    out = []
    for lengths in length_types(bound.max_lengths):
        for h in itertools.product(*(words_by_len[k] for k in lengths)):
            if all(is_solution(h, e) for e in system):
                out.append(tuple(h))
    out.sort(key=lambda h: (tuple(len(w) for w in h), h))
    return out
