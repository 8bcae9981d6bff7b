"""Hyperplane covers for length types of rank ``n - 1`` solutions of a pair.

For a pair ``E1, E2`` with generalized polynomial matrix ``s`` the 2x2
minor ``t_kl = s_1k s_2l - s_1l s_2k`` evaluates to zero at the length
type ``L`` of every common solution of rank ``n - 1``.  Writing
``t_kl = sum X^p - sum X^q`` with no form on both sides, ``t_kl(L) = 0``
forces the least ``p(L)`` to equal the least ``q(L)``, so ``L`` lies on a
hyperplane ``p - q = 0`` with ``p`` and ``q`` minimal for the
componentwise order.  At most ``|E1|`` forms are minimal on each side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .equations import (
    EquationSystem,
    Morphism,
    WordEquation,
    balance_vector,
    is_balanced,
    is_solution,
    is_trivial,
    length_type,
    s_polynomials,
)
from .errors import (
    DomainError,
    EquationsEquivalentError,
    HypothesisNotMetError,
    NotASolutionError,
    TheoremViolation,
)
from .lhp import GenPoly, LinearForm, format_form, precedes, split_signs
from .oracle import SearchBound, combinatorial_rank, enumerate_solutions

NAIVE = "naive"
MINIMAL = "minimal"
PRUNED = "pruned"


@dataclass(frozen=True, order=True)
class Subspace:
    """Hyperplane ``normal . (X1, ..., Xn) = 0``, normalized."""

    normal: tuple[int, ...]

    def __post_init__(self):
        v = tuple(self.normal)
        if not any(v):
            raise DomainError("zero normal vector")
        g = 0
        for a in v:
            g = gcd(g, a)
        first = next(a for a in v if a)
        sign = 1 if first > 0 else -1
        object.__setattr__(self, "normal", tuple(sign * a // g for a in v))

    @classmethod
    def from_forms(cls, p: LinearForm, q: LinearForm) -> "Subspace":
        return cls(tuple(a - b for a, b in zip(p, q)))

    @property
    def n(self) -> int:
        return len(self.normal)

    def contains(self, lengths: Sequence[int]) -> bool:
        return sum(a * b for a, b in zip(self.normal, lengths)) == 0

    def __str__(self) -> str:
        left = format_form(tuple(max(a, 0) for a in self.normal)).replace("+", " + ")
        right_form = tuple(max(-a, 0) for a in self.normal)
        right = format_form(right_form).replace("+", " + ")
        return f"{left} = {right}"


@dataclass(frozen=True)
class Cover:
    """Candidate hyperplanes, each with the ``(p, q)`` pair that produced it."""

    subspaces: tuple[Subspace, ...]
    provenance: tuple[tuple[LinearForm, LinearForm], ...]
    mode: str
    minors: tuple[tuple[int, int], ...]
    witnesses: Optional[tuple[Morphism, ...]] = None
    search_bound: Optional[SearchBound] = None
    # rank n-1 solutions off an intersected cover (only possible with several minors)
    uncovered: tuple[Morphism, ...] = ()

    def __len__(self) -> int:
        return len(self.subspaces)

    def __iter__(self):
        return iter(self.subspaces)

    @property
    def pruned(self) -> bool:
        return self.witnesses is not None

    def covers(self, lengths: Sequence[int]) -> bool:
        return any(v.contains(lengths) for v in self.subspaces)


def _pair_check(e1: WordEquation, e2: WordEquation) -> None:
    if e1.n != e2.n:
        raise DomainError(f"equations on {e1.n} and {e2.n} unknowns")


def minor(e1: WordEquation, e2: WordEquation, k: int, l: int) -> GenPoly:
    """``s_{E1,x_k} s_{E2,x_l} - s_{E1,x_l} s_{E2,x_k}`` (0-based ``k``, ``l``)."""
    _pair_check(e1, e2)
    if k == l:
        raise DomainError("a 2x2 minor needs two distinct columns")
    s1, s2 = s_polynomials(e1), s_polynomials(e2)
    return s1[k] * s2[l] - s1[l] * s2[k]


def nonzero_minors(e1: WordEquation, e2: WordEquation) -> list[tuple[int, int]]:
    """Column pairs ``k < l`` with a nonzero minor, row-major."""
    _pair_check(e1, e2)
    s1, s2 = s_polynomials(e1), s_polynomials(e2)
    out = []
    for k in range(e1.n):
        for l in range(k + 1, e1.n):
            if s1[k] * s2[l] - s1[l] * s2[k]:
                out.append((k, l))
    return out


def _antichain(forms: Sequence[LinearForm]) -> list[LinearForm]:
    uniq = sorted(set(forms))
    return [p for p in uniq if not any(q != p and precedes(q, p) for q in uniq)]


def _chain(forms: Sequence[LinearForm]) -> list[LinearForm]:
    # exponents of one sign in an s-polynomial are prefixes of one side
    return sorted(forms, key=lambda f: (sum(f), f))


def _family_minimal(pairs, targets: set[LinearForm]) -> list[LinearForm]:
    picked = []
    for left, right in pairs:
        for a in left:
            for b in right:
                f = tuple(x + y for x, y in zip(a, b))
                if f in targets:
                    picked.append(f)
                    break
    return picked


def minimal_forms(e1: WordEquation, e2: WordEquation, k: int, l: int) -> tuple[list[LinearForm], list[LinearForm]]:
    """The componentwise-minimal positive and negative exponents of ``t_kl``.

    First every exponent ``a_i + b_j`` is replaced by the least one with the
    same ``a_i`` that survives cancellation (at most one per occurrence of
    ``x_k`` or ``x_l`` in ``E1``), then non-minimal forms are dropped.
    """
    s1, s2 = s_polynomials(e1), s_polynomials(e2)
    t = s1[k] * s2[l] - s1[l] * s2[k]
    pos, neg = split_signs(t)
    a, a_ = (_chain(x) for x in split_signs(s1[k]))
    b, b_ = (_chain(x) for x in split_signs(s2[l]))
    c, c_ = (_chain(x) for x in split_signs(s1[l]))
    d, d_ = (_chain(x) for x in split_signs(s2[k]))
    p_sel = _family_minimal([(a, b), (a_, b_), (c, d_), (c_, d)], set(pos))
    q_sel = _family_minimal([(a, b_), (a_, b), (c, d), (c_, d_)], set(neg))
    budget = e1.length
    if len(p_sel) > budget or len(q_sel) > budget:
        raise TheoremViolation("more than |E1| minimal exponents selected")
    p_min, q_min = _antichain(p_sel), _antichain(q_sel)
    if set(p_min) != set(_antichain(pos)) or set(q_min) != set(_antichain(neg)):
        raise TheoremViolation("family selection missed a minimal exponent")
    return p_min, q_min


def _subspaces_for_minor(e1, e2, k, l, mode) -> dict[Subspace, tuple[LinearForm, LinearForm]]:
    if mode == NAIVE:
        pos, neg = split_signs(minor(e1, e2, k, l))
        ps, qs = sorted(set(pos)), sorted(set(neg))
    elif mode == MINIMAL:
        ps, qs = minimal_forms(e1, e2, k, l)
    else:
        raise DomainError(f"unknown candidate mode {mode!r}")
    out: dict[Subspace, tuple[LinearForm, LinearForm]] = {}
    for p in ps:
        for q in qs:
            out.setdefault(Subspace.from_forms(p, q), (p, q))
    return out


def candidate_subspaces(
    e1: WordEquation,
    e2: WordEquation,
    mode: str = MINIMAL,
    *,
    minor_index: Optional[tuple[int, int]] = None,
    intersect: bool = False,
) -> Cover:
    """Hyperplanes covering the length types of rank ``n - 1`` common solutions.

    Uses the first nonzero minor in row-major order unless ``minor_index``
    is given; ``intersect`` keeps only hyperplanes produced by every
    nonzero minor.
    """
    _pair_check(e1, e2)
    if is_trivial(e1) or is_trivial(e2):
        raise HypothesisNotMetError("candidate subspaces need nontrivial equations")
    nz = nonzero_minors(e1, e2)
    if not nz:
        raise EquationsEquivalentError("every 2x2 minor vanishes identically")
    if intersect:
        chosen = nz
    elif minor_index is not None:
        k, l = minor_index
        if k == l:
            raise DomainError("a 2x2 minor needs two distinct columns")
        key = (min(k, l), max(k, l))
        if key not in nz:
            raise DomainError(f"minor {key} vanishes identically")
        chosen = [key]
    else:
        chosen = nz[:1]
    maps = [_subspaces_for_minor(e1, e2, k, l, mode) for k, l in chosen]
    keep = sorted(set(maps[0]).intersection(*maps[1:]))
    cover = Cover(
        subspaces=tuple(keep),
        provenance=tuple(maps[0][v] for v in keep),
        mode=mode,
        minors=tuple(chosen),
    )
    if mode == MINIMAL and len(cover) > e1.length**2:
        raise TheoremViolation(f"{len(cover)} candidate subspaces exceed |E1|^2 = {e1.length**2}")
    return cover


def prune_cover(
    cover: Cover,
    e1: WordEquation,
    e2: WordEquation,
    bound: SearchBound,
    *,
    jobs: int = 1,
) -> Cover:
    """Keep the hyperplanes that contain the length type of some rank ``n - 1``
    common solution found within ``bound``.

    Absence of a witness below the bound does not prove a hyperplane is
    superfluous.  Raises :class:`TheoremViolation` if a rank ``n - 1``
    common solution lies on no hyperplane of a single-minor cover; for an
    intersected cover such solutions are collected in ``uncovered``.
    """
    _pair_check(e1, e2)
    n = e1.n
    sols = enumerate_solutions(EquationSystem((e1, e2), n), bound, jobs=jobs)
    found: dict[Subspace, Morphism] = {}
    uncovered: list[Morphism] = []
    for h in sols:
        lengths = length_type(h)
        hits = [v for v in cover.subspaces if v.contains(lengths)]
        if hits and all(v in found for v in hits):
            continue
        if combinatorial_rank(h) != n - 1:
            continue
        if not hits:
            if len(cover.minors) > 1:
                uncovered.append(h)
                continue
            raise TheoremViolation(f"rank {n - 1} solution {h} lies on no candidate subspace")
        for v in hits:
            found.setdefault(v, h)
    kept = [i for i, v in enumerate(cover.subspaces) if v in found]
    return Cover(
        subspaces=tuple(cover.subspaces[i] for i in kept),
        provenance=tuple(cover.provenance[i] for i in kept),
        mode=cover.mode,
        minors=cover.minors,
        witnesses=tuple(found[cover.subspaces[i]] for i in kept),
        search_bound=bound,
        uncovered=tuple(uncovered),
    )


# -- consequences -------------------------------------------------------------

@dataclass(frozen=True)
class BalanceReport:
    """``status`` is one of ``not-applicable``, ``inconclusive``, ``confirmed``, ``violated``."""

    status: str
    relation: tuple[int, ...]
    witness: Optional[Morphism] = None
    checked: int = 0
    counterexamples: tuple[Morphism, ...] = ()
    relation_holds: bool = True
    search_bound: Optional[SearchBound] = None


def balance_check(e1: WordEquation, e2: WordEquation, bound: SearchBound, *, jobs: int = 1) -> BalanceReport:
    """If ``E1`` is unbalanced, every rank ``n - 1`` solution of ``E1`` within
    ``bound`` must also solve ``E2``, provided the pair has a common one."""
    _pair_check(e1, e2)
    relation = balance_vector(e1)
    if is_balanced(e1):
        return BalanceReport("not-applicable", relation, search_bound=bound)
    n = e1.n
    sols = enumerate_solutions(EquationSystem((e1,), n), bound, jobs=jobs)
    relation_holds = all(
        sum(c * x for c, x in zip(relation, length_type(h))) == 0 for h in sols
    )
    top = [h for h in sols if combinatorial_rank(h) == n - 1]
    witness = next((h for h in top if is_solution(h, e2)), None)
    if witness is None:
        return BalanceReport("inconclusive", relation, None, len(top), (), relation_holds, bound)
    bad = tuple(h for h in top if not is_solution(h, e2))
    status = "violated" if bad or not relation_holds else "confirmed"
    return BalanceReport(status, relation, witness, len(top), bad, relation_holds, bound)


@dataclass(frozen=True)
class ChainBoundReport:
    N: int
    bound: int
    worst_case: int
    mode: str
    cover: Cover


def chain_bound(
    e1: WordEquation,
    e2: WordEquation,
    mode: str = MINIMAL,
    *,
    search_bound: Optional[SearchBound] = None,
    minor_index: Optional[tuple[int, int]] = None,
    jobs: int = 1,
) -> ChainBoundReport:
    """Length bound ``m <= N + 1`` for rank ``n - 1`` chains starting ``E1, E2``.

    ``N`` is the size of the cover computed in ``mode``; ``bound`` never
    exceeds the general ``|E1|^2 + 1``.
    """
    if mode == PRUNED:
        if search_bound is None:
            raise DomainError("pruned mode needs a search bound")
        base = candidate_subspaces(e1, e2, MINIMAL, minor_index=minor_index)
        cover = prune_cover(base, e1, e2, search_bound, jobs=jobs)
    else:
        cover = candidate_subspaces(e1, e2, mode, minor_index=minor_index)
    worst = e1.length**2 + 1
    return ChainBoundReport(len(cover), min(len(cover) + 1, worst), worst, mode, cover)


@dataclass(frozen=True)
class PairFormReport:
    k: Optional[int]
    reason: str
    roles: Optional[tuple[int, int, int]] = None
    rank: Optional[int] = None


def _strip_common_prefix(eq: WordEquation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    i = 0
    while i < min(len(eq.lhs), len(eq.rhs)) and eq.lhs[i] == eq.rhs[i]:
        i += 1
    return eq.lhs[i:], eq.rhs[i:]


def _signatures(lhs: tuple[int, ...], rhs: tuple[int, ...]) -> set[tuple[int, int, int, int]]:
    """All ``(x1, x2, x3, k)`` such that one side is ``x1 ...`` and the other ``x2^k x3 ...``."""
    out = set()
    if not lhs or not rhs:
        return out
    for a_side, b_side in ((lhs, rhs), (rhs, lhs)):
        a, b = a_side[0], b_side[0]
        k = 0
        while k < len(b_side) and b_side[k] == b:
            k += 1
        if k < len(b_side) and b_side[k] != a:
            out.add((a, b, b_side[k], k))
    return out


def pair_form_check(e1: WordEquation, e2: WordEquation, h: Sequence[Sequence[int]]) -> PairFormReport:
    """Shape of a pair with a rank ``n - 1`` solution whose images pairwise
    do not commute: both equations read ``x1 ... = x2^k x3 ...`` after
    renaming, with the same ``k``.

    Common leading unknowns are cancelled first.  Returns ``k = None`` with
    a reason when the hypotheses fail; raises :class:`TheoremViolation` if
    they hold and the shape does not.
    """
    _pair_check(e1, e2)
    if is_trivial(e1) or is_trivial(e2):
        raise HypothesisNotMetError("pair form needs nontrivial equations")
    h = tuple(tuple(w) for w in h)
    if not (is_solution(h, e1) and is_solution(h, e2)):
        raise NotASolutionError("morphism is not a common solution")
    n = e1.n
    r = combinatorial_rank(h)
    if r != n - 1:
        return PairFormReport(None, f"rank {r} is not n-1 = {n - 1}", rank=r)
    for i in range(n):
        for j in range(i + 1, n):
            if h[i] + h[j] == h[j] + h[i]:
                return PairFormReport(None, "commuting unknowns", rank=r)
    common = _signatures(*_strip_common_prefix(e1)) & _signatures(*_strip_common_prefix(e2))
    if not common:
        raise TheoremViolation(f"pair {e1}; {e2} with solution {h} does not have the pair form")
    x1, x2, x3, k = min(common, key=lambda s: (s[3], s))
    return PairFormReport(k, "pair form holds", (x1, x2, x3), r)
