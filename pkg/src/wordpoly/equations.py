"""Coefficient-free word equations and their polynomial matrices.

Unknowns are 0-based indices ``0 .. n-1`` and print as ``x1 .. xn``.  A
morphism is a tuple of ``n`` words and a length type a tuple of ``n``
nonnegative integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DegenerateEquationError, DomainError, HypothesisNotMetError, ShapeError
from .lhp import GenPoly, LinearForm
from .polyring import ZERO, IntPoly, PolyMatrix, rank
from .words import Word, as_word, encode

Morphism = tuple[Word, ...]
LengthType = tuple[int, ...]


def unknown_name(i: int) -> str:
    return f"x{i + 1}"


@dataclass(frozen=True)
class WordEquation:
    """``lhs = rhs`` over unknowns ``0 .. n-1``."""

    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if self.n < 0:
            raise ShapeError("negative number of unknowns")
        for x in self.lhs + self.rhs:
            if not 0 <= x < self.n:
                raise ShapeError(f"unknown index {x} outside 0..{self.n - 1}")

    @property
    def length(self) -> int:
        """``|E| = |lhs| + |rhs|``."""
        return len(self.lhs) + len(self.rhs)

    def swapped(self) -> "WordEquation":
        return WordEquation(self.rhs, self.lhs, self.n)

    def occurrences(self, x: int) -> tuple[int, int]:
        return self.lhs.count(x), self.rhs.count(x)

    def __str__(self) -> str:
        return f"{_side_str(self.lhs)} = {_side_str(self.rhs)}"


def _side_str(side: Sequence[int]) -> str:
    return " ".join(unknown_name(x) for x in side)


@dataclass(frozen=True)
class EquationSystem:
    equations: tuple[WordEquation, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        for e in self.equations:
            if e.n != self.n:
                raise ShapeError(f"equation {e} has {e.n} unknowns, system has {self.n}")

    @classmethod
    def of(cls, equations: Iterable[WordEquation]) -> "EquationSystem":
        eqs = tuple(equations)
        if not eqs:
            raise ShapeError("cannot infer the number of unknowns of an empty system")
        return cls(eqs, eqs[0].n)

    def __iter__(self) -> Iterator[WordEquation]:
        return iter(self.equations)

    def __len__(self) -> int:
        return len(self.equations)

    def __getitem__(self, i: int) -> WordEquation:
        return self.equations[i]


def _as_system(system: "EquationSystem | Sequence[WordEquation]") -> EquationSystem:
    if isinstance(system, EquationSystem):
        return system
    return EquationSystem.of(system)


def _check_arity(h: Sequence[Sequence[int]], n: int) -> None:
    if len(h) != n:
        raise ShapeError(f"morphism has {len(h)} images, equation has {n} unknowns")


def _check_lengths(lengths: Sequence[int], n: int) -> None:
    if len(lengths) != n:
        raise ShapeError(f"length type has {len(lengths)} entries, expected {n}")
    if any(x < 0 for x in lengths):
        raise DomainError(f"negative entry in length type {tuple(lengths)}")


def as_morphism(images: Iterable[Iterable[int]]) -> Morphism:
    return tuple(as_word(w) for w in images)


def length_type(h: Sequence[Sequence[int]]) -> LengthType:
    return tuple(len(w) for w in h)


# -- basic operations -----------------------------------------------------

def apply(h: Sequence[Sequence[int]], w: Sequence[int]) -> Word:
    """Image of the unknown word ``w`` under the morphism ``h``."""
    out: list[int] = []
    for x in w:
        if not 0 <= x < len(h):
            raise IndexError(f"unknown index {x} outside morphism of arity {len(h)}")
        out.extend(h[x])
    return tuple(out)


def is_solution(h: Sequence[Sequence[int]], eq: WordEquation) -> bool:
    _check_arity(h, eq.n)
    return apply(h, eq.lhs) == apply(h, eq.rhs)


def length_of(lengths: Sequence[int], w: Sequence[int]) -> int:
    """``|h(w)|`` for any ``h`` of length type ``lengths``."""
    total = 0
    for x in w:
        if not 0 <= x < len(lengths):
            raise IndexError(f"unknown index {x} outside length type of size {len(lengths)}")
        total += lengths[x]
    return total


def is_trivial(eq: WordEquation) -> bool:
    return eq.lhs == eq.rhs


def is_balanced(eq: WordEquation) -> bool:
    """Each unknown occurs equally often on both sides."""
    return all(eq.lhs.count(x) == eq.rhs.count(x) for x in range(eq.n))


def balance_vector(eq: WordEquation) -> tuple[int, ...]:
    """``(|lhs|_x - |rhs|_x)`` for every unknown ``x``."""
    return tuple(eq.lhs.count(x) - eq.rhs.count(x) for x in range(eq.n))


# -- polynomial constructions -----------------------------------------------

def q_polynomials(eq: WordEquation, lengths: Sequence[int]) -> tuple[IntPoly, ...]:
    """``q_{E,x,L}`` for every unknown ``x`` at once."""
    _check_lengths(lengths, eq.n)
    acc: list[dict[int, int]] = [{} for _ in range(eq.n)]
    for side, sign in ((eq.lhs, 1), (eq.rhs, -1)):
        offset = 0
        for x in side:
            d = acc[x]
            v = d.get(offset, 0) + sign
            if v:
                d[offset] = v
            else:
                del d[offset]
            offset += lengths[x]
    return tuple(IntPoly._raw(d) for d in acc)


def q_polynomial(eq: WordEquation, x: int, lengths: Sequence[int]) -> IntPoly:
    """Sum of ``X^(prefix length)`` over occurrences of ``x`` on the left,
    minus the same sum on the right."""
    if not 0 <= x < eq.n:
        raise ShapeError(f"unknown index {x} outside 0..{eq.n - 1}")
    return q_polynomials(eq, lengths)[x]


def s_polynomials(eq: WordEquation) -> tuple[GenPoly, ...]:
    """``s_{E,x}`` for every unknown: the q-polynomials with symbolic lengths."""
    n = eq.n
    acc: list[dict[LinearForm, int]] = [{} for _ in range(n)]
    for side, sign in ((eq.lhs, 1), (eq.rhs, -1)):
        prefix = [0] * n
        for x in side:
            p = tuple(prefix)
            d = acc[x]
            v = d.get(p, 0) + sign
            if v:
                d[p] = v
            else:
                del d[p]
            prefix[x] += 1
    return tuple(GenPoly._raw(n, d) for d in acc)


def s_polynomial(eq: WordEquation, x: int) -> GenPoly:
    if not 0 <= x < eq.n:
        raise ShapeError(f"unknown index {x} outside 0..{eq.n - 1}")
    return s_polynomials(eq)[x]


def weqpeq_residual(eq: WordEquation, h: Sequence[Sequence[int]]) -> IntPoly:
    """``sum_x q_{E,x,L} P(h(x))`` with ``L`` the length type of ``h``.

    Zero exactly when ``h`` solves ``eq``.
    """
    _check_arity(h, eq.n)
    qs = q_polynomials(eq, length_type(h))
    total = ZERO
    for q, w in zip(qs, h):
        if q and w:
            total = total + q * encode(w)
    return total


# -- systems at a fixed length type -----------------------------------------

def q_matrix(system: "EquationSystem | Sequence[WordEquation]", lengths: Sequence[int]) -> PolyMatrix:
    system = _as_system(system)
    return PolyMatrix([q_polynomials(e, lengths) for e in system])


@dataclass(frozen=True)
class RankBoundReport:
    matrix: PolyMatrix
    matrix_rank: int
    max_solution_rank: int


def rank_bound(system: "EquationSystem | Sequence[WordEquation]", lengths: Sequence[int]) -> RankBoundReport:
    """Any solution of length type ``lengths`` has rank at most ``n - rank(q)``."""
    system = _as_system(system)
    m = q_matrix(system, lengths)
    r = rank(m)
    return RankBoundReport(m, r, system.n - r)


def same_solutions_at(system: "EquationSystem | Sequence[WordEquation]", lengths: Sequence[int]) -> bool:
    """True when the q-matrix has rank 1, which forces equal solution sets at ``lengths``.

    Requires nontrivial equations and at most one zero entry in ``lengths``.
    """
    system = _as_system(system)
    _check_lengths(lengths, system.n)
    if sum(1 for x in lengths if x == 0) > 1:
        raise HypothesisNotMetError(f"length type {tuple(lengths)} has more than one zero entry")
    for e in system:
        if is_trivial(e):
            raise HypothesisNotMetError(f"equation {e} is trivial")
    return rank(q_matrix(system, lengths)) == 1


# -- graph ------------------------------------------------------------------

@dataclass(frozen=True)
class GraphReport:
    edges: tuple[tuple[int, int], ...]
    component_count: int
    components: tuple[tuple[int, ...], ...]


def _components(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def equations_graph(system: "EquationSystem | Sequence[WordEquation]") -> GraphReport:
    """Edge per equation between the leading unknowns of its sides."""
    system = _as_system(system)
    edges = []
    for e in system:
        if not e.lhs or not e.rhs:
            raise DegenerateEquationError(f"equation {e} has an empty side")
        a, b = e.lhs[0], e.rhs[0]
        edges.append((min(a, b), max(a, b)))
    comps = _components(system.n, edges)
    return GraphReport(tuple(edges), len(comps), tuple(tuple(c) for c in comps))


def graph_lemma_matrix(system: "EquationSystem | Sequence[WordEquation]", lengths: Sequence[int]) -> PolyMatrix:
    """Square matrix from the Graph Lemma argument.

    The system must be in normal form: components are the vertex sets of
    the graph, and every non-minimal vertex ``j`` of a component heads
    exactly one equation ``x_j ... = x_k ...`` with ``k < j``.  Rows are
    ordered by ``j`` and the columns of the component minima are removed.
    """
    system = _as_system(system)
    graph = equations_graph(system)
    reps = {c[0] for c in graph.components}
    by_head: dict[int, WordEquation] = {}
    for e in system:
        j, k = e.lhs[0], e.rhs[0]
        if not k < j or j in reps or j in by_head:
            raise HypothesisNotMetError(f"equation {e} is not in Graph Lemma normal form")
        by_head[j] = e
    if len(by_head) != system.n - len(reps):
        raise HypothesisNotMetError("some non-minimal vertex heads no equation")
    ordered = [by_head[j] for j in sorted(by_head)]
    return q_matrix(EquationSystem(ordered, system.n), lengths).delete_columns(reps)
