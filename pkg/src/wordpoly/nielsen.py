"""Factor a solution through elementary transformations.

Every solution ``h`` of an equation factors as ``theta . phi_m ... phi_1 . alpha``
where ``alpha`` erases the unknowns with empty image and each ``phi_k``
maps one unknown ``y`` to ``x y`` (regular) or to ``x`` (singular).  The
factorization is found by the usual Levi-lemma reduction: compare the
images of the leading unknowns, split the longer one, and cancel.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .equations import Morphism, WordEquation, apply, is_solution, length_type
from .errors import DomainError, NotASolutionError
from .polyring import IntPoly, PolyMatrix, ZERO
from .words import Word, as_word

REGULAR = "regular"
SINGULAR = "singular"


@dataclass(frozen=True)
class ElementaryTransformation:
    """``target -> source target`` (regular) or ``target -> source`` (singular)."""

    kind: str
    target: int
    source: int

    def __post_init__(self):
        if self.kind not in (REGULAR, SINGULAR):
            raise DomainError(f"unknown transformation kind {self.kind!r}")
        if self.target == self.source:
            raise DomainError("elementary transformation with source == target")

    def image(self, x: int) -> tuple[int, ...]:
        if x != self.target:
            return (x,)
        return (self.source, x) if self.kind == REGULAR else (self.source,)

    def apply(self, w: Sequence[int]) -> tuple[int, ...]:
        out: list[int] = []
        for x in w:
            out.extend(self.image(x))
        return tuple(out)


@dataclass(frozen=True)
class Decomposition:
    n: int
    erased: frozenset[int]
    steps: tuple[ElementaryTransformation, ...]
    theta: Morphism

    @property
    def s(self) -> int:
        return len(self.erased)

    @property
    def t(self) -> int:
        return sum(1 for st in self.steps if st.kind == SINGULAR)

    @property
    def rank_bound(self) -> int:
        """``n - s - t``, the rank of the principal solution."""
        return self.n - self.s - self.t

    def to_json(self) -> str:
        return json.dumps(decomposition_to_dict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Decomposition":
        return decomposition_from_dict(json.loads(text))


def decomposition_to_dict(d: Decomposition) -> dict:
    return {
        "n": d.n,
        "erased": sorted(d.erased),
        "steps": [{"kind": st.kind, "x": st.source, "y": st.target} for st in d.steps],
        "theta": [list(w) for w in d.theta],
    }


def decomposition_from_dict(data: dict) -> Decomposition:
    return Decomposition(
        n=int(data["n"]),
        erased=frozenset(int(x) for x in data["erased"]),
        steps=tuple(ElementaryTransformation(s["kind"], int(s["y"]), int(s["x"])) for s in data["steps"]),
        theta=tuple(as_word(int(a) for a in w) for w in data["theta"]),
    )


def decompose(eq: WordEquation, h: Sequence[Sequence[int]]) -> Decomposition:
    """Factor the solution ``h`` of ``eq``.

    Ties (equal image lengths) become a singular step mapping the right
    leading unknown to the left one.
    """
    h = tuple(as_word(w) for w in h)
    if not is_solution(h, eq):
        raise NotASolutionError(f"morphism is not a solution of {eq}")
    erased = frozenset(i for i, w in enumerate(h) if not w)
    g = list(h)
    lhs = [x for x in eq.lhs if x not in erased]
    rhs = [x for x in eq.rhs if x not in erased]
    steps: list[ElementaryTransformation] = []
    measure = sum(len(g[x]) for x in lhs)
    while lhs:
        x, y = lhs[0], rhs[0]
        if x == y:
            lhs, rhs = lhs[1:], rhs[1:]
        else:
            gx, gy = g[x], g[y]
            if len(gx) == len(gy):
                st = ElementaryTransformation(SINGULAR, target=y, source=x)
            elif len(gx) < len(gy):
                st = ElementaryTransformation(REGULAR, target=y, source=x)
                g[y] = gy[len(gx):]
            else:
                st = ElementaryTransformation(REGULAR, target=x, source=y)
                g[x] = gx[len(gy):]
            steps.append(st)
            lhs, rhs = list(st.apply(lhs)), list(st.apply(rhs))
            # both sides now start with the same unknown
            lhs, rhs = lhs[1:], rhs[1:]
        new_measure = sum(len(g[z]) for z in lhs)
        if new_measure >= measure and lhs:
            raise AssertionError("reduction failed to shorten the equation")
        measure = new_measure
    if rhs:
        raise AssertionError("right side left over after reduction")
    return Decomposition(eq.n, erased, tuple(steps), tuple(g))


def stage_morphism(d: Decomposition, k: int) -> tuple[tuple[int, ...], ...]:
    """``f_k = phi_k ... phi_1 . alpha`` as unknown-to-unknown-word images."""
    if not 0 <= k <= len(d.steps):
        raise DomainError(f"stage {k} outside 0..{len(d.steps)}")
    f = [() if i in d.erased else (i,) for i in range(d.n)]
    for st in d.steps[:k]:
        f = [st.apply(w) for w in f]
    return tuple(f)


def principal_solution(d: Decomposition) -> tuple[tuple[int, ...], ...]:
    """``phi . alpha``: a solution of the equation over the unknowns themselves."""
    return stage_morphism(d, len(d.steps))


def residual_morphism(d: Decomposition, k: int) -> Morphism:
    """``g_k`` with ``h = g_k . f_k``; ``g_m`` is ``theta``."""
    if not 0 <= k <= len(d.steps):
        raise DomainError(f"stage {k} outside 0..{len(d.steps)}")
    g = list(recompose(d))
    for st in d.steps[:k]:
        if st.kind == REGULAR:
            g[st.target] = g[st.target][len(g[st.source]):]
    return tuple(g)


def recompose(d: Decomposition) -> Morphism:
    """``theta . phi_m ... phi_1 . alpha``."""
    f = principal_solution(d)
    return tuple(apply(d.theta, w) for w in f)


def occurrence_matrix(d: Decomposition, k: int) -> list[list[int]]:
    """``A_k[i][j] = |f_k(x_i)|_{x_j}``."""
    f = stage_morphism(d, k)
    return [[w.count(j) for j in range(d.n)] for w in f]


def coefficient_matrix(d: Decomposition, k: int) -> PolyMatrix:
    """``B_k`` with ``P(h(x_i)) = sum_j B_k[i][j] P(g_k(x_j))``.

    Entry ``(i, j)`` places ``X^|g_k(prefix)|`` for every occurrence of
    ``x_j`` in ``f_k(x_i)``.
    """
    f = stage_morphism(d, k)
    lengths = length_type(residual_morphism(d, k))
    rows = []
    for w in f:
        acc: list[dict[int, int]] = [{} for _ in range(d.n)]
        offset = 0
        for z in w:
            acc[z][offset] = acc[z].get(offset, 0) + 1
            offset += lengths[z]
        rows.append([IntPoly(a) if a else ZERO for a in acc])
    return PolyMatrix(rows)


def length_type_cone(d: Decomposition) -> list[tuple[int, ...]]:
    """Generators ``(|f_m(x_1)|_{x_i}, ..., |f_m(x_n)|_{x_i})``, one per ``i``.

    Every solution ``g . f_m`` has length type ``sum_i |g(x_i)| * gen_i``.
    """
    a = occurrence_matrix(d, len(d.steps))
    return [tuple(a[r][i] for r in range(d.n)) for i in range(d.n)]
