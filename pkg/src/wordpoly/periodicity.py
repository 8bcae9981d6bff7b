"""Identities ``s0 u1^i s1 ... um^i sm = t0 v1^i t1 ... vn^i tn`` in the exponent ``i``.

If such an identity holds for ``m + n`` values of ``i`` it holds for every
``i``.  The certificate is constructive: multiplied by a common
denominator ``D``, ``P(U_i) - P(V_i)`` is a sum of terms
``y_c * X^(i*c)`` whose coefficients ``y_c`` do not depend on ``i``, one
per distinct prefix length ``c`` of the periods.  The identity holds for
all ``i`` exactly when every ``y_c`` is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Optional, Sequence

from .errors import DomainError, LengthsIncompatibleError, TheoremViolation
from .polyring import ONE, ZERO, IntPoly, exact_div
from .words import Word, as_word, encode

EXTRA_CHECKS = 10


@dataclass(frozen=True)
class PeriodicityInstance:
    """``s`` has ``m + 1`` words, ``u`` has ``m`` nonempty words; same for ``t``, ``v``."""

    s: tuple[Word, ...]
    u: tuple[Word, ...]
    t: tuple[Word, ...]
    v: tuple[Word, ...]

    def __post_init__(self):
        for name in ("s", "u", "t", "v"):
            object.__setattr__(self, name, tuple(as_word(w) for w in getattr(self, name)))
        if not self.u or not self.v:
            raise DomainError("both sides need at least one periodic part")
        if len(self.s) != len(self.u) + 1 or len(self.t) != len(self.v) + 1:
            raise DomainError("need one more fixed part than periodic parts on each side")
        if any(not w for w in self.u + self.v):
            raise DomainError("periodic parts must be nonempty")

    @property
    def m(self) -> int:
        return len(self.u)

    @property
    def n(self) -> int:
        return len(self.v)


def _side(fixed: Sequence[Word], periods: Sequence[Word], i: int) -> Word:
    out = list(fixed[0])
    for p, f in zip(periods, fixed[1:]):
        out.extend(p * i)
        out.extend(f)
    return tuple(out)


def expand(inst: PeriodicityInstance, i: int) -> tuple[Word, Word]:
    """``(U_i, V_i)``."""
    if i < 0:
        raise DomainError("negative exponent")
    return _side(inst.s, inst.u, i), _side(inst.t, inst.v, i)


@dataclass(frozen=True)
class GroupedDifference:
    """``D * (P(U_i) - P(V_i)) = sum_c y_c X^(i*c)``.

    ``groups`` holds ``(c, y_c)`` sorted by ``c``; ``k_set`` lists the
    right-hand prefix indices whose prefix length matches no left-hand one.
    """

    denominator: IntPoly
    groups: tuple[tuple[int, IntPoly], ...]
    k_set: tuple[int, ...]

    @property
    def vanishes(self) -> bool:
        return all(y.is_zero() for _, y in self.groups)

    def evaluate(self, i: int) -> IntPoly:
        total = ZERO
        for c, y in self.groups:
            if y:
                total = total + y.shift(i * c)
        return total

    def difference(self, i: int) -> IntPoly:
        """``P(U_i) - P(V_i)`` recovered from the grouped form."""
        return exact_div(self.evaluate(i), self.denominator)


def _accumulate_side(
    acc: dict[int, IntPoly],
    fixed: Sequence[Word],
    periods: Sequence[Word],
    denom: IntPoly,
    sign: int,
) -> None:
    slopes = list(accumulate((len(p) for p in periods), initial=0))
    shift = 0  # |s_0 ... s_(j-1)|
    acc[0] = acc.get(0, ZERO) + sign * (denom * encode(fixed[0]))
    shift += len(fixed[0])
    for j, p in enumerate(periods, start=1):
        cofactor = exact_div(denom, IntPoly.monomial(len(p)) - ONE)
        piece = (cofactor * encode(p)).shift(shift)
        acc[slopes[j]] = acc.get(slopes[j], ZERO) + sign * piece
        acc[slopes[j - 1]] = acc[slopes[j - 1]] - sign * piece
        acc[slopes[j]] = acc[slopes[j]] + sign * (denom * encode(fixed[j])).shift(shift)
        shift += len(fixed[j])


def group_coefficients(inst: PeriodicityInstance) -> GroupedDifference:
    """Split ``P(U_i) - P(V_i)`` by the slope of its ``i``-dependent exponent."""
    left_total = sum(len(p) for p in inst.u)
    right_total = sum(len(p) for p in inst.v)
    if left_total != right_total:
        raise LengthsIncompatibleError(
            f"total period lengths differ: {left_total} vs {right_total}"
        )
    denom = ONE
    for p in inst.u + inst.v:
        denom = denom * (IntPoly.monomial(len(p)) - ONE)
    acc: dict[int, IntPoly] = {}
    _accumulate_side(acc, inst.s, inst.u, denom, 1)
    _accumulate_side(acc, inst.t, inst.v, denom, -1)
    left_slopes = set(accumulate((len(p) for p in inst.u), initial=0))
    right_slopes = list(accumulate((len(p) for p in inst.v), initial=0))
    k_set = tuple(k for k, c in enumerate(right_slopes) if c not in left_slopes)
    groups = tuple(sorted(acc.items()))
    return GroupedDifference(denom, groups, k_set)


@dataclass(frozen=True)
class PeriodicityReport:
    holds_on_values: bool
    holds_for_all: Optional[bool]
    certificate: Optional[GroupedDifference]
    values: tuple[int, ...]
    required_values: int


def implies_all(inst: PeriodicityInstance, values: Iterable[int]) -> PeriodicityReport:
    """Check ``U_i = V_i`` on ``values`` and decide whether it holds for all ``i``.

    ``holds_for_all`` is ``None`` when neither a counterexample nor a
    certificate is available.
    """
    values = tuple(sorted(set(values)))
    if any(i < 0 for i in values):
        raise DomainError("exponents must be nonnegative")
    need = inst.m + inst.n
    holds = all(a == b for a, b in (expand(inst, i) for i in values))
    if not holds:
        return PeriodicityReport(False, False, None, values, need)
    try:
        grouped = group_coefficients(inst)
    except LengthsIncompatibleError:
        if len(values) >= 2:
            raise TheoremViolation("equal at two exponents but period lengths differ")
        return PeriodicityReport(True, None, None, values, need)
    if not grouped.vanishes:
        if len(values) >= need:
            raise TheoremViolation(
                f"equal at {len(values)} >= {need} exponents but grouped coefficients do not vanish"
            )
        return PeriodicityReport(True, None, None, values, need)
    top = max(values, default=-1)
    for i in range(top + 1, top + 1 + EXTRA_CHECKS):
        a, b = expand(inst, i)
        if a != b:
            raise TheoremViolation(f"certificate contradicted by direct expansion at i={i}")
    return PeriodicityReport(True, True, grouped, values, need)
