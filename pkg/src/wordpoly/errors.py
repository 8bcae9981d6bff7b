"""Exception hierarchy shared by all wordpoly modules."""

from __future__ import annotations


class WordPolyError(Exception):
    """Base class for every error raised by this package."""


class DomainError(WordPolyError, ValueError):
    """An argument lies outside the domain of an operation."""


class InvalidAlphabetError(DomainError):
    """A letter is not a positive integer."""


class NotAWordImageError(DomainError):
    """A polynomial is not the encoding of any word."""


class ShapeError(WordPolyError, ValueError):
    """Dimensions or arities do not match."""


class NotASolutionError(WordPolyError, ValueError):
    """A morphism was required to solve an equation and does not."""


class HypothesisNotMetError(WordPolyError, ValueError):
    """The preconditions of a theorem-backed check are not satisfied."""


class DegenerateEquationError(WordPolyError, ValueError):
    """An equation has an empty side where a leading unknown is needed."""


class EquationsEquivalentError(WordPolyError, ValueError):
    """Every 2x2 minor of the generalized polynomial matrix vanishes."""


class LengthsIncompatibleError(WordPolyError, ValueError):
    """Total period lengths of a periodicity instance differ."""


class BudgetExceededError(WordPolyError, RuntimeError):
    """A brute-force search would exceed its configured budget."""


class TheoremViolation(WordPolyError, AssertionError):
    """A check found a counterexample to a proven statement.

    This always indicates a bug in the implementation.
    """


class ParseError(WordPolyError, ValueError):
    """Malformed DSL text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"{line}:{column}: " if line else ""
        if source:
            where = f"{source}:{where}" if line else f"{source}: "
        super().__init__(f"{where}{message}")
