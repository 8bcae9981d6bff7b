"""Text format for equations, morphisms and periodicity instances.

Grammar, one item per line, ``#`` starts a comment::

    xyz = zxy              equation, single-letter unknowns a-z
    x1 x2 x3 = x3 x1 x2    equation, indexed unknowns (x1x2x3 also works)
    x = 1 2 1              image of x; ``x =`` is the empty image
    z = [1,12,3]           bracketed letters, needed for letters >= 10
    s0 = 1                 periodicity instance entry (s*, u*, t*, v*)

Optional section headers ``[unknowns]``, ``[equations]``, ``[morphism]``
and ``[instance]`` force the reading of the lines below them.  Under
``[equations]`` an empty side is written as nothing or as ``ε``.  An
``[unknowns]`` section lists names in index order; without it letters are
ordered alphabetically and ``x<k>`` is unknown ``k``.  Files that are read
together (an equation file and a morphism file, say) share one
:class:`SymbolTable` built by :func:`collect_names`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .equations import EquationSystem, Morphism, WordEquation
from .errors import ParseError, WordPolyError
from .periodicity import PeriodicityInstance
from .words import Word, as_word, format_word

EQUATIONS = "equations"
MORPHISM = "morphism"
INSTANCE = "instance"
SECTIONS = ("unknowns", EQUATIONS, MORPHISM, INSTANCE)

EMPTY_MARK = "ε"
_INDEXED = re.compile(r"x(\d+)\Z")
_INSTANCE_KEY = re.compile(r"([stuv])(\d+)\Z")
_WORDISH = re.compile(r"[\d\s\[\],ε]*\Z")
_SINGLE_NAME = re.compile(r"(x\d+|[a-z])\Z")


@dataclass(frozen=True)
class SymbolTable:
    names: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ParseError(f"unknown {name!r} is not declared") from None

    def name(self, i: int) -> str:
        return self.names[i]

    @property
    def indexed(self) -> bool:
        return bool(self.names) and all(_INDEXED.match(s) for s in self.names)

    @classmethod
    def indexed_of(cls, n: int) -> "SymbolTable":
        return cls(tuple(f"x{i}" for i in range(1, n + 1)))


@dataclass
class RawFile:
    """Result of the syntactic pass, before names are resolved."""

    kind: Optional[str] = None
    equations: list[tuple[list[str], list[str], int]] = field(default_factory=list)
    assignments: dict[str, tuple[Word, int]] = field(default_factory=dict)
    instance: dict[str, tuple[Word, int]] = field(default_factory=dict)
    declared: Optional[list[str]] = None

    def names(self) -> list[str]:
        out: list[str] = []
        for lhs, rhs, _ in self.equations:
            out.extend(lhs)
            out.extend(rhs)
        out.extend(self.assignments)
        return out


def _tokenize_names(text: str, lineno: int, col0: int, allow_empty_mark: bool) -> list[str]:
    out: list[str] = []
    i = 0
    saw_mark = False
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c == "x" and i + 1 < len(text) and text[i + 1].isdigit():
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if int(text[i + 1:j]) < 1:
                raise ParseError("unknown indices start at 1", lineno, col0 + i + 1)
            out.append(text[i:j])
            i = j
        elif "a" <= c <= "z":
            out.append(c)
            i += 1
        elif c == EMPTY_MARK and allow_empty_mark:
            saw_mark = True
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r}", lineno, col0 + i + 1)
    if saw_mark and out:
        raise ParseError("ε must stand alone", lineno, col0 + 1)
    return out


def _parse_word(text: str, lineno: int, col0: int) -> Word:
    letters: list[int] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace() or c == EMPTY_MARK:
            i += 1
        elif c.isdigit():
            if c == "0":
                raise ParseError("letter 0 is not allowed", lineno, col0 + i + 1)
            letters.append(int(c))
            i += 1
        elif c == "[":
            j = text.find("]", i)
            if j < 0:
                raise ParseError("unterminated '['", lineno, col0 + i + 1)
            inner = text[i + 1:j].strip()
            if inner:
                for tok in inner.split(","):
                    tok = tok.strip()
                    if not tok.isdigit() or int(tok) < 1:
                        raise ParseError(f"bad letter {tok!r}", lineno, col0 + i + 1)
                    letters.append(int(tok))
            i = j + 1
        else:
            raise ParseError(f"unexpected character {c!r} in word", lineno, col0 + i + 1)
    return as_word(letters)


def _classify(section: Optional[str], lhs: str, rhs: str) -> str:
    if section in (EQUATIONS, MORPHISM, INSTANCE):
        return section
    key = lhs.strip()
    if _INSTANCE_KEY.match(key):
        return INSTANCE
    if _SINGLE_NAME.match(key) and _WORDISH.match(rhs):
        return MORPHISM
    return EQUATIONS


def read(text: str) -> RawFile:
    """Syntactic pass over a whole file."""
    raw = RawFile()
    section: Optional[str] = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        if stripped.startswith("["):
            m = re.fullmatch(r"\[\s*([a-z]+)\s*\]", stripped)
            if not m or m.group(1) not in SECTIONS:
                raise ParseError(f"unknown section {stripped}", lineno, body.index("[") + 1)
            section = m.group(1)
            if section == "unknowns" and raw.declared is None:
                raw.declared = []
            continue
        if section == "unknowns":
            raw.declared.extend(_tokenize_names(body, lineno, 0, False))
            continue
        eqs = [i for i, c in enumerate(body) if c == "="]
        if not eqs:
            raise ParseError("expected '='", lineno, len(body.rstrip()) + 1)
        if len(eqs) > 1:
            raise ParseError("unexpected second '='", lineno, eqs[1] + 1)
        cut = eqs[0]
        lhs, rhs = body[:cut], body[cut + 1:]
        kind = _classify(section, lhs, rhs)
        if raw.kind is None:
            raw.kind = kind
        elif raw.kind != kind:
            raise ParseError(f"{kind} line in a file of {raw.kind}", lineno, 1)
        if kind == EQUATIONS:
            left = _tokenize_names(lhs, lineno, 0, True)
            right = _tokenize_names(rhs, lineno, cut + 1, True)
            raw.equations.append((left, right, lineno))
            continue
        key = lhs.strip()
        col = body.index(key[0]) + 1 if key else 1
        word = _parse_word(rhs, lineno, cut + 1)
        if kind == MORPHISM:
            if not _SINGLE_NAME.match(key):
                raise ParseError(f"bad unknown name {key!r}", lineno, col)
            target = raw.assignments
        else:
            if not _INSTANCE_KEY.match(key):
                raise ParseError(f"bad instance key {key!r}", lineno, col)
            target = raw.instance
        if key in target:
            raise ParseError(f"{key} assigned twice", lineno, col)
        target[key] = (word, lineno)
    return raw


def collect_names(raws: Iterable[RawFile]) -> SymbolTable:
    """One symbol table for files that are interpreted together."""
    raws = list(raws)
    used: list[str] = []
    declared: Optional[list[str]] = None
    for r in raws:
        used.extend(r.names())
        if r.declared is not None:
            if declared is not None and declared != r.declared:
                raise ParseError("conflicting [unknowns] declarations")
            declared = r.declared
    pool = set(used) | set(declared or ())
    indexed = {s for s in pool if _INDEXED.match(s)}
    if indexed and len(indexed) != len(pool):
        raise ParseError("mixes single-letter and x<k> unknown names")
    if declared is not None:
        if len(set(declared)) != len(declared):
            raise ParseError("duplicate name in [unknowns]")
        missing = sorted(set(used) - set(declared))
        if missing:
            raise ParseError(f"undeclared unknowns {', '.join(missing)}")
        if indexed and declared != [f"x{i}" for i in range(1, len(declared) + 1)]:
            raise ParseError("indexed unknowns must be declared as x1 .. xn in order")
        return SymbolTable(tuple(declared))
    if indexed:
        top = max(int(s[1:]) for s in indexed)
        return SymbolTable.indexed_of(top)
    return SymbolTable(tuple(sorted(pool)))


def build_system(raw: RawFile, symbols: SymbolTable) -> EquationSystem:
    eqs = []
    for lhs, rhs, lineno in raw.equations:
        try:
            eqs.append(WordEquation(
                tuple(symbols.index(s) for s in lhs),
                tuple(symbols.index(s) for s in rhs),
                symbols.n,
            ))
        except ParseError as exc:
            raise ParseError(exc.message, lineno, 1) from None
    return EquationSystem(tuple(eqs), symbols.n)


def build_morphism(raw: RawFile, symbols: SymbolTable) -> Morphism:
    images: list[Optional[Word]] = [None] * symbols.n
    for name, (word, lineno) in raw.assignments.items():
        try:
            images[symbols.index(name)] = word
        except ParseError as exc:
            raise ParseError(exc.message, lineno, 1) from None
    missing = [symbols.name(i) for i, w in enumerate(images) if w is None]
    if missing:
        raise ParseError(f"no image for {', '.join(missing)}")
    return tuple(images)  # type: ignore[arg-type]


def build_instance(raw: RawFile) -> PeriodicityInstance:
    parts: dict[str, dict[int, Word]] = {c: {} for c in "stuv"}
    for key, (word, _) in raw.instance.items():
        m = _INSTANCE_KEY.match(key)
        parts[m.group(1)][int(m.group(2))] = word

    def periods(c: str) -> tuple[Word, ...]:
        got = parts[c]
        if sorted(got) != list(range(1, len(got) + 1)):
            raise ParseError(f"{c}-entries must be numbered {c}1 .. {c}{len(got)}")
        return tuple(got[j] for j in range(1, len(got) + 1))

    def fixed(c: str, count: int) -> tuple[Word, ...]:
        extra = [j for j in parts[c] if j > count]
        if extra:
            raise ParseError(f"{c}{extra[0]} has no matching period")
        return tuple(parts[c].get(j, ()) for j in range(count + 1))

    u, v = periods("u"), periods("v")
    try:
        return PeriodicityInstance(fixed("s", len(u)), u, fixed("t", len(v)), v)
    except WordPolyError as exc:
        raise ParseError(str(exc)) from None


Parsed = Union[EquationSystem, Morphism, PeriodicityInstance]


def parse_dsl(text: str, symbols: Optional[SymbolTable] = None) -> Parsed:
    """Parse one file; the kind is taken from headers or inferred from its lines."""
    raw = read(text)
    if raw.kind == INSTANCE:
        return build_instance(raw)
    table = symbols if symbols is not None else collect_names([raw])
    if raw.kind == MORPHISM:
        return build_morphism(raw, table)
    return build_system(raw, table)


def parse_system(text: str, symbols: Optional[SymbolTable] = None) -> EquationSystem:
    raw = read(text)
    if raw.kind not in (None, EQUATIONS):
        raise ParseError(f"expected equations, found {raw.kind}")
    return build_system(raw, symbols if symbols is not None else collect_names([raw]))


def parse_equation(text: str, symbols: Optional[SymbolTable] = None) -> WordEquation:
    system = parse_system(text, symbols)
    if len(system) != 1:
        raise ParseError(f"expected one equation, found {len(system)}")
    return system[0]


def parse_morphism(text: str, symbols: Optional[SymbolTable] = None) -> Morphism:
    raw = read(text)
    if raw.kind not in (None, MORPHISM):
        raise ParseError(f"expected a morphism, found {raw.kind}")
    return build_morphism(raw, symbols if symbols is not None else collect_names([raw]))


def parse_instance(text: str) -> PeriodicityInstance:
    raw = read(text)
    if raw.kind != INSTANCE:
        raise ParseError(f"expected an instance, found {raw.kind}")
    return build_instance(raw)


# -- serialization ------------------------------------------------------------

def _side_text(side: Sequence[int], symbols: SymbolTable) -> str:
    if not side:
        return EMPTY_MARK
    sep = " " if symbols.indexed else ""
    return sep.join(symbols.name(x) for x in side)


def format_system(system: EquationSystem, symbols: Optional[SymbolTable] = None) -> str:
    symbols = symbols or SymbolTable.indexed_of(system.n)
    if symbols.n != system.n:
        raise ParseError(f"symbol table has {symbols.n} names for {system.n} unknowns")
    used = {x for e in system for x in e.lhs + e.rhs}
    lines = []
    if len(used) != system.n:
        lines += ["[unknowns]", " ".join(symbols.names), "[equations]"]
    elif any(not e.lhs or not e.rhs for e in system):
        lines.append("[equations]")
    lines += [f"{_side_text(e.lhs, symbols)} = {_side_text(e.rhs, symbols)}" for e in system]
    return "\n".join(lines) + "\n"


def format_morphism(h: Sequence[Sequence[int]], symbols: Optional[SymbolTable] = None) -> str:
    symbols = symbols or SymbolTable.indexed_of(len(h))
    lines = []
    for i, w in enumerate(h):
        lines.append(f"{symbols.name(i)} = {format_word(w)}".rstrip())
    return "\n".join(lines) + "\n"


def format_instance(inst: PeriodicityInstance) -> str:
    lines = []
    for fixed, periods, a, b in ((inst.s, inst.u, "s", "u"), (inst.t, inst.v, "t", "v")):
        lines.append(f"{a}0 = {format_word(fixed[0])}".rstrip())
        for j, p in enumerate(periods, start=1):
            lines.append(f"{b}{j} = {format_word(p)}")
            lines.append(f"{a}{j} = {format_word(fixed[j])}".rstrip())
    return "\n".join(lines) + "\n"
