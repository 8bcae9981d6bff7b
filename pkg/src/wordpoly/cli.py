"""Command-line interface: one subcommand per analysis, JSON on stdout.

Exit codes: 0 success, 1 negative analysis result, 2 usage or input error,
3 search budget exceeded.  Every integer in the JSON output is written as a
decimal string.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import cover as cov
from . import dsl
from .equations import (
    EquationSystem,
    WordEquation,
    equations_graph,
    is_balanced,
    is_solution,
    q_polynomials,
    rank_bound,
    s_polynomials,
    same_solutions_at,
    weqpeq_residual,
)
from .errors import (
    BudgetExceededError,
    NotASolutionError,
    ParseError,
    TheoremViolation,
    WordPolyError,
)
from .lhp import format_form, format_genpoly
from .nielsen import (
    decompose,
    decomposition_to_dict,
    length_type_cone,
    occurrence_matrix,
    principal_solution,
)
from .oracle import (
    DEFAULT_CAP,
    SearchBound,
    check_chain,
    check_independent,
    combinatorial_rank,
    enumerate_solutions,
)
from .periodicity import implies_all
from .polyring import format_poly
from .words import (
    commutation_report,
    encode,
    fine_wilf_check,
    format_word,
    parse_word,
    primitive_root,
)

SCHEMA = "wordpoly/1"

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class _Negative(Exception):
    """Carries a result whose analysis outcome is negative (exit 1)."""

    def __init__(self, payload: dict):
        self.payload = payload


# -- JSON helpers ---------------------------------------------------------------

def _num(x: int) -> str:
    return str(int(x))


def _nums(xs: Sequence[int]) -> list[str]:
    return [_num(x) for x in xs]


def _morphism(h, symbols: dsl.SymbolTable) -> dict[str, str]:
    return {symbols.name(i): format_word(w) for i, w in enumerate(h)}


def _matrix(m) -> list[list[str]]:
    return m.to_strings()


def _bound_json(b: SearchBound) -> dict:
    return {"max_lengths": _nums(b.max_lengths), "alphabet_size": _num(b.alphabet_size)}


# -- input helpers --------------------------------------------------------------

def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load(paths: Sequence[str]) -> tuple[list[dsl.RawFile], dsl.SymbolTable]:
    raws = []
    for p in paths:
        try:
            raws.append(dsl.read(_read_text(p)))
        except ParseError as exc:
            raise ParseError(exc.message, exc.line, exc.column, source=p) from None
    return raws, dsl.collect_names(raws)


def _system(raw: dsl.RawFile, symbols: dsl.SymbolTable) -> EquationSystem:
    if raw.kind not in (None, dsl.EQUATIONS):
        raise ParseError(f"expected an equation file, found {raw.kind}")
    return dsl.build_system(raw, symbols)


def _morph(raw: dsl.RawFile, symbols: dsl.SymbolTable):
    if raw.kind not in (None, dsl.MORPHISM):
        raise ParseError(f"expected a morphism file, found {raw.kind}")
    return dsl.build_morphism(raw, symbols)


def _ints(text: str, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad {what} {text!r}") from None
    if any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError(f"negative entry in {what} {text!r}")
    return vals


def _length_type(text: str) -> tuple[int, ...]:
    return _ints(text, "length type")


def _pair_arg(text: str) -> tuple[int, int]:
    vals = _ints(text, "minor")
    if len(vals) != 2 or 0 in vals:
        raise argparse.ArgumentTypeError("minor must be two 1-based indices k,l")
    return vals[0] - 1, vals[1] - 1


def _search_bound(args, n: int) -> SearchBound:
    if args.bound is None:
        raise ParseError("this command needs --bound")
    b = args.bound
    if len(b) == 1:
        b = b * n
    if len(b) != n:
        raise ParseError(f"--bound has {len(b)} entries for {n} unknowns")
    return SearchBound(b, args.alphabet)


def _check_lengths(lengths: tuple[int, ...], n: int) -> None:
    if len(lengths) != n:
        raise ParseError(f"--length-type has {len(lengths)} entries for {n} unknowns")


def _pair(paths: Sequence[str]) -> tuple[WordEquation, WordEquation, dsl.SymbolTable]:
    raws, symbols = _load(paths)
    eqs = [e for r in raws for e in _system(r, symbols)]
    if len(eqs) != 2:
        raise ParseError(f"expected two equations in total, found {len(eqs)}")
    return eqs[0], eqs[1], symbols


# -- commands -------------------------------------------------------------------

def cmd_encode(args) -> dict:
    w = parse_word(args.word)
    return {"word": format_word(w), "polynomial": format_poly(encode(w))}


def cmd_primitive_root(args) -> dict:
    root, k = primitive_root(parse_word(args.word))
    return {"root": format_word(root), "exponent": _num(k)}


def cmd_commutation(args) -> dict:
    r = commutation_report(parse_word(args.u), parse_word(args.v), args.max_factors)
    return {
        "rho_equal": r.rho_equal,
        "all_equal_length_products_equal": r.all_equal_length_products_equal,
        "nontrivial_relation_exists": r.nontrivial_relation_exists,
        "rational_encodings_equal": r.rational_encodings_equal,
        "consistent": r.consistent,
    }


def cmd_fine_wilf(args) -> dict:
    r = fine_wilf_check(parse_word(args.u), parse_word(args.v))
    return {
        "bound": _num(r.bound),
        "common_prefix_len": _num(r.common_prefix_len),
        "applies": r.applies,
        "roots_equal": r.roots_equal,
    }


def cmd_check(args) -> dict:
    (eq_raw, sol_raw), symbols = _load([args.equations, args.solution])
    system = _system(eq_raw, symbols)
    h = _morph(sol_raw, symbols)
    rows = []
    for e in system:
        rows.append({
            "equation": _eq_text(e, symbols),
            "solution": is_solution(h, e),
            "residual": format_poly(weqpeq_residual(e, h)),
        })
    out = {"morphism": _morphism(h, symbols), "equations": rows, "solution": all(r["solution"] for r in rows)}
    if not out["solution"]:
        raise _Negative(out)
    return out


def _eq_text(e: WordEquation, symbols: dsl.SymbolTable) -> str:
    return dsl.format_system(EquationSystem((e,), e.n), symbols).strip().splitlines()[-1]


def cmd_qpoly(args) -> dict:
    (raw,), symbols = _load([args.equations])
    system = _system(raw, symbols)
    _check_lengths(args.length_type, system.n)
    return {
        "length_type": _nums(args.length_type),
        "equations": [
            {
                "equation": _eq_text(e, symbols),
                "q": {symbols.name(i): format_poly(q) for i, q in enumerate(q_polynomials(e, args.length_type))},
            }
            for e in system
        ],
    }


def cmd_spoly(args) -> dict:
    (raw,), symbols = _load([args.equations])
    system = _system(raw, symbols)
    return {
        "variables": [f"X{i + 1}" for i in range(system.n)],
        "equations": [
            {
                "equation": _eq_text(e, symbols),
                "s": {symbols.name(i): format_genpoly(s) for i, s in enumerate(s_polynomials(e))},
                "balanced": is_balanced(e),
            }
            for e in system
        ],
    }


def cmd_rank_bound(args) -> dict:
    (raw,), symbols = _load([args.equations])
    system = _system(raw, symbols)
    _check_lengths(args.length_type, system.n)
    r = rank_bound(system, args.length_type)
    return {
        "length_type": _nums(args.length_type),
        "matrix": _matrix(r.matrix),
        "rank": _num(r.matrix_rank),
        "bound": _num(r.max_solution_rank),
    }


def cmd_same_at(args) -> dict:
    (raw,), symbols = _load([args.equations])
    system = _system(raw, symbols)
    _check_lengths(args.length_type, system.n)
    same = same_solutions_at(system, args.length_type)
    return {"length_type": _nums(args.length_type), "same_solutions": same}


def cmd_graph(args) -> dict:
    (raw,), symbols = _load([args.equations])
    g = equations_graph(_system(raw, symbols))
    return {
        "edges": [[symbols.name(a), symbols.name(b)] for a, b in g.edges],
        "component_count": _num(g.component_count),
        "components": [[symbols.name(x) for x in c] for c in g.components],
    }


def cmd_decompose(args) -> dict:
    (eq_raw, sol_raw), symbols = _load([args.equation, args.solution])
    system = _system(eq_raw, symbols)
    if len(system) != 1:
        raise ParseError(f"decompose needs exactly one equation, found {len(system)}")
    h = _morph(sol_raw, symbols)
    d = decompose(system[0], h)
    data = decomposition_to_dict(d)
    name = symbols.name
    return {
        "erased": [name(x) for x in data["erased"]],
        "steps": [{"kind": s["kind"], "x": name(s["x"]), "y": name(s["y"])} for s in data["steps"]],
        "theta": _morphism(d.theta, symbols),
        "s": _num(d.s),
        "t": _num(d.t),
        "rank_bound": _num(d.rank_bound),
        "principal_solution": {name(i): " ".join(name(x) for x in w) for i, w in enumerate(principal_solution(d))},
        "occurrence_matrix": [_nums(r) for r in occurrence_matrix(d, len(d.steps))],
        "cone": [_nums(g) for g in length_type_cone(d)],
    }


def _cover_json(c: cov.Cover, symbols: dsl.SymbolTable) -> dict:
    items = []
    for i, (v, (p, q)) in enumerate(zip(c.subspaces, c.provenance)):
        item = {"normal": _nums(v.normal), "equation": str(v), "p": format_form(p), "q": format_form(q)}
        if c.witnesses is not None:
            item["witness"] = _morphism(c.witnesses[i], symbols)
        items.append(item)
    out: dict[str, Any] = {
        "mode": c.mode,
        "minors": [[_num(k + 1), _num(l + 1)] for k, l in c.minors],
        "pruned": c.pruned,
        "size": _num(len(c)),
        "subspaces": items,
    }
    if c.search_bound is not None:
        out["search_bound"] = _bound_json(c.search_bound)
        out["uncovered"] = [_morphism(h, symbols) for h in c.uncovered]
    return out


def cmd_cover(args) -> dict:
    e1, e2, symbols = _pair(args.equations)
    c = cov.candidate_subspaces(e1, e2, args.mode, minor_index=args.minor, intersect=args.intersect)
    if args.prune:
        c = cov.prune_cover(c, e1, e2, _search_bound(args, e1.n), jobs=args.jobs)
    return _cover_json(c, symbols)


def cmd_chain_bound(args) -> dict:
    e1, e2, symbols = _pair(args.equations)
    sb = _search_bound(args, e1.n) if args.mode == cov.PRUNED else None
    r = cov.chain_bound(e1, e2, args.mode, search_bound=sb, minor_index=args.minor, jobs=args.jobs)
    return {
        "N": _num(r.N),
        "bound": _num(r.bound),
        "worst_case": _num(r.worst_case),
        "cover": _cover_json(r.cover, symbols),
    }


def cmd_balance_check(args) -> dict:
    e1, e2, symbols = _pair(args.equations)
    r = cov.balance_check(e1, e2, _search_bound(args, e1.n), jobs=args.jobs)
    out = {
        "status": r.status,
        "relation": _nums(r.relation),
        "witness": _morphism(r.witness, symbols) if r.witness is not None else None,
        "checked": _num(r.checked),
        "counterexamples": [_morphism(h, symbols) for h in r.counterexamples],
        "relation_holds": r.relation_holds,
        "search_bound": _bound_json(r.search_bound),
    }
    if r.status == "violated":
        raise _Negative(out)
    return out


def cmd_pair_form(args) -> dict:
    (a, b, sol), symbols = _load([args.e1, args.e2, args.solution])
    eqs = [e for r in (a, b) for e in _system(r, symbols)]
    if len(eqs) != 2:
        raise ParseError(f"expected two equations in total, found {len(eqs)}")
    h = _morph(sol, symbols)
    r = cov.pair_form_check(eqs[0], eqs[1], h)
    return {
        "k": _num(r.k) if r.k is not None else None,
        "reason": r.reason,
        "roles": [symbols.name(x) for x in r.roles] if r.roles else None,
        "rank": _num(r.rank) if r.rank is not None else None,
    }


def cmd_periodicity(args) -> dict:
    raw = dsl.read(_read_text(args.instance))
    if raw.kind != dsl.INSTANCE:
        raise ParseError(f"expected an instance file, found {raw.kind}")
    inst = dsl.build_instance(raw)
    values = args.values if args.values is not None else tuple(range(inst.m + inst.n))
    r = implies_all(inst, values)
    out = {
        "values": _nums(r.values),
        "required_values": _num(r.required_values),
        "holds_on_values": r.holds_on_values,
        "holds_for_all": r.holds_for_all,
        "certificate": None,
    }
    if r.certificate is not None:
        out["certificate"] = {
            "denominator": format_poly(r.certificate.denominator),
            "groups": [{"slope": _num(c), "coefficient": format_poly(y)} for c, y in r.certificate.groups],
        }
    if not r.holds_on_values:
        raise _Negative(out)
    return out


def cmd_enumerate(args) -> dict:
    (raw,), symbols = _load([args.equations])
    system = _system(raw, symbols)
    b = _search_bound(args, system.n)
    sols = enumerate_solutions(system, b, exact=args.exact, jobs=args.jobs, cap=args.cap)
    return {
        "search_bound": _bound_json(b),
        "exact": args.exact,
        "count": _num(len(sols)),
        "solutions": [_morphism(h, symbols) for h in sols],
    }


def cmd_rank(args) -> dict:
    (raw,), symbols = _load([args.solution])
    h = _morph(raw, symbols)
    return {"morphism": _morphism(h, symbols), "rank": _num(combinatorial_rank(h))}


def _witness_json(report, symbols) -> dict:
    return {
        "search_bound": _bound_json(report.bound),
        "required_rank": _num(report.required_rank) if report.required_rank is not None else None,
        "witnesses": [_morphism(w, symbols) if w is not None else None for w in report.witnesses],
        "confirmed": report.confirmed,
    }


def cmd_independent(args) -> dict:
    (raw,), symbols = _load([args.equations])
    system = _system(raw, symbols)
    out = _witness_json(check_independent(system, _search_bound(args, system.n), jobs=args.jobs, cap=args.cap), symbols)
    if not out["confirmed"]:
        raise _Negative(out)
    return out


def cmd_chain(args) -> dict:
    (raw,), symbols = _load([args.equations])
    system = _system(raw, symbols)
    rep = check_chain(
        system, _search_bound(args, system.n), required_rank=args.rank, jobs=args.jobs, cap=args.cap
    )
    out = _witness_json(rep, symbols)
    if not out["confirmed"]:
        raise _Negative(out)
    return out


# -- parser ---------------------------------------------------------------------

def _oracle_flags(p: argparse.ArgumentParser, bound_required: bool = False) -> None:
    p.add_argument("--bound", type=_length_type, required=bound_required,
                   help="max image lengths, one per unknown or a single value")
    p.add_argument("--alphabet", type=int, default=2, help="alphabet size (default 2)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the oracle")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wordpoly", description="Polynomial methods for word equations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="polynomial encoding of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("primitive-root", help="primitive root and exponent")
    p.add_argument("word")
    p.set_defaults(func=cmd_primitive_root)

    p = sub.add_parser("commutation", help="four equivalent commutation conditions")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--max-factors", type=int, default=4)
    p.set_defaults(func=cmd_commutation)

    p = sub.add_parser("fine-wilf", help="periodicity bound for two words")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_fine_wilf)

    p = sub.add_parser("check", help="solution test with polynomial residual")
    p.add_argument("equations")
    p.add_argument("solution")
    p.set_defaults(func=cmd_check)

    for name, func, help_ in (
        ("qpoly", cmd_qpoly, "q-polynomials at a length type"),
        ("rank-bound", cmd_rank_bound, "rank of the q-matrix and the solution rank bound"),
        ("same-at", cmd_same_at, "rank-1 test for equal solution sets at a length type"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("equations")
        p.add_argument("--length-type", type=_length_type, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("spoly", help="generalized s-polynomials")
    p.add_argument("equations")
    p.set_defaults(func=cmd_spoly)

    p = sub.add_parser("graph", help="graph of leading unknowns")
    p.add_argument("equations")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("decompose", help="factor a solution through elementary transformations")
    p.add_argument("equation")
    p.add_argument("solution")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("cover", help="hyperplanes covering rank n-1 length types of a pair")
    p.add_argument("equations", nargs="+", help="one file with two equations, or two files")
    p.add_argument("--mode", choices=[cov.MINIMAL, cov.NAIVE], default=cov.MINIMAL)
    p.add_argument("--minor", type=_pair_arg, help="1-based column pair k,l")
    p.add_argument("--intersect", action="store_true", help="intersect over all nonzero minors")
    p.add_argument("--prune", action="store_true", help="keep hyperplanes with an oracle witness")
    _oracle_flags(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("chain-bound", help="bound on chains starting with a pair")
    p.add_argument("equations", nargs="+")
    p.add_argument("--mode", choices=[cov.MINIMAL, cov.NAIVE, cov.PRUNED], default=cov.MINIMAL)
    p.add_argument("--minor", type=_pair_arg)
    _oracle_flags(p)
    p.set_defaults(func=cmd_chain_bound)

    p = sub.add_parser("balance-check", help="unbalanced first equation forces the second")
    p.add_argument("equations", nargs="+")
    _oracle_flags(p, bound_required=True)
    p.set_defaults(func=cmd_balance_check)

    p = sub.add_parser("pair-form", help="syntactic shape of a pair with a rank n-1 solution")
    p.add_argument("e1")
    p.add_argument("e2")
    p.add_argument("solution")
    p.set_defaults(func=cmd_pair_form)

    p = sub.add_parser("periodicity", help="identity in an exponent from finitely many values")
    p.add_argument("instance")
    p.add_argument("--values", type=lambda s: _ints(s, "values"), help="exponents, default 0..m+n-1")
    p.set_defaults(func=cmd_periodicity)

    p = sub.add_parser("enumerate", help="all solutions within a bound")
    p.add_argument("equations")
    p.add_argument("--exact", action="store_true", help="only the length type given by --bound")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    _oracle_flags(p, bound_required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("rank", help="combinatorial rank of a morphism")
    p.add_argument("solution")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("independent", help="independence witnesses within a bound")
    p.add_argument("equations")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    _oracle_flags(p, bound_required=True)
    p.set_defaults(func=cmd_independent)

    p = sub.add_parser("chain", help="chain witnesses within a bound")
    p.add_argument("equations")
    p.add_argument("--rank", type=int, help="only witnesses of this combinatorial rank")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    _oracle_flags(p, bound_required=True)
    p.set_defaults(func=cmd_chain)

    return parser


def _emit(command: str, body: dict, stream) -> None:
    doc = {"schema": SCHEMA, "command": command}
    doc.update(body)
    stream.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def _error(kind: str, exc: Exception) -> dict:
    err: dict[str, Any] = {"type": kind, "message": str(exc)}
    if isinstance(exc, ParseError) and exc.line:
        err["line"] = _num(exc.line)
        err["column"] = _num(exc.column)
    return {"error": err}


def main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        parser.print_usage(sys.stderr)
        print("wordpoly: error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        body = args.func(args)
    except _Negative as neg:
        _emit(args.command, neg.payload, out)
        return EXIT_NEGATIVE
    except BudgetExceededError as exc:
        _emit(args.command, _error("budget-exceeded", exc), out)
        return EXIT_BUDGET
    except (NotASolutionError, TheoremViolation) as exc:
        kind = "not-a-solution" if isinstance(exc, NotASolutionError) else "theorem-violation"
        _emit(args.command, _error(kind, exc), out)
        return EXIT_NEGATIVE
    except WordPolyError as exc:
        _emit(args.command, _error(type(exc).__name__, exc), out)
        return EXIT_USAGE
    _emit(args.command, body, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
