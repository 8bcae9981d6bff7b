"""Exact polynomial encodings of words and word equations."""

from .cover import (
    Cover,
    Subspace,
    balance_check,
    candidate_subspaces,
    chain_bound,
    minor,
    pair_form_check,
    prune_cover,
)
from .dsl import SymbolTable, parse_dsl, parse_equation, parse_morphism, parse_system
from .equations import (
    EquationSystem,
    WordEquation,
    apply,
    equations_graph,
    is_balanced,
    is_solution,
    is_trivial,
    q_polynomial,
    rank_bound,
    s_polynomial,
    same_solutions_at,
    weqpeq_residual,
)
from .errors import *  # noqa: F401,F403
from .lhp import GenPoly, evaluate_at, precedes, split_signs
from .nielsen import Decomposition, decompose, recompose
from .oracle import SearchBound, check_chain, check_independent, combinatorial_rank, enumerate_solutions
from .periodicity import PeriodicityInstance, expand, group_coefficients, implies_all
from .polyring import IntPoly, PolyMatrix, det, rank
from .words import commutation_report, decode, encode, encode_power, fine_wilf_check, primitive_root

__version__ = "0.1.0"
