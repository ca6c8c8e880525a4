"""Exact learning of piecewise functions and symbolic automata over Q."""

from .learner import (
    BreakLinkStore,
    LearnerReport,
    PiecewiseLearner,
    construct_representation,
    find_break_link,
    find_closest_ancestor,
    learn,
)
from .pwf import (
    Interval,
    PiecewiseRepresentation,
    bounds_of,
    canonicalize,
    evaluate,
    first_disagreement,
    is_monochromatic,
    parse_interval,
    parse_representation,
    simplest_rational_in,
    size_of,
)
from .rational import INF, NEG_INF, ExtendedRational, Q, bit_size, parse_rational
from .sfa import SymbolicAutomaton, find_accepted_word, make_sfa_teacher, product
from .sfa_learner import SfaLearnerReport, learn_sfa
from .sternbrocot import (
    SBEncoding,
    SBNode,
    convergents,
    is_ancestor,
    node_of,
    parent,
    sb_decode,
    sb_encode,
)
from .teacher import (
    CounterexampleStrategy,
    EquivalenceOracle,
    MembershipOracle,
    TeacherInconsistency,
    make_simulated_teacher,
    parse_strategy,
)

__version__ = "0.1.0"

__all__ = [
    "BreakLinkStore",
    "LearnerReport",
    "PiecewiseLearner",
    "construct_representation",
    "find_break_link",
    "find_closest_ancestor",
    "learn",
    "Interval",
    "PiecewiseRepresentation",
    "bounds_of",
    "canonicalize",
    "evaluate",
    "first_disagreement",
    "is_monochromatic",
    "parse_interval",
    "parse_representation",
    "simplest_rational_in",
    "size_of",
    "INF",
    "NEG_INF",
    "ExtendedRational",
    "Q",
    "bit_size",
    "parse_rational",
    "SymbolicAutomaton",
    "find_accepted_word",
    "make_sfa_teacher",
    "product",
    "SfaLearnerReport",
    "learn_sfa",
    "SBEncoding",
    "SBNode",
    "convergents",
    "is_ancestor",
    "node_of",
    "parent",
    "sb_decode",
    "sb_encode",
    "CounterexampleStrategy",
    "EquivalenceOracle",
    "MembershipOracle",
    "TeacherInconsistency",
    "make_simulated_teacher",
    "parse_strategy",
]
