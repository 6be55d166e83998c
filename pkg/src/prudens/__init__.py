"""Exact solver and cross-verifier for cautious reasoning in finite
sequential games: iterated admissibility and the two belief-based
cautious procedures, with per-instance machine-checked witnesses."""

from .beliefs import (ConditioningFamily, ExplicitCPS, PriorCNPS,
                      c_strongly_believes, cautiously_believes,
                      strongly_believes, validate_chain_rule, weakly_believes)
from .best_reply import (expected_payoff, sequential_best_replies,
                         weak_sequential_best_replies)
from .dominance import (MixedStrategy, justifying_full_support_measure,
                        weakly_dominated)
from .dsl import GameDoc, elaborate, load, parse, serialize
from .game import Game, ProductRestriction, Strategy
from .generator import generate_game, generate_random_game
from .hyperreal import (DegreeOverflow, Hyperreal, infinitely_greater,
                        parse_hyperreal, ratio_st_is_zero)
from .procedures import (EquivalenceViolation, ProcedureTrace,
                         iterated_admissibility,
                         prudent_rationalizability_cnps,
                         prudent_rationalizability_cps, reduced_variants,
                         sophistication_index, verify_equivalences)

__version__ = "0.1.0"

__all__ = [
    "ConditioningFamily", "ExplicitCPS", "PriorCNPS",
    "c_strongly_believes", "cautiously_believes", "strongly_believes",
    "validate_chain_rule", "weakly_believes",
    "expected_payoff", "sequential_best_replies",
    "weak_sequential_best_replies",
    "MixedStrategy", "justifying_full_support_measure", "weakly_dominated",
    "GameDoc", "elaborate", "load", "parse", "serialize",
    "Game", "ProductRestriction", "Strategy",
    "generate_game", "generate_random_game",
    "DegreeOverflow", "Hyperreal", "infinitely_greater", "parse_hyperreal",
    "ratio_st_is_zero",
    "EquivalenceViolation", "ProcedureTrace", "iterated_admissibility",
    "prudent_rationalizability_cnps", "prudent_rationalizability_cps",
    "reduced_variants", "sophistication_index", "verify_equivalences",
]
