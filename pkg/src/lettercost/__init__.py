"""Prefix-free codes over alphabets with unequal letter costs.

Builds codes whose probability-weighted cost is within a (1 + O(epsilon))
factor of the optimum, in time polynomial in the number of words for each
fixed epsilon, together with exact small-instance oracles that verify the
guarantee.
"""

from .core import (
    CodeAssignment,
    CodewordTrie,
    GLYPHS,
    Instance,
    InstanceError,
    LetterCosts,
    NormalizedInstance,
    code_cost,
    codeword_cost,
    is_k_prefix_free,
    is_prefix_free,
    normalize,
    reorder,
)
from .cost_graph import (
    CostGraph,
    FreeStringTable,
    Inconsistent,
    build_cost_graph,
    count_free_strings,
    extend_beyond_k,
)
from .kprefix import Guess, LeveledCode, construct_leveled, select_level_codewords
from .convert import convert_to_prefix, enc
from .driver import (
    BudgetExceeded,
    C_TOTAL,
    CodeReport,
    Grouping,
    choose_k,
    enumerate_guesses,
    group_words,
    solve,
    solve_tiny_ell1,
)
from .oracles import OracleResult, exact_optimal, huffman_equal_costs, lower_bound

__all__ = [
    "BudgetExceeded",
    "C_TOTAL",
    "CodeAssignment",
    "CodeReport",
    "CodewordTrie",
    "CostGraph",
    "FreeStringTable",
    "GLYPHS",
    "Grouping",
    "Guess",
    "Inconsistent",
    "Instance",
    "InstanceError",
    "LetterCosts",
    "LeveledCode",
    "NormalizedInstance",
    "OracleResult",
    "build_cost_graph",
    "choose_k",
    "code_cost",
    "codeword_cost",
    "construct_leveled",
    "convert_to_prefix",
    "count_free_strings",
    "enc",
    "enumerate_guesses",
    "exact_optimal",
    "extend_beyond_k",
    "group_words",
    "huffman_equal_costs",
    "is_k_prefix_free",
    "is_prefix_free",
    "lower_bound",
    "normalize",
    "reorder",
    "select_level_codewords",
    "solve",
    "solve_tiny_ell1",
]
