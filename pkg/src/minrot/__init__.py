"""Minimal string rotation by divide and conquer, classically executed with
an idealized quantum query-cost ledger."""

from .strings import (
    Ordering,
    MinSubstrings,
    as_bytes,
    rotation,
    lex_compare,
    prefix_function,
    period,
    lmsr_booth,
    lmsr_brute,
    min_substrings_brute,
)
from .ledger import (
    CostKind,
    CostModel,
    QueryLedger,
    NoisyComparator,
    robust_minfind,
)
from .sampling import DeterministicSample, size_cap, verify_ds, build_ds
from .matching import MatchResult, match_with_ds, match_full
from .solver import (
    FunctionParams,
    SubproblemAnswer,
    block_count,
    min_len_substring_dnc,
    lmsr_function,
    exclusion_holds,
    preprocess_ds_table,
    decide_min_substrings,
    compute_g,
    lmsr_decision,
)
from .recurrences import (
    MasterSolution,
    FitReport,
    master_solve,
    iterate_function_recurrence,
    verify_limit,
    iterate_decision_recurrence,
    fit_scaling,
)

__version__ = "0.1.0"
