"""Topological dynamics of one-dimensional cellular automata.

Exact surjectivity and injectivity decisions, blocking-word certification,
column traces of spatially periodic points and periodic factors built from
them.
"""

from .core import (
    Alphabet,
    BudgetExceeded,
    CyclicConfiguration,
    LocalRule,
    PreconditionError,
    SpaceTimeBlock,
    apply_rule_word,
    compose,
    distance,
    eca,
    identity_rule,
    is_identity_rule,
    iterate_cyclic,
    iterate_rule,
    rule_from_function,
    same_map,
    spacetime,
    step_cyclic,
)
from .decision import (
    build_debruijn,
    count_preimages,
    find_diamond,
    is_diamond,
    is_injective,
    is_surjective,
)
from .blocking import (
    AlmostEquicontinuousEvidence,
    BlockingQuery,
    Budgets,
    Certified,
    EquicontinuousCertified,
    Inconclusive,
    Refuted,
    SensitiveEvidence,
    Unknown,
    abstract_step,
    classify_kurka,
    find_blocking_words,
    refute_blocking,
    replay_witness,
    verify_blocking,
)
from .trace import (
    class_forward_consistency,
    column_trace,
    embed_periodic,
    orbit_cycle,
    same_gilman_class,
)
from .factor import (
    IllDefinedFactor,
    PeriodicFactor,
    build_factor,
    divisor_check,
    period_spectrum,
    verify_factor,
)
from .zoo import ZOO, load_rule

__version__ = "0.1.0"
