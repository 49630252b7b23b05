"""Solver library for propositional autoepistemic and default logic.

Computes the Kripke-Kleene, expansion, stable, and well-founded
semantics over possible-world sets, under the three-valued or the
supervaluation truth function, plus default logic via its modal
translation and a direct Reiter-extension procedure.
"""

from .errors import (
    InternalInvariantError,
    NmrError,
    ParseError,
    ResourceCapError,
    VocabularyMismatchError,
)
from .worlds import (
    BeliefState,
    PartialBeliefState,
    Vocabulary,
    World,
    bottom_p,
    enumerate_worlds,
    leq_k,
    leq_p,
)
from .syntax import (
    And,
    Atom,
    Bottom,
    Formula,
    Iff,
    Implies,
    KOccurrence,
    Knows,
    Not,
    Or,
    Polarity,
    Theory,
    Top,
    collect_modal_subformulas,
    modal_polarities,
    objective,
    only_negative,
    parse_formula,
    parse_theory,
    print_formula,
    print_theory,
)
from .truth import (
    TruthFunctionKind,
    TruthValue3,
    entails,
    eval_kleene,
    eval_kleene_theory,
    eval_s5,
    eval_sv,
    eval_sv_formula,
    models,
)
from .operators import (
    NOT_STABLE,
    NotStableSignal,
    OperatorContext,
    approx_step,
    kk_lfp,
    klfp_moore,
    moore_step,
    stable_revision,
)
from .semantics import (
    DerivationTrace,
    SemanticsResult,
    TraceStep,
    expansions,
    kripke_kleene_extension,
    replay_trace,
    stable_extensions,
    validate_trace,
    well_founded_extension,
)
from .defaults import (
    AlignReport,
    Default,
    DefaultTheory,
    align_check,
    dl_semantics,
    gamma_operator,
    konolige,
    parse_default_theory,
    reiter_extensions,
)
from .oracle import OracleBudget, algebraic_wf, brute_expansions, brute_stable

__version__ = "0.1.0"
