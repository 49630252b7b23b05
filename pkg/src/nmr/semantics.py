"""The four semantics: Kripke-Kleene, expansions, stable, well-founded.

Each solver returns a ``SemanticsResult``.  The Kripke-Kleene and
well-founded extensions are unique per theory and may be partial;
expansions and stable extensions are (possibly empty) lists of total
states, canonically ordered by their world-mask encoding.

Derivation traces record how world statuses were settled, one batch per
step, and can be replayed: applying the steps to the initial state must
reproduce the reported result, and ``validate_trace`` re-derives each
step's justification from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInvariantError, ResourceCapError
from .syntax import (
    BOTTOM,
    TOP,
    And,
    Formula,
    Iff,
    Implies,
    Knows,
    Not,
    Or,
    collect_modal_subformulas,
)
from .truth import TruthFunctionKind, models
from .worlds import BeliefState, PartialBeliefState, bottom_p, leq_p
from .operators import (
    NOT_STABLE,
    OperatorContext,
    RevisionLog,
    approx_step,
    moore_step,
    stable_revision,
)

#: Upper bound on distinct K-subformulas for the 2^m expansion guess loop.
DEFAULT_MODAL_CAP = 20

KK = "kk"
EXPANSION = "expansion"
STABLE = "stable"
WF = "wf"

STEP_KK = "kk"
STEP_MI = "mi"
STEP_STABLE_REMOVAL = "stable-removal"


@dataclass(frozen=True, slots=True)
class TraceStep:
    """A batch of worlds settled in one derivation step."""

    kind: str                 # STEP_KK | STEP_MI | STEP_STABLE_REMOVAL
    worlds: tuple[int, ...]   # canonical world indices
    status: str               # "t" or "f"

    @property
    def mask(self) -> int:
        m = 0
        for i in self.worlds:
            m |= 1 << i
        return m


@dataclass(frozen=True, slots=True)
class DerivationTrace:
    initial: PartialBeliefState
    steps: tuple[TraceStep, ...]
    final: PartialBeliefState

    def replay(self) -> list[PartialBeliefState]:
        """States after each step, starting from the initial state."""
        states = [self.initial]
        for step in self.steps:
            cur = states[-1]
            if step.status == "t":
                nxt = PartialBeliefState.of_masks(cur.vocabulary, cur.pp.mask,
                                                  cur.cp.mask | step.mask)
            else:
                nxt = PartialBeliefState.of_masks(cur.vocabulary, cur.pp.mask & ~step.mask,
                                                  cur.cp.mask)
            states.append(nxt)
        return states


@dataclass(frozen=True, slots=True)
class SemanticsResult:
    kind: str                                  # KK | EXPANSION | STABLE | WF
    truth: TruthFunctionKind
    results: tuple[PartialBeliefState, ...]
    traces: tuple[DerivationTrace, ...] = ()   # kk/wf: one; stable: one per extension

    def belief_states(self) -> list[BeliefState]:
        """The pp components; for total results these are the extensions themselves."""
        return [r.pp for r in self.results]


# ---------------------------------------------------------------------------
# Kripke-Kleene
# ---------------------------------------------------------------------------

def _kk_closure(ctx: OperatorContext, pb: PartialBeliefState,
                steps: list[TraceStep]) -> PartialBeliefState:
    """Iterate approx_step to its fixpoint above pb, recording steps."""
    for _ in range(2 * ctx.vocabulary.world_count + 2):
        nxt = approx_step(ctx, pb)
        if not leq_p(pb, nxt):
            raise InternalInvariantError("approx_step chain is not precision-increasing")
        if nxt == pb:
            return pb
        newly_false = pb.pp.mask & ~nxt.pp.mask
        newly_true = nxt.cp.mask & ~pb.cp.mask
        if newly_false:
            steps.append(TraceStep(STEP_KK, _indices(newly_false), "f"))
        if newly_true:
            steps.append(TraceStep(STEP_KK, _indices(newly_true), "t"))
        pb = nxt
    raise InternalInvariantError("approx_step iteration failed to converge")


def kripke_kleene_extension(ctx: OperatorContext) -> SemanticsResult:
    """The precision-least fixpoint of the three-valued revision, with trace."""
    start = bottom_p(ctx.vocabulary)
    steps: list[TraceStep] = []
    fix = _kk_closure(ctx, start, steps)
    trace = DerivationTrace(start, tuple(steps), fix)
    return SemanticsResult(KK, ctx.truth, (fix,), (trace,))


# ---------------------------------------------------------------------------
# Expansions
# ---------------------------------------------------------------------------

def reduce_by_guess(f: Formula, guess: dict[Formula, bool]) -> Formula:
    """Replace every K-subformula by the constant its guess assigns."""
    if isinstance(f, Knows):
        return TOP if guess[f.sub] else BOTTOM
    if isinstance(f, Not):
        return Not(reduce_by_guess(f.sub, guess))
    if isinstance(f, And):
        return And(reduce_by_guess(f.left, guess), reduce_by_guess(f.right, guess))
    if isinstance(f, Or):
        return Or(reduce_by_guess(f.left, guess), reduce_by_guess(f.right, guess))
    if isinstance(f, Implies):
        return Implies(reduce_by_guess(f.left, guess), reduce_by_guess(f.right, guess))
    if isinstance(f, Iff):
        return Iff(reduce_by_guess(f.left, guess), reduce_by_guess(f.right, guess))
    return f


def expansion_candidates(ctx: OperatorContext,
                         max_modal: int = DEFAULT_MODAL_CAP) -> list[BeliefState]:
    """Model sets of all 2^m guess reducts, deduplicated, mask-ascending.

    Complete: any fixpoint of the one-step revision induces the guess
    given by its own K values, under which the theory reduces to an
    objective theory whose models are exactly that fixpoint.
    """
    subs = collect_modal_subformulas(ctx.theory)
    if len(subs) > max_modal:
        raise ResourceCapError(
            f"{len(subs)} distinct K-subformulas exceed the guess cap {max_modal}"
        )
    masks: set[int] = set()
    for bits in range(1 << len(subs)):
        guess = {phi: bool(bits >> i & 1) for i, phi in enumerate(subs)}
        reduct = [reduce_by_guess(f, guess) for f in ctx.theory.formulas]
        masks.add(models(reduct, ctx.vocabulary).mask)
    return [BeliefState(ctx.vocabulary, m) for m in sorted(masks)]


def expansions(ctx: OperatorContext, max_modal: int = DEFAULT_MODAL_CAP) -> SemanticsResult:
    """All total belief states the one-step revision maps to themselves."""
    found = [b for b in expansion_candidates(ctx, max_modal) if moore_step(ctx, b) == b]
    return SemanticsResult(EXPANSION, ctx.truth,
                           tuple(PartialBeliefState.total(b) for b in found))


# ---------------------------------------------------------------------------
# Stable extensions
# ---------------------------------------------------------------------------

def stable_extensions(ctx: OperatorContext, max_modal: int = DEFAULT_MODAL_CAP) -> SemanticsResult:
    """Candidates come from the expansion guesses (stable states are
    always fixpoints of the one-step revision); each is kept iff its
    stable revision reproduces it."""
    results = []
    traces = []
    full = BeliefState.full(ctx.vocabulary)
    for b in expansion_candidates(ctx, max_modal):
        log = RevisionLog()
        outcome = stable_revision(ctx, b, log)
        if outcome is NOT_STABLE or outcome != b:
            continue
        steps = tuple(TraceStep(STEP_STABLE_REMOVAL, _indices(m), "f") for m in log.removals)
        results.append(PartialBeliefState.total(b))
        traces.append(DerivationTrace(PartialBeliefState(full, b), steps,
                                      PartialBeliefState.total(b)))
    return SemanticsResult(STABLE, ctx.truth, tuple(results), tuple(traces))


# ---------------------------------------------------------------------------
# Well-founded extension
# ---------------------------------------------------------------------------

def greatest_unfounded_set(ctx: OperatorContext, pb: PartialBeliefState) -> int:
    """Mask of the largest set U of unknown worlds that can jointly be
    assumed certainly possible: every member must evaluate the theory
    to true once all of U is so assumed.

    Computed as the greatest fixpoint of that self-supporting condition
    by downward iteration from all unknown worlds (the condition is
    monotone in U, so the limit contains every unfounded set).
    """
    unknown = pb.unknown_mask
    u = unknown
    for _ in range(ctx.vocabulary.world_count + 2):
        t_mask, _ = ctx.status_masks(pb.pp.mask, pb.cp.mask | u)
        nxt = t_mask & unknown
        if nxt == u:
            return u
        if nxt & ~u:
            raise InternalInvariantError("unfounded-set iteration is not decreasing")
        u = nxt
    raise InternalInvariantError("unfounded-set iteration failed to converge")


def well_founded_extension(ctx: OperatorContext) -> SemanticsResult:
    """Alternate the Kripke-Kleene closure with maximize-ignorance steps.

    Every pass closes under the three-valued revision, then turns the
    greatest unfounded set into certainly possible worlds; the run
    halts when that set is empty.  Each maximize-ignorance step only
    ever adds certainly possible worlds, and a later contradiction of
    one would break the precision-increasing chain, which is checked.
    """
    start = bottom_p(ctx.vocabulary)
    steps: list[TraceStep] = []
    pb = start
    for _ in range(ctx.vocabulary.world_count + 2):
        pb = _kk_closure(ctx, pb, steps)
        u = greatest_unfounded_set(ctx, pb)
        if not u:
            break
        steps.append(TraceStep(STEP_MI, _indices(u), "t"))
        pb = pb.with_certainly_possible(u)
    else:
        raise InternalInvariantError("well-founded iteration failed to converge")
    trace = DerivationTrace(start, tuple(steps), pb)
    return SemanticsResult(WF, ctx.truth, (pb,), (trace,))


# ---------------------------------------------------------------------------
# Trace replay and validation
# ---------------------------------------------------------------------------

def replay_trace(trace: DerivationTrace) -> PartialBeliefState:
    """Structurally replay the steps; the result must equal the recorded final state."""
    final = trace.replay()[-1]
    if final != trace.final:
        raise InternalInvariantError("trace replay does not reproduce the final state")
    return final


def validate_trace(ctx: OperatorContext, trace: DerivationTrace) -> None:
    """Re-derive every step's justification.

    A kk step may only settle unknown worlds, to the value the theory
    actually takes there; an mi step must name a self-supporting set of
    unknown worlds; a stable-removal step may only delete worlds where
    the theory is false.  Raises on the first violation.
    """
    states = trace.replay()
    for step, state in zip(trace.steps, states):
        if step.kind == STEP_KK:
            if step.mask & ~state.unknown_mask:
                raise InternalInvariantError("kk step touches a settled world")
            t_mask, f_mask = ctx.status_masks(state.pp.mask, state.cp.mask)
            want = t_mask if step.status == "t" else f_mask
            if step.mask & ~want:
                raise InternalInvariantError("kk step not justified by the truth function")
        elif step.kind == STEP_MI:
            if step.status != "t" or step.mask & ~state.unknown_mask:
                raise InternalInvariantError("mi step must make unknown worlds possible")
            t_mask, _ = ctx.status_masks(state.pp.mask, state.cp.mask | step.mask)
            if step.mask & ~t_mask:
                raise InternalInvariantError("mi step set is not unfounded")
        elif step.kind == STEP_STABLE_REMOVAL:
            if step.status != "f" or step.mask & ~state.pp.mask:
                raise InternalInvariantError("stable removal of an already impossible world")
            _, f_mask = ctx.status_masks(state.pp.mask, state.cp.mask)
            if step.mask & ~f_mask:
                raise InternalInvariantError("stable removal not justified")
        else:
            raise InternalInvariantError(f"unknown trace step kind {step.kind!r}")
    if states[-1] != trace.final:
        raise InternalInvariantError("trace replay does not reproduce the final state")


def _indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)
