"""Semantic operators on belief states and their fixpoint iterations.

* ``moore_step`` is the classical one-step revision: keep exactly the
  worlds that satisfy the theory under the current belief state.
* ``approx_step`` is its three-valued counterpart on partial states:
  worlds where the theory is false become certainly impossible, worlds
  where it is true become certainly possible, the rest stay unknown.
  It agrees with ``moore_step`` on total states and is monotone in the
  precision order, which makes its iteration from the fully unknown
  state converge to the least fixpoint (``kk_lfp``).
* ``stable_revision`` rebuilds the impossible worlds of a candidate
  belief state b while keeping b's ignorance pinned: starting from all
  worlds, it repeatedly deletes the worlds where the theory is false
  relative to (current, b).  b is a stable extension exactly when the
  iteration lands back on b.
* ``klfp_moore`` iterates ``moore_step`` downward from the full world
  set; for theories whose K occurrences are all negative the operator
  is monotone, so this reaches its knowledge-least fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalInvariantError
from .syntax import Theory, only_negative
from .truth import (
    DEFAULT_COMPLETION_CAP,
    TruthFunctionKind,
    s5_theory_mask,
    theory_status_masks,
)
from .worlds import BeliefState, PartialBeliefState, Vocabulary, bottom_p, leq_p


@dataclass(frozen=True, slots=True)
class OperatorContext:
    """A theory plus the truth function its operators evaluate with."""

    theory: Theory
    truth: TruthFunctionKind = TruthFunctionKind.KLEENE
    sv_cap: int = DEFAULT_COMPLETION_CAP

    @property
    def vocabulary(self) -> Vocabulary:
        return self.theory.vocabulary

    def status_masks(self, pp_mask: int, cp_mask: int) -> tuple[int, int]:
        return theory_status_masks(self.theory, pp_mask, cp_mask, self.truth, self.sv_cap)


class NotStableSignal:
    """Returned by ``stable_revision`` when the candidate is unreachable.

    A normal return variant, not an error: it reports that the
    derivation deleted a world of the candidate itself, after which the
    candidate can never be reproduced.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NOT_STABLE"


NOT_STABLE = NotStableSignal()


def moore_step(ctx: OperatorContext, b: BeliefState) -> BeliefState:
    """All worlds satisfying the theory classically under b."""
    _check_vocab(ctx, b.vocabulary)
    return BeliefState(b.vocabulary, s5_theory_mask(ctx.theory, b.mask))


def approx_step(ctx: OperatorContext, pb: PartialBeliefState) -> PartialBeliefState:
    """One three-valued revision step; always yields a consistent pair."""
    _check_vocab(ctx, pb.vocabulary)
    t_mask, f_mask = ctx.status_masks(pb.pp.mask, pb.cp.mask)
    full = ctx.vocabulary.full_mask
    return PartialBeliefState.of_masks(pb.vocabulary, full & ~f_mask, t_mask)


def kk_lfp(ctx: OperatorContext) -> PartialBeliefState:
    """Least fixpoint of ``approx_step`` in the precision order.

    Iterates from the totally unknown state; each step may only add
    determined worlds, so the chain is strictly increasing until the
    fixpoint and converges within 2*|W| + 1 steps.
    """
    pb = bottom_p(ctx.vocabulary)
    for _ in range(2 * ctx.vocabulary.world_count + 2):
        nxt = approx_step(ctx, pb)
        if not leq_p(pb, nxt):
            raise InternalInvariantError("approx_step chain is not precision-increasing")
        if nxt == pb:
            return pb
        pb = nxt
    raise InternalInvariantError("approx_step iteration failed to converge")


@dataclass
class RevisionLog:
    """Optional collector for the per-round removals of a stable revision."""

    removals: list[int] = field(default_factory=list)


def stable_revision(ctx: OperatorContext, b: BeliefState,
                    log: RevisionLog | None = None) -> BeliefState | NotStableSignal:
    """Delete refutable worlds under b's pinned ignorance until none remain.

    Starts at the full world set Z = W and repeatedly removes the worlds
    where the theory evaluates to false against (Z, b).  Falsity is
    final along the run (the evaluation is precision-monotone and b
    never moves), so removing every refutable world at once is safe.
    The run aborts with ``NOT_STABLE`` the moment it would remove a
    world of b itself: the pair would stop being consistent and the
    iteration could no longer land on b.
    """
    _check_vocab(ctx, b.vocabulary)
    z = ctx.vocabulary.full_mask
    while True:
        _, f_mask = ctx.status_masks(z, b.mask)
        removed = z & f_mask
        if not removed:
            return BeliefState(b.vocabulary, z)
        if removed & b.mask:
            return NOT_STABLE
        if log is not None:
            log.removals.append(removed)
        z &= ~removed


def klfp_moore(ctx: OperatorContext) -> BeliefState:
    """Knowledge-least fixpoint of ``moore_step``, for negative-K theories.

    With only negative K occurrences the operator is monotone in the
    knowledge order, so iterating from the ignorance-maximal full world
    set produces a decreasing chain of world sets whose limit is the
    least fixpoint in knowledge.
    """
    if not only_negative(ctx.theory):
        raise ValueError("klfp_moore requires a theory with only negative K occurrences")
    b = BeliefState.full(ctx.vocabulary)
    for _ in range(ctx.vocabulary.world_count + 2):
        nxt = moore_step(ctx, b)
        if nxt == b:
            return b
        b = nxt
    raise InternalInvariantError("moore_step iteration failed to converge")


def _check_vocab(ctx: OperatorContext, vocabulary: Vocabulary) -> None:
    if vocabulary != ctx.vocabulary:
        from .errors import VocabularyMismatchError

        raise VocabularyMismatchError("argument vocabulary differs from the context theory's")
