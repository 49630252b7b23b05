"""Brute-force reference implementations, for tests and ``nmr check``.

These deliberately avoid the clever candidate generation used by the
production solvers: expansions and stable extensions are found by
testing every subset of worlds, and the well-founded extension is
recomputed as the limit of the alternating stable-revision pair
iteration.  Agreement between the two routes is what ``nmr check``
verifies.  Everything here is exponential in 2^n and capped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInvariantError, ResourceCapError
from .operators import OperatorContext, moore_step, stable_revision
from .truth import TruthFunctionKind
from .worlds import BeliefState, PartialBeliefState


@dataclass(frozen=True, slots=True)
class OracleBudget:
    """Largest vocabulary the 2^(2^n) subset enumerations will touch."""

    max_atoms: int = 4


def _check_budget(ctx: OperatorContext, budget: OracleBudget) -> None:
    n = len(ctx.vocabulary)
    if n > budget.max_atoms:
        raise ResourceCapError(
            f"oracle budget allows {budget.max_atoms} atoms, theory has {n}"
        )


def brute_expansions(ctx: OperatorContext, budget: OracleBudget = OracleBudget()) -> list[BeliefState]:
    """Every subset of worlds the one-step revision maps to itself."""
    _check_budget(ctx, budget)
    out = []
    for mask in range(ctx.vocabulary.full_mask + 1):
        b = BeliefState(ctx.vocabulary, mask)
        if moore_step(ctx, b) == b:
            out.append(b)
    return out


def brute_stable(ctx: OperatorContext, budget: OracleBudget = OracleBudget()) -> list[BeliefState]:
    """Every subset of worlds reproduced by its own stable revision."""
    _check_budget(ctx, budget)
    out = []
    for mask in range(ctx.vocabulary.full_mask + 1):
        b = BeliefState(ctx.vocabulary, mask)
        if stable_revision(ctx, b) == b:
            out.append(b)
    return out


def _unrestricted_stable(ctx: OperatorContext, pinned_mask: int) -> int:
    """Stable revision with the second coordinate pinned to an arbitrary mask.

    Unlike ``stable_revision`` this never aborts: the alternating
    iteration below feeds it raw mask pairs that need not be
    consistent.  On those pairs the evaluator's independent truth and
    falsity checks amount to the four-valued reading of the K clauses
    (truth over the first coordinate, falsity over the pinned second),
    which coincides with the standard three-valued reading whenever the
    pair is consistent.
    """
    z = ctx.vocabulary.full_mask
    while True:
        _, f_mask = ctx.status_masks(z, pinned_mask)
        nz = z & ~f_mask
        if nz == z:
            return z
        z = nz


def algebraic_wf(ctx: OperatorContext, budget: OracleBudget = OracleBudget()) -> PartialBeliefState:
    """Limit of (x, y) -> (S(y), S(x)) from the least-precise pair.

    S is the unrestricted stable revision.  The limit of this
    alternating iteration is the well-founded fixpoint; it must be a
    consistent pair, and an inconsistent limit is reported as a
    diagnostic rather than silently clamped.

    Three-valued contexts only.  The alternating construction relies on
    the revision operator being symmetric in its two coordinates; the
    supervaluation operator is not (its completion interval is
    direction-sensitive), and its alternating limit can differ from the
    process-computed well-founded extension.
    """
    if ctx.truth is not TruthFunctionKind.KLEENE:
        raise ValueError("algebraic_wf is defined for the three-valued truth function only")
    _check_budget(ctx, budget)
    x, y = ctx.vocabulary.full_mask, 0
    for _ in range(2 * ctx.vocabulary.world_count + 2):
        nx, ny = _unrestricted_stable(ctx, y), _unrestricted_stable(ctx, x)
        if (nx, ny) == (x, y):
            break
        x, y = nx, ny
    else:
        raise InternalInvariantError("alternating stable iteration failed to converge")
    if y & ~x:
        raise InternalInvariantError(
            "alternating stable iteration converged on an inconsistent pair"
        )
    return PartialBeliefState.of_masks(ctx.vocabulary, x, y)
