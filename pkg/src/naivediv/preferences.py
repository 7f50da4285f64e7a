"""Preference verdicts induced by the majorization preorder.

An allocator who prefers more evenly spread weights ranks two candidate
allocations by majorization: the less concentrated one wins, equal-up-to-
permutation means indifference, and incomparable pairs stay undecided.
``relative_naive_prefer`` generalizes the benchmark from the equal-weight
vector to an arbitrary reference allocation via exact feasibility LPs.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction

from .errors import LengthMismatch
from .matrices import d_stochastic_witness
from .simplex import (
    MajorizationRelation,
    WeightVector,
    compare,
    uniform_vector,
)


class PreferenceOutcome(Enum):
    """Four-way verdict when ranking two allocations."""

    INDIFFERENT = "Indifferent"
    FIRST_PREFERRED = "FirstPreferred"
    SECOND_PREFERRED = "SecondPreferred"
    DEPENDS = "DependsOnAlternatives"


_FROM_RELATION = {
    MajorizationRelation.EQUAL_UP_TO_PERMUTATION: PreferenceOutcome.INDIFFERENT,
    MajorizationRelation.FIRST_MORE_EQUAL: PreferenceOutcome.FIRST_PREFERRED,
    MajorizationRelation.SECOND_MORE_EQUAL: PreferenceOutcome.SECOND_PREFERRED,
    MajorizationRelation.INCOMPARABLE: PreferenceOutcome.DEPENDS,
}


def naive_prefer(alpha: WeightVector, beta: WeightVector) -> PreferenceOutcome:
    """Rank two allocations by spread: the majorized (flatter) one is preferred."""
    return _FROM_RELATION[compare(alpha, beta)]


def equal_weights(n: int) -> WeightVector:
    """The 1/n allocation — the unique maximum of the preference order."""
    return uniform_vector(n)


def more_is_better_chain(n: int) -> list[WeightVector]:
    """A strictly improving chain from fully concentrated to equal weights.

    Element m (1-based) spreads everything evenly over the first m slots;
    each step is strictly preferred to the last, illustrating that adding
    breadth always helps a spread-seeking allocator.
    """
    if n < 2:
        raise ValueError("a chain needs n >= 2")
    chain = []
    for m in range(1, n + 1):
        share = Fraction(1, m)
        chain.append(
            WeightVector(tuple(share if i < m else Fraction(0) for i in range(n)))
        )
    return chain


def relative_naive_prefer(
    alpha: WeightVector, beta: WeightVector, d: WeightVector
) -> PreferenceOutcome:
    """Rank two allocations relative to a benchmark allocation ``d``.

    ``alpha`` improves on ``beta`` when some matrix that fixes ``d`` (rows
    summing to one, nonnegative entries) carries ``beta`` onto ``alpha``:
    alpha is then a d-directed smoothing of beta.  Feasibility both ways is
    indifference; neither way leaves the pair undecided.  With ``d`` uniform
    this reduces to plain majorization-based preference.
    """
    if alpha.n != beta.n or alpha.n != d.n:
        raise LengthMismatch("all three vectors must share one length")
    forward = d_stochastic_witness(beta, alpha, d) is not None
    backward = d_stochastic_witness(alpha, beta, d) is not None
    if forward and backward:
        return PreferenceOutcome.INDIFFERENT
    if forward:
        return PreferenceOutcome.FIRST_PREFERRED
    if backward:
        return PreferenceOutcome.SECOND_PREFERRED
    return PreferenceOutcome.DEPENDS


def aversion_squared(d: WeightVector) -> Fraction:
    """Exact squared Euclidean distance from ``d`` to the equal-weight point.

    Zero exactly when d is uniform; grows as the benchmark concentrates, so
    it scores how much inequality the benchmark itself tolerates.
    """
    n = d.n
    share = Fraction(1, n)
    return sum(((w - share) ** 2 for w in d.weights), start=Fraction(0))


def inequality_aversion_coefficient(d: WeightVector) -> float:
    """Float form of the benchmark's distance to equal weights."""
    return math.sqrt(aversion_squared(d))


__all__ = [
    "PreferenceOutcome",
    "naive_prefer",
    "equal_weights",
    "more_is_better_chain",
    "relative_naive_prefer",
    "aversion_squared",
    "inequality_aversion_coefficient",
]
