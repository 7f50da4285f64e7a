"""Exact-arithmetic weight vectors and the majorization preorder.

All weights are `fractions.Fraction` values, so every ordering decision
(partial sums, Lorenz comparisons) is exact.  Floats appear only further
downstream, in measure evaluation and report formatting.

A vector ``beta`` majorizes ``alpha`` when both have equal totals and the
descending partial sums of ``beta`` dominate those of ``alpha``:

    sum of k largest of beta >= sum of k largest of alpha   for every k.

Being majorized means being closer to the equal-weight allocation, which
is what a naive diversifier prefers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import LengthMismatch

RationalLike = Union[Fraction, int, str]

_SAMPLER_DENOMINATOR_CAP = 10**6


def as_fraction(value: RationalLike) -> Fraction:
    """Parse an exact rational from 'p/q' or decimal strings, ints or Fractions.

    Floats are rejected on purpose: binary floats smuggle rounding noise into
    what must stay an exact computation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class MajorizationRelation(Enum):
    EQUAL_UP_TO_PERMUTATION = "EqualUpToPermutation"
    FIRST_MORE_EQUAL = "FirstMoreEqual"
    SECOND_MORE_EQUAL = "SecondMoreEqual"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class WeightVector:
    """An allocation of unit mass over n slots, optionally labeled.

    Invariants enforced on construction: nonnegative entries, exact unit sum,
    and labels (when given) unique and matching the length.
    """

    weights: tuple[Fraction, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        weights = tuple(as_fraction(w) for w in self.weights)
        if not weights:
            raise ValueError("weight vector must have at least one entry")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        if sum(weights) != 1:
            raise ValueError(f"weights must sum to exactly 1, got {sum(weights)}")
        object.__setattr__(self, "weights", weights)
        if self.labels is not None:
            labels = tuple(str(lab) for lab in self.labels)
            if len(labels) != len(weights):
                raise LengthMismatch(
                    f"{len(labels)} labels for {len(weights)} weights"
                )
            if len(set(labels)) != len(labels):
                raise ValueError("labels must be unique")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.weights)

    def sorted_descending(self) -> tuple[Fraction, ...]:
        return tuple(sorted(self.weights, reverse=True))

    def as_strings(self) -> tuple[str, ...]:
        return tuple(str(w) for w in self.weights)


def weight_vector(
    values: Iterable[RationalLike], labels: Sequence[str] | None = None
) -> WeightVector:
    """Convenience constructor accepting any mix of rational-like entries."""
    return WeightVector(
        tuple(as_fraction(v) for v in values),
        tuple(labels) if labels is not None else None,
    )


def uniform_vector(n: int) -> WeightVector:
    """The equal-weight allocation 1/n in every slot."""
    if n < 1:
        raise ValueError("need at least one slot")
    return WeightVector(tuple(Fraction(1, n) for _ in range(n)))


def decreasing_rearrangement(w: WeightVector) -> WeightVector:
    """Sort weights in descending order, ties broken by original index.

    Labels, when present, travel with their weights.
    """
    order = sorted(range(w.n), key=lambda i: (-w.weights[i], i))
    weights = tuple(w.weights[i] for i in order)
    labels = tuple(w.labels[i] for i in order) if w.labels is not None else None
    return WeightVector(weights, labels)


def _check_same_length(a: WeightVector, b: WeightVector) -> None:
    if a.n != b.n:
        raise LengthMismatch(f"vector lengths differ: {a.n} vs {b.n}")


def majorizes(beta: WeightVector, alpha: WeightVector) -> bool:
    """True iff ``beta`` majorizes ``alpha`` (exact partial-sum dominance)."""
    _check_same_length(beta, alpha)
    bs = beta.sorted_descending()
    as_ = alpha.sorted_descending()
    partial_b = Fraction(0)
    partial_a = Fraction(0)
    for k in range(beta.n - 1):
        partial_b += bs[k]
        partial_a += as_[k]
        if partial_b < partial_a:
            return False
    return True


def compare(alpha: WeightVector, beta: WeightVector) -> MajorizationRelation:
    """Order two allocations by how equal they are.

    FIRST_MORE_EQUAL means ``alpha`` is strictly closer to equal weights,
    i.e. ``beta`` majorizes ``alpha`` and they are not rearrangements of
    one another.
    """
    _check_same_length(alpha, beta)
    if alpha.sorted_descending() == beta.sorted_descending():
        return MajorizationRelation.EQUAL_UP_TO_PERMUTATION
    beta_dominates = majorizes(beta, alpha)
    alpha_dominates = majorizes(alpha, beta)
    if beta_dominates and not alpha_dominates:
        return MajorizationRelation.FIRST_MORE_EQUAL
    if alpha_dominates and not beta_dominates:
        return MajorizationRelation.SECOND_MORE_EQUAL
    return MajorizationRelation.INCOMPARABLE


@dataclass(frozen=True)
class LorenzCurve:
    """Piecewise-linear cumulative-share curve of an allocation.

    Points run from (0, 0) to (1, 1); ordinates are cumulative sums of the
    ascending rearrangement, so the curve is convex and never rises above
    the diagonal.
    """

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        pts = tuple((as_fraction(x), as_fraction(y)) for x, y in self.points)
        if len(pts) < 2 or pts[0] != (Fraction(0), Fraction(0)) or pts[-1] != (
            Fraction(1),
            Fraction(1),
        ):
            raise ValueError("curve must run from (0,0) to (1,1)")
        xs = [p[0] for p in pts]
        if any(x1 >= x2 for x1, x2 in zip(xs, xs[1:])):
            raise ValueError("abscissas must strictly increase")
        if any(y1 > y2 for (_, y1), (_, y2) in zip(pts, pts[1:])):
            raise ValueError("ordinates must not decrease")
        if any(y > x for x, y in pts):
            raise ValueError("curve must stay weakly below the diagonal")
        slopes = [
            (y1 - y0) / (x1 - x0)
            for (x0, y0), (x1, y1) in zip(pts, pts[1:])
        ]
        if any(s0 > s1 for s0, s1 in zip(slopes, slopes[1:])):
            raise ValueError("curve must be convex (slopes non-decreasing)")
        object.__setattr__(self, "points", pts)

    def value_at(self, t: RationalLike) -> Fraction:
        """Exact linear interpolation of the curve at abscissa t in [0, 1]."""
        t = as_fraction(t)
        if t < 0 or t > 1:
            raise ValueError("abscissa must lie in [0, 1]")
        pts = self.points
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if t <= x1:
                return y0 + (y1 - y0) * (t - x0) / (x1 - x0)
        return Fraction(1)

    def breakpoints(self) -> tuple[Fraction, ...]:
        return tuple(p[0] for p in self.points)


def lorenz_curve(w: WeightVector) -> LorenzCurve:
    """Cumulative shares of the ascending rearrangement of ``w``."""
    ascending = sorted(w.weights)
    n = w.n
    points = [(Fraction(0), Fraction(0))]
    running = Fraction(0)
    for k, value in enumerate(ascending, start=1):
        running += value
        points.append((Fraction(k, n), running))
    return LorenzCurve(tuple(points))


def lorenz_dominates(a: LorenzCurve, b: LorenzCurve) -> MajorizationRelation:
    """Compare two curves pointwise; lengths of the underlying vectors may differ.

    Comparing at the union of breakpoints is sufficient for piecewise-linear
    curves.  A higher curve belongs to the more equal allocation.
    """
    grid = sorted(set(a.breakpoints()) | set(b.breakpoints()))
    a_above = False
    b_above = False
    for t in grid:
        va = a.value_at(t)
        vb = b.value_at(t)
        if va > vb:
            a_above = True
        elif vb > va:
            b_above = True
    if a_above and b_above:
        return MajorizationRelation.INCOMPARABLE
    if a_above:
        return MajorizationRelation.FIRST_MORE_EQUAL
    if b_above:
        return MajorizationRelation.SECOND_MORE_EQUAL
    return MajorizationRelation.EQUAL_UP_TO_PERMUTATION


def random_weight_vector(rng: random.Random, n: int) -> WeightVector:
    """Draw a weight vector roughly uniformly over the simplex.

    Exponential draws normalized to unit sum give uniform (flat Dirichlet)
    coverage; each draw is snapped to a nearby rational before the exact
    normalization so the result satisfies the unit-sum invariant exactly.
    """
    if n < 1:
        raise ValueError("need at least one slot")
    raw = []
    for _ in range(n):
        x = rng.expovariate(1.0)
        snapped = Fraction(x).limit_denominator(_SAMPLER_DENOMINATOR_CAP)
        if snapped <= 0:
            snapped = Fraction(1, _SAMPLER_DENOMINATOR_CAP)
        raw.append(snapped)
    total = sum(raw)
    return WeightVector(tuple(x / total for x in raw))
