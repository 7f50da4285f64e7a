"""Turnover accounting and minimal-turnover plans toward equal weights.

Turnover is half the l1 distance from the equal-weight allocation: the
fraction of total mass that has to move.  A rebalancing matrix is any
doubly stochastic matrix carrying the current allocation onto equal
weights; those matrices form a polytope, and different members cost
different amounts in practice.  Practical turnover scales theoretical
turnover by the Frobenius distance of the chosen matrix from the nearest
permutation matrix, so pure relabelings are free and the identity is the
cheapest honest executor.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotInPolytope, NotMajorized
from .matrices import (
    DoublyStochasticMatrix,
    SquareMatrix,
    TTransform,
    apply_transform,
    averaging_step_count,
    is_doubly_stochastic,
    muirhead_decompose,
    t_to_matrix,
    uniform_mixing_matrix,
)
from .simplex import RationalLike, WeightVector, as_fraction, uniform_vector

_EXACT_ASSIGNMENT_LIMIT = 5


@dataclass(frozen=True)
class TurnoverVector:
    """Signed per-slot imbalances; they always cancel out in total."""

    deltas: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        deltas = tuple(as_fraction(d) for d in self.deltas)
        if sum(deltas) != 0:
            raise ValueError("imbalances must sum to zero")
        object.__setattr__(self, "deltas", deltas)


def turnover_vector(w: WeightVector) -> TurnoverVector:
    """Componentwise distance to the equal share: w - 1/n, exact."""
    share = Fraction(1, w.n)
    return TurnoverVector(tuple(x - share for x in w.weights))


def turnover(w: WeightVector) -> Fraction:
    """Half the l1 distance from equal weights; the mass that must move."""
    share = Fraction(1, w.n)
    return sum((abs(x - share) for x in w.weights), start=Fraction(0)) / 2


def _half_l1(w: WeightVector, target: WeightVector) -> Fraction:
    return (
        sum((abs(a - b) for a, b in zip(w.weights, target.weights)), start=Fraction(0))
        / 2
    )


def polytope_membership(p: SquareMatrix, w: WeightVector) -> bool:
    """True iff ``p`` is doubly stochastic and carries ``w`` exactly to 1/n."""
    if p.order != w.n:
        raise DimensionMismatch(f"matrix order {p.order} vs vector length {w.n}")
    if not is_doubly_stochastic(p):
        return False
    n = w.n
    share = Fraction(1, n)
    return all(
        sum(w.weights[i] * p.rows[i][j] for i in range(n)) == share
        for j in range(n)
    )


def example_family(u: RationalLike, v: RationalLike) -> DoublyStochasticMatrix | None:
    """The two-parameter 3x3 family of rebalancers for the (1/2, 1/3, 1/6) case.

    Row and column sums are identically one, so any parameter choice keeping
    every entry nonnegative yields a doubly stochastic member that maps
    (1/2, 1/3, 1/6) to equal weights; other choices return None.  (0, 0)
    gives the single-averaging-step matrix, (1/3, 1/3) gives full mixing.
    """
    uu = as_fraction(u)
    vv = as_fraction(v)
    half = Fraction(1, 2)
    outer = (half - vv / 2, uu, half + vv / 2 - uu)
    middle = (vv, 1 - 2 * uu, 2 * uu - vv)
    if min(*outer, *middle) < 0:
        return None
    return DoublyStochasticMatrix((outer, middle, outer))


def frobenius_distance_squared(a: SquareMatrix, b: SquareMatrix) -> Fraction:
    """Exact squared Frobenius distance between two same-order matrices."""
    if a.order != b.order:
        raise DimensionMismatch(f"orders differ: {a.order} vs {b.order}")
    return sum(
        ((x - y) ** 2 for ra, rb in zip(a.rows, b.rows) for x, y in zip(ra, rb)),
        start=Fraction(0),
    )


def min_permutation_distance_squared(p: SquareMatrix) -> Fraction:
    """Exact squared Frobenius distance from ``p`` to the nearest permutation.

    Minimizing ||p - Pi||^2 is the same as maximizing the trace of p against
    the permutation, an assignment problem.  Up to order 5 all permutations
    are enumerated exactly; beyond that a float assignment solver picks the
    permutation and the distance is then evaluated exactly (ties broken in
    float can shift the result by at most one ulp).
    """
    n = p.order
    norm_sq = sum(
        (e * e for row in p.rows for e in row), start=Fraction(0)
    )
    if n <= _EXACT_ASSIGNMENT_LIMIT:
        best = max(
            sum(p.rows[i][perm[i]] for i in range(n))
            for perm in itertools.permutations(range(n))
        )
    else:
        from scipy.optimize import linear_sum_assignment

        cost = [[-float(e) for e in row] for row in p.rows]
        rows, cols = linear_sum_assignment(cost)
        best = sum(p.rows[i][j] for i, j in zip(rows, cols))
    return norm_sq + n - 2 * best


def practical_turnover(w: WeightVector, p: SquareMatrix) -> float:
    """Theoretical turnover scaled by the executor's distance from a relabeling.

    Requires ``p`` to actually rebalance ``w`` to equal weights.
    """
    if not polytope_membership(p, w):
        raise NotInPolytope("matrix does not rebalance this allocation to 1/n")
    scale = math.sqrt(float(min_permutation_distance_squared(p)))
    return float(turnover(w)) * scale


def _default_labels(w: WeightVector) -> tuple[str, ...]:
    if w.labels is not None:
        return w.labels
    return tuple(f"w{i}" for i in range(1, w.n + 1))


@dataclass(frozen=True)
class RebalancePlan:
    """An executable recipe: ordered transforms, trades, and cost accounting.

    Replaying ``steps`` on ``source`` must land exactly on ``target``;
    construction re-verifies this, so a deserialized plan is trustworthy.
    ``practical_turnover`` is populated only for equal-weight targets,
    where the notion is defined.
    """

    source: WeightVector
    target: WeightVector
    steps: tuple[TTransform, ...]
    intermediates: tuple[WeightVector, ...]
    turnover: Fraction
    practical_turnover: float | None
    trades: tuple[tuple[str, Fraction], ...]
    cost: float
    cost_rate: float

    def __post_init__(self) -> None:
        if self.turnover < 0 or self.turnover > 1:
            raise ValueError("turnover must lie in [0, 1]")
        current = self.source
        if len(self.intermediates) != len(self.steps):
            raise ValueError("need exactly one intermediate per step")
        for step, expected in zip(self.steps, self.intermediates):
            current = apply_transform(current, step)
            if current.weights != expected.weights:
                raise ValueError("intermediate does not match its step")
        if current.weights != self.target.weights:
            raise ValueError("steps do not reproduce the target")
        if self.turnover != _half_l1(self.source, self.target):
            raise ValueError("turnover does not match source and target")
        deltas = tuple(delta for _, delta in self.trades)
        expected = tuple(
            t - s for s, t in zip(self.source.weights, self.target.weights)
        )
        if deltas != expected:
            raise ValueError("trades must equal target minus source")

    @property
    def averaging_steps(self) -> int:
        """Step count excluding pure relabeling swaps."""
        return averaging_step_count(self.steps)

    def composed_matrix(self) -> DoublyStochasticMatrix:
        """The single doubly stochastic matrix equal to the whole chain."""
        n = self.source.n
        product = SquareMatrix.identity(n)
        for t in self.steps:
            product = product @ t_to_matrix(t, n)
        return DoublyStochasticMatrix(product.rows)


def rebalance_to(
    w: WeightVector, target: WeightVector, cost_rate: float = 0.0
) -> RebalancePlan:
    """Minimal-step plan carrying ``w`` exactly onto a flatter ``target``.

    The source must majorize the target.  Cost is proportional to total
    traded mass (buys plus sells), i.e. cost_rate times twice the turnover.
    """
    steps = tuple(muirhead_decompose(w, target))
    intermediates = []
    current = w
    for t in steps:
        current = apply_transform(current, t)
        intermediates.append(current)

    tau = _half_l1(w, target)
    labels = _default_labels(w)
    trades = tuple(
        (label, t_i - w_i)
        for label, w_i, t_i in zip(labels, w.weights, target.weights)
    )
    cost = float(cost_rate) * float(2 * tau)

    practical: float | None = None
    if target.weights == uniform_vector(w.n).weights:
        n = w.n
        product = SquareMatrix.identity(n)
        for t in steps:
            product = product @ t_to_matrix(t, n)
        scale = math.sqrt(float(min_permutation_distance_squared(product)))
        practical = float(tau) * scale

    return RebalancePlan(
        source=w,
        target=target,
        steps=steps,
        intermediates=tuple(intermediates),
        turnover=tau,
        practical_turnover=practical,
        trades=trades,
        cost=cost,
        cost_rate=float(cost_rate),
    )


def minimal_turnover_plan(w: WeightVector, cost_rate: float = 0.0) -> RebalancePlan:
    """The equal-weight rebalancing plan with the fewest averaging steps."""
    return rebalance_to(w, uniform_vector(w.n), cost_rate)


def sample_polytope(
    w: WeightVector, seed: int, k: int
) -> list[DoublyStochasticMatrix]:
    """Draw ``k`` matrices that provably rebalance ``w`` to equal weights.

    Candidates are built from known members — the full-mixing matrix, the
    transform-chain product, and right-multiplications by permutations
    (relabeling after equalizing stays in the polytope) — plus convex
    combinations.  Left-multiplied variants are speculative: membership is
    re-verified exactly and failures are discarded, so everything returned
    is a genuine member.
    """
    if k < 0:
        raise ValueError("sample count must be nonnegative")
    n = w.n
    rng = random.Random(seed)
    full_mix = uniform_mixing_matrix(n)
    chain = minimal_turnover_plan(w).composed_matrix()
    members: list[SquareMatrix] = [full_mix, chain]
    for _ in range(4):
        perm = list(range(n))
        rng.shuffle(perm)
        members.append(chain @ SquareMatrix.from_permutation(perm))

    out: list[DoublyStochasticMatrix] = []
    while len(out) < k:
        kind = rng.randrange(3)
        if kind == 0:
            candidate = members[rng.randrange(len(members))]
        elif kind == 1:
            # Speculative: equalize a relabeled allocation; only sometimes works.
            perm = list(range(n))
            rng.shuffle(perm)
            candidate = SquareMatrix.from_permutation(perm) @ chain
        else:
            chosen = rng.sample(members, min(len(members), 2 + rng.randrange(2)))
            raw = [Fraction(rng.randint(0, 100)) for _ in chosen]
            total = sum(raw)
            if total == 0:
                continue
            coeffs = [x / total for x in raw]
            candidate = SquareMatrix(
                tuple(
                    tuple(
                        sum(c * m.rows[i][j] for c, m in zip(coeffs, chosen))
                        for j in range(n)
                    )
                    for i in range(n)
                )
            )
        if polytope_membership(candidate, w):
            out.append(DoublyStochasticMatrix(candidate.rows))
    return out


__all__ = [
    "TurnoverVector",
    "turnover_vector",
    "turnover",
    "polytope_membership",
    "example_family",
    "frobenius_distance_squared",
    "min_permutation_distance_squared",
    "practical_turnover",
    "RebalancePlan",
    "rebalance_to",
    "minimal_turnover_plan",
    "sample_polytope",
]
