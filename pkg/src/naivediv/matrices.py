"""Doubly stochastic matrices, averaging transforms, and exact witnesses.

The bridge between the majorization preorder and linear algebra: ``alpha``
is majorized by ``beta`` exactly when ``alpha = beta @ P`` for some doubly
stochastic ``P`` (row-vector convention throughout).  The constructive
direction is a chain of two-coordinate averaging transforms

    T = lam * I + (1 - lam) * Pi_jk,   lam in [0, 1],

where ``Pi_jk`` swaps coordinates j and k.  ``muirhead_decompose`` builds
such a chain explicitly and ``hlp_witness`` multiplies it out.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lp
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    LengthMismatch,
    NotMajorized,
)
from .simplex import (
    RationalLike,
    WeightVector,
    as_fraction,
    majorizes,
    random_weight_vector,
    uniform_vector,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class SquareMatrix:
    """An immutable n-by-n matrix of exact rationals."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(as_fraction(e) for e in row) for row in self.rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix must have at least one row")
        if any(len(row) != n for row in rows):
            raise DimensionMismatch("matrix must be square")
        object.__setattr__(self, "rows", rows)

    def __eq__(self, other: object) -> bool:
        # entries decide equality, not the runtime class: a plain matrix and
        # a DoublyStochasticMatrix with the same rows are the same matrix
        if isinstance(other, SquareMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.rows)

    @property
    def order(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def matmul(self, other: "SquareMatrix") -> "SquareMatrix":
        if self.order != other.order:
            raise DimensionMismatch(
                f"orders differ: {self.order} vs {other.order}"
            )
        n = self.order
        cols = list(zip(*other.rows))
        product = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.rows
        )
        return SquareMatrix(product)

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        return self.matmul(other)

    @staticmethod
    def identity(n: int) -> "SquareMatrix":
        return SquareMatrix(
            tuple(
                tuple(ONE if i == j else ZERO for j in range(n))
                for i in range(n)
            )
        )

    @staticmethod
    def from_permutation(perm: Sequence[int]) -> "SquareMatrix":
        """Matrix sending coordinate i to coordinate perm[i] under w @ M."""
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise ValueError("not a permutation of 0..n-1")
        return SquareMatrix(
            tuple(
                tuple(ONE if perm[i] == j else ZERO for j in range(n))
                for i in range(n)
            )
        )


class DoublyStochasticMatrix(SquareMatrix):
    """A square matrix with nonnegative entries and all line sums equal to one."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not is_doubly_stochastic(self):
            raise ValueError("matrix is not doubly stochastic")


def uniform_mixing_matrix(n: int) -> DoublyStochasticMatrix:
    """The order-n matrix with every entry 1/n (full averaging)."""
    cell = Fraction(1, n)
    return DoublyStochasticMatrix(
        tuple(tuple(cell for _ in range(n)) for _ in range(n))
    )


@dataclass(frozen=True)
class TTransform:
    """A two-coordinate averaging step: lam * I + (1 - lam) * swap(j, k).

    Indices are zero-based here; serialized forms are one-based.  ``lam = 0``
    degenerates to a pure swap, ``lam = 1`` to the identity.
    """

    j: int
    k: int
    lam: Fraction

    def __post_init__(self) -> None:
        lam = as_fraction(self.lam)
        if self.j == self.k:
            raise ValueError("transform needs two distinct coordinates")
        if self.j < 0 or self.k < 0:
            raise IndexOutOfRange("coordinate indices must be nonnegative")
        if lam < 0 or lam > 1:
            raise ValueError("mixing weight must lie in [0, 1]")
        object.__setattr__(self, "lam", lam)


def is_doubly_stochastic(m: SquareMatrix) -> bool:
    """Exact check: entries >= 0, every row and column sums to 1."""
    n = m.order
    for row in m.rows:
        if any(e < 0 for e in row):
            return False
        if sum(row) != 1:
            return False
    for j in range(n):
        if sum(m.rows[i][j] for i in range(n)) != 1:
            return False
    return True


def is_permutation(m: SquareMatrix) -> bool:
    """True iff every entry is 0 or 1 and the matrix is doubly stochastic."""
    if not is_doubly_stochastic(m):
        return False
    return all(e == 0 or e == 1 for row in m.rows for e in row)


def is_d_stochastic(m: SquareMatrix, d: WeightVector) -> bool:
    """True iff d is a fixed point of m, rows sum to one, entries >= 0.

    Zero entries in ``d`` are allowed.  With d uniform this coincides with
    double stochasticity.
    """
    n = m.order
    if d.n != n:
        raise DimensionMismatch(f"matrix order {n} vs vector length {d.n}")
    for row in m.rows:
        if any(e < 0 for e in row):
            return False
        if sum(row) != 1:
            return False
    for j in range(n):
        if sum(d.weights[i] * m.rows[i][j] for i in range(n)) != d.weights[j]:
            return False
    return True


def apply(w: WeightVector, m: SquareMatrix) -> WeightVector:
    """Row-vector product w @ m, exact.

    The matrix must be doubly stochastic, which makes the result a weight
    vector majorized by ``w``.  Labels carry over: slot j of the result is
    still slot j of the portfolio.
    """
    if w.n != m.order:
        raise LengthMismatch(f"vector length {w.n} vs matrix order {m.order}")
    if not isinstance(m, DoublyStochasticMatrix) and not is_doubly_stochastic(m):
        raise ValueError("matrix is not doubly stochastic")
    n = w.n
    mixed = tuple(
        sum(w.weights[i] * m.rows[i][j] for i in range(n)) for j in range(n)
    )
    return WeightVector(mixed, w.labels)


def t_to_matrix(t: TTransform, n: int) -> DoublyStochasticMatrix:
    """Materialize a transform as an order-n doubly stochastic matrix."""
    if t.j >= n or t.k >= n:
        raise IndexOutOfRange(
            f"transform touches coordinate {max(t.j, t.k)} of an order-{n} matrix"
        )
    lam = t.lam
    rows = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    rows[t.j][t.j] = lam
    rows[t.j][t.k] = 1 - lam
    rows[t.k][t.k] = lam
    rows[t.k][t.j] = 1 - lam
    return DoublyStochasticMatrix(tuple(tuple(row) for row in rows))


def apply_transform(w: WeightVector, t: TTransform) -> WeightVector:
    """Apply a single transform without building the full matrix."""
    if t.j >= w.n or t.k >= w.n:
        raise IndexOutOfRange(
            f"transform touches coordinate {max(t.j, t.k)} of a length-{w.n} vector"
        )
    values = list(w.weights)
    a, b = values[t.j], values[t.k]
    values[t.j] = t.lam * a + (1 - t.lam) * b
    values[t.k] = t.lam * b + (1 - t.lam) * a
    return WeightVector(tuple(values), w.labels)


def muirhead_decompose(
    beta: WeightVector, alpha: WeightVector
) -> list[TTransform]:
    """A transform chain carrying ``beta`` exactly onto ``alpha``.

    Raises NotMajorized unless ``beta`` majorizes ``alpha``.

    The chain has two phases.  Averaging steps (lam strictly inside (0, 1])
    work on descending-sorted copies: repeatedly move the spare mass sitting
    at the highest-indexed surplus coordinate onto the highest-indexed
    deficit coordinate, which pins at least one coordinate per step and
    therefore needs at most n - 1 steps.  When the target's slot order
    disagrees with the source's, a relabeling phase of pure swaps
    (lam = 0) then routes each value to its final slot; the uniform target
    never needs one.
    """
    if beta.n != alpha.n:
        raise LengthMismatch(f"vector lengths differ: {beta.n} vs {alpha.n}")
    if not majorizes(beta, alpha):
        raise NotMajorized("source does not majorize target")
    n = beta.n

    order = sorted(range(n), key=lambda i: (-beta.weights[i], i))
    current = [beta.weights[i] for i in order]
    goal = sorted(alpha.weights, reverse=True)

    steps: list[TTransform] = []
    while True:
        surplus = [i for i in range(n) if current[i] > goal[i]]
        deficit = [i for i in range(n) if current[i] < goal[i]]
        if not surplus:
            break
        j = surplus[-1]
        k = deficit[-1]
        delta = min(current[j] - goal[j], goal[k] - current[k])
        lam = 1 - delta / (current[j] - current[k])
        steps.append(TTransform(order[j], order[k], lam))
        current[j] -= delta
        current[k] += delta

    # Values now sit in the source's sort order; route them to the target's
    # slots with selection-style swaps when the arrangements disagree.
    placed = [ZERO] * n
    for pos, value in zip(order, current):
        placed[pos] = value
    for i in range(n):
        if placed[i] == alpha.weights[i]:
            continue
        source = next(
            s
            for s in range(i + 1, n)
            if placed[s] == alpha.weights[i]
        )
        steps.append(TTransform(i, source, ZERO))
        placed[i], placed[source] = placed[source], placed[i]
    return steps


def averaging_step_count(steps: Sequence[TTransform]) -> int:
    """Number of genuine averaging steps, ignoring pure relabeling swaps."""
    return sum(1 for t in steps if t.lam != 0)


def hlp_witness(
    beta: WeightVector, alpha: WeightVector
) -> DoublyStochasticMatrix:
    """A doubly stochastic P with beta @ P == alpha, built from the chain."""
    steps = muirhead_decompose(beta, alpha)
    n = beta.n
    product = SquareMatrix.identity(n)
    for t in steps:
        product = product @ t_to_matrix(t, n)
    return DoublyStochasticMatrix(product.rows)


def multivariate_feasible(
    x_rows: Sequence[WeightVector], y_rows: Sequence[WeightVector]
) -> DoublyStochasticMatrix | None:
    """Solve X = Y @ P for doubly stochastic P, exactly.

    ``x_rows`` and ``y_rows`` are d allocations over the same n slots: the
    columns of P mix Y's slots into X's slots simultaneously for every row.
    Returns a witness or None when infeasible.
    """
    d = len(x_rows)
    if d == 0 or len(y_rows) != d:
        raise DimensionMismatch("need equally many rows on both sides")
    n = x_rows[0].n
    if any(r.n != n for r in x_rows) or any(r.n != n for r in y_rows):
        raise DimensionMismatch("all rows must share one length")

    def var(r: int, c: int) -> int:
        return r * n + c

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for r in range(n):  # row sums of P
        coeffs = [ZERO] * (n * n)
        for c in range(n):
            coeffs[var(r, c)] = ONE
        rows.append(coeffs)
        rhs.append(ONE)
    for c in range(n):  # column sums of P
        coeffs = [ZERO] * (n * n)
        for r in range(n):
            coeffs[var(r, c)] = ONE
        rows.append(coeffs)
        rhs.append(ONE)
    for a in range(d):  # data constraints Y[a] @ P == X[a]
        for c in range(n):
            coeffs = [ZERO] * (n * n)
            for r in range(n):
                coeffs[var(r, c)] = y_rows[a].weights[r]
            rows.append(coeffs)
            rhs.append(x_rows[a].weights[c])

    solution = lp.solve_equality_feasibility(rows, rhs)
    if solution is None:
        return None
    entries = tuple(
        tuple(solution[var(r, c)] for c in range(n)) for r in range(n)
    )
    return DoublyStochasticMatrix(entries)


def d_stochastic_witness(
    beta: WeightVector, alpha: WeightVector, d: WeightVector
) -> SquareMatrix | None:
    """Find A with d @ A == d, rows of A summing to 1, A >= 0, beta @ A == alpha.

    This is the feasibility question behind preference relative to a fixed
    benchmark allocation ``d``; solved exactly, None when infeasible.
    """
    if beta.n != alpha.n or beta.n != d.n:
        raise LengthMismatch("all three vectors must share one length")
    n = beta.n

    def var(r: int, c: int) -> int:
        return r * n + c

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for r in range(n):  # row sums of A
        coeffs = [ZERO] * (n * n)
        for c in range(n):
            coeffs[var(r, c)] = ONE
        rows.append(coeffs)
        rhs.append(ONE)
    for c in range(n):  # d is a fixed point
        coeffs = [ZERO] * (n * n)
        for r in range(n):
            coeffs[var(r, c)] = d.weights[r]
        rows.append(coeffs)
        rhs.append(d.weights[c])
    for c in range(n):  # beta is carried onto alpha
        coeffs = [ZERO] * (n * n)
        for r in range(n):
            coeffs[var(r, c)] = beta.weights[r]
        rows.append(coeffs)
        rhs.append(alpha.weights[c])

    solution = lp.solve_equality_feasibility(rows, rhs)
    if solution is None:
        return None
    entries = tuple(
        tuple(solution[var(r, c)] for c in range(n)) for r in range(n)
    )
    return SquareMatrix(entries)


def random_doubly_stochastic(
    seed: int, n: int, k: int = 1
) -> DoublyStochasticMatrix:
    """A seeded convex combination of k random permutation matrices.

    With k = 1 the result is itself a permutation matrix.  Mixing weights
    are exact rationals, so the output passes the exact membership checks.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    rng = random.Random(seed)
    perms = []
    for _ in range(k):
        p = list(range(n))
        rng.shuffle(p)
        perms.append(SquareMatrix.from_permutation(p))
    raw = [Fraction(rng.randint(1, 1000)) for _ in range(k)]
    total = sum(raw)
    coeffs = [x / total for x in raw]
    rows = tuple(
        tuple(
            sum(c * p.rows[i][j] for c, p in zip(coeffs, perms))
            for j in range(n)
        )
        for i in range(n)
    )
    return DoublyStochasticMatrix(rows)


def random_majorization_pair(
    rng: random.Random, n: int, transforms: int | None = None
) -> tuple[WeightVector, WeightVector]:
    """Seeded (alpha, beta) with beta majorizing alpha, built constructively.

    ``beta`` is a random simplex point; ``alpha`` is its image under a short
    chain of random averaging transforms.
    """
    beta = random_weight_vector(rng, n)
    count = transforms if transforms is not None else rng.randint(1, max(1, n - 1))
    alpha = beta
    for _ in range(count):
        j, k = rng.sample(range(n), 2)
        lam = Fraction(rng.randint(0, 100), 100)
        alpha = apply_transform(alpha, TTransform(j, k, lam))
    return alpha, beta


def random_strict_majorization_pair(
    rng: random.Random, n: int
) -> tuple[WeightVector, WeightVector]:
    """A pair with a comfortable strictness margin for float-based tests.

    The source has well-separated sorted components and the single transfer
    moves a non-trivial amount of mass, so any strictly order-reversing
    measure separates the two by far more than float noise.
    """
    gap = Fraction(1, 20 * n)
    while True:
        beta = random_weight_vector(rng, n)
        ordered = sorted(beta.weights, reverse=True)
        if all(a - b >= gap for a, b in zip(ordered, ordered[1:])):
            break
    j, k = rng.sample(range(n), 2)
    lam = Fraction(rng.randint(10, 90), 100)
    alpha = apply_transform(beta, TTransform(j, k, lam))
    if sorted(alpha.weights) == sorted(beta.weights):
        # lam = 1/2 on a tied pair cannot happen because of the gap guard,
        # so equality here would mean the transform was a no-op; resample.
        return random_strict_majorization_pair(rng, n)
    return alpha, beta


def permutation_matrices(n: int):
    """Yield all order-n permutation matrices (n <= 8 keeps this tractable)."""
    for perm in itertools.permutations(range(n)):
        yield SquareMatrix.from_permutation(perm)


__all__ = [
    "SquareMatrix",
    "DoublyStochasticMatrix",
    "TTransform",
    "uniform_mixing_matrix",
    "is_doubly_stochastic",
    "is_permutation",
    "is_d_stochastic",
    "apply",
    "t_to_matrix",
    "apply_transform",
    "muirhead_decompose",
    "averaging_step_count",
    "hlp_witness",
    "multivariate_feasible",
    "d_stochastic_witness",
    "random_doubly_stochastic",
    "random_majorization_pair",
    "random_strict_majorization_pair",
    "permutation_matrices",
]
