"""Concentration measures, their axiom harness, and derivative-based checks.

A measure scores how far an allocation sits from equal weights.  Two
orientations coexist: *index* measures grow with concentration (zero at
equal weights for the normalized ones), *utility* measures grow with
evenness.  Every registry entry declares its orientation and whether it
moves strictly whenever concentration genuinely changes; those
declarations are empirical claims, and ``axiom_suite`` plus
``schur_ostrowski_check`` exist to test them rather than trust them.

The registry also knows one deliberately mis-declared control measure
(``log_control``, reachable by id but not listed): a root-mean-square of
log-weights whose declared utility orientation contradicts its actual
monotonicity, so a sound harness must flag it.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, NotMajorized, UnknownMeasure
from .matrices import random_majorization_pair, random_strict_majorization_pair
from .simplex import (
    WeightVector,
    as_fraction,
    majorizes,
    random_weight_vector,
    uniform_vector,
)

#: Default step for central finite differences.
FD_STEP = 1e-5
#: Tolerance on the pairwise sign products in the Schur-Ostrowski test.
SIGN_PRODUCT_TOL = 1e-8
#: Tolerance when checking a function is permutation-symmetric in floats.
SYMMETRY_TOL = 1e-10
#: Anything closer to zero than this is treated as an exact zero / tie.
EQUALITY_TOL = 1e-12


class Direction(Enum):
    """Which way a measure moves as an allocation concentrates."""

    INDEX = "SchurConvexIndex"
    UTILITY = "SchurConcaveUtility"


AmbientFn = Callable[[Sequence[float]], float]
ExactFn = Callable[[Sequence[Fraction]], Fraction]


@dataclass(frozen=True)
class MeasureSpec:
    """A named measure with evaluation rules and declared behavior.

    ``ambient`` evaluates on any positive float vector near the simplex
    (no renormalization), which is what finite-difference probing needs;
    ``exact`` is present only for measures whose value is rational.
    """

    id: str
    direction: Direction
    strict: bool
    ambient: AmbientFn
    exact: ExactFn | None = None


# --------------------------------------------------------------------------
# Formulas.  Ambient versions take raw floats; exact versions take Fractions.
# --------------------------------------------------------------------------


def _variance_ambient(xs: Sequence[float]) -> float:
    n = len(xs)
    share = 1.0 / n
    return math.fsum((x - share) ** 2 for x in xs) / n


def _stddev_ambient(xs: Sequence[float]) -> float:
    return math.sqrt(_variance_ambient(xs))


def _coeff_variation_ambient(xs: Sequence[float]) -> float:
    mean = math.fsum(xs) / len(xs)
    if mean == 0:
        raise DomainError("coefficient of variation needs a nonzero mean")
    return _stddev_ambient(xs) / mean


def _entropy_ambient(xs: Sequence[float]) -> float:
    # 0 * log 0 := 0, the standard continuous extension to the boundary.
    return -math.fsum(x * math.log(x) for x in xs if x != 0.0)


def _entropy_index_ambient(xs: Sequence[float]) -> float:
    return math.log(len(xs)) - _entropy_ambient(xs)


def _gini_ambient(xs: Sequence[float]) -> float:
    n = len(xs)
    total = math.fsum(abs(a - b) for a in xs for b in xs)
    return total / (n * n)


def _gini_exact(ws: Sequence[Fraction]) -> Fraction:
    n = len(ws)
    total = sum((abs(a - b) for a in ws for b in ws), start=Fraction(0))
    return total / (n * n)


def _simpson_ambient(xs: Sequence[float]) -> float:
    return math.fsum(x * x for x in xs)


def _simpson_exact(ws: Sequence[Fraction]) -> Fraction:
    return sum((w * w for w in ws), start=Fraction(0))


def _hhi_ambient(xs: Sequence[float]) -> float:
    n = len(xs)
    if n < 2:
        raise DomainError("normalized concentration index needs n >= 2")
    return (_simpson_ambient(xs) - 1.0 / n) / (1.0 - 1.0 / n)


def _hhi_exact(ws: Sequence[Fraction]) -> Fraction:
    n = len(ws)
    if n < 2:
        raise DomainError("normalized concentration index needs n >= 2")
    share = Fraction(1, n)
    return (_simpson_exact(ws) - share) / (1 - share)


def _hoover_ambient(xs: Sequence[float]) -> float:
    share = 1.0 / len(xs)
    return math.fsum(abs(x - share) for x in xs) / 2


def _hoover_exact(ws: Sequence[Fraction]) -> Fraction:
    share = Fraction(1, len(ws))
    return sum((abs(w - share) for w in ws), start=Fraction(0)) / 2


def _atkinson_ambient(eps: Fraction) -> AmbientFn:
    e = float(eps)

    def measure(xs: Sequence[float]) -> float:
        n = len(xs)
        mean = math.fsum(xs) / n
        if e > 1 and any(x == 0.0 for x in xs):
            return 1.0  # the equally-distributed equivalent collapses to zero
        p = 1.0 - e
        ede = (math.fsum(x**p for x in xs) / n) ** (1.0 / p)
        return 1.0 - ede / mean

    return measure


def _log_control_ambient(xs: Sequence[float]) -> float:
    if any(x == 0.0 for x in xs):
        return math.inf
    return math.sqrt(math.fsum(math.log(x) ** 2 for x in xs) / len(xs))


_ATKINSON_ID = re.compile(r"atkinson\((.+)\)\Z")

_STANDARD: tuple[MeasureSpec, ...] = (
    MeasureSpec("stddev", Direction.INDEX, True, _stddev_ambient),
    MeasureSpec("variance", Direction.INDEX, True, _variance_ambient),
    MeasureSpec(
        "coeff_variation", Direction.INDEX, True, _coeff_variation_ambient
    ),
    MeasureSpec("entropy", Direction.UTILITY, True, _entropy_ambient),
    MeasureSpec("entropy_index", Direction.INDEX, True, _entropy_index_ambient),
    MeasureSpec(
        "gini_mean_diff", Direction.INDEX, True, _gini_ambient, _gini_exact
    ),
    MeasureSpec("hhi", Direction.INDEX, True, _hhi_ambient, _hhi_exact),
    MeasureSpec(
        "simpson", Direction.INDEX, True, _simpson_ambient, _simpson_exact
    ),
    # Hoover is only weakly monotone: transfers strictly between two
    # above-average (or two below-average) slots leave it unchanged.
    MeasureSpec("hoover", Direction.INDEX, False, _hoover_ambient, _hoover_exact),
    MeasureSpec(
        "atkinson(1/2)", Direction.INDEX, True, _atkinson_ambient(Fraction(1, 2))
    ),
    MeasureSpec("atkinson(2)", Direction.INDEX, True, _atkinson_ambient(Fraction(2))),
)

LOG_CONTROL = MeasureSpec(
    "log_control", Direction.UTILITY, True, _log_control_ambient
)


def registry() -> tuple[MeasureSpec, ...]:
    """All standard measures, in a stable order (excludes the control)."""
    return _STANDARD


def get_measure(measure_id: str) -> MeasureSpec:
    """Look up a measure by id.

    ``atkinson(e)`` accepts any rational parameter e > 0, e != 1, written
    as ``p/q`` or a decimal; the id is canonicalized, so ``atkinson(0.5)``
    and ``atkinson(1/2)`` name the same measure.
    """
    wanted = measure_id.strip()
    match = _ATKINSON_ID.fullmatch(wanted)
    if match is not None:
        try:
            eps = as_fraction(match.group(1))
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise UnknownMeasure(
                f"unparseable atkinson parameter: {match.group(1)!r}"
            ) from exc
        if eps <= 0 or eps == 1:
            raise UnknownMeasure(
                "atkinson parameter must be positive and different from 1"
            )
        wanted = f"atkinson({eps})"
    for spec in _STANDARD:
        if spec.id == wanted:
            return spec
    if wanted == LOG_CONTROL.id:
        return LOG_CONTROL
    if match is not None:
        return MeasureSpec(wanted, Direction.INDEX, True, _atkinson_ambient(eps))
    raise UnknownMeasure(f"no measure named {measure_id!r}")


def evaluate(m: MeasureSpec, w: WeightVector) -> float:
    """Value of the measure at an allocation.

    Measures with a rational form are computed exactly and converted at
    the end, which makes them permutation-invariant to the last bit.
    """
    if m.exact is not None:
        return float(m.exact(w.weights))
    return m.ambient([float(x) for x in w.weights])


def exact_value(m: MeasureSpec, w: WeightVector) -> Fraction:
    """Exact rational value; only some measures have one."""
    if m.exact is None:
        raise DomainError(f"{m.id} has no exact rational form")
    return m.exact(w.weights)


def index_value(m: MeasureSpec, w: WeightVector) -> float:
    """The measure folded into index orientation: bigger = more concentrated."""
    raw = evaluate(m, w)
    return raw if m.direction is Direction.INDEX else -raw


def ambient_utility(m: MeasureSpec) -> AmbientFn:
    """The measure as a float function in utility orientation.

    This is the shape the Schur-Ostrowski criterion speaks about: a
    spread-seeking allocator's objective, to be probed off the simplex.
    """
    if m.direction is Direction.UTILITY:
        return m.ambient
    ambient = m.ambient
    return lambda xs: -ambient(xs)


# --------------------------------------------------------------------------
# Axiom harness.
# --------------------------------------------------------------------------

Counterexample = tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class AxiomVerdict:
    """Outcome of one axiom: pass/fail plus the first few failing inputs."""

    passed: bool
    counterexamples: tuple[Counterexample, ...] = ()


@dataclass(frozen=True)
class AxiomReport:
    """Per-axiom verdicts for one measure at one sampling configuration.

    ``strict_monotone`` is None when the measure does not claim strictness,
    mirroring that the axiom is simply not asserted for it.
    """

    measure_id: str
    seed: int
    samples: int
    n: int
    positivity: AxiomVerdict
    zero_at_equality: AxiomVerdict
    boundedness: AxiomVerdict
    order_respecting: AxiomVerdict
    strict_monotone: AxiomVerdict | None

    def all_passed(self) -> bool:
        verdicts = [
            self.positivity,
            self.zero_at_equality,
            self.boundedness,
            self.order_respecting,
        ]
        if self.strict_monotone is not None:
            verdicts.append(self.strict_monotone)
        return all(v.passed for v in verdicts)

    def to_json_dict(self) -> dict:
        def verdict(v: AxiomVerdict | None):
            if v is None:
                return None
            return {
                "passed": v.passed,
                "counterexamples": [
                    [list(vec) for vec in case] for case in v.counterexamples
                ],
            }

        return {
            "measure": self.measure_id,
            "seed": self.seed,
            "samples": self.samples,
            "n": self.n,
            "axioms": {
                "positivity": verdict(self.positivity),
                "zero_at_equality": verdict(self.zero_at_equality),
                "boundedness": verdict(self.boundedness),
                "order_respecting": verdict(self.order_respecting),
                "strict_monotone": verdict(self.strict_monotone),
            },
        }


_MAX_RECORDED = 3


def _clearly_nonuniform(rng: random.Random, n: int) -> WeightVector:
    """A random vector bounded away from uniform, so zero values are real bugs."""
    floor = Fraction(1, 10 * n)
    while True:
        w = random_weight_vector(rng, n)
        if _hoover_exact(w.weights) >= floor:
            return w


def axiom_suite(
    m: MeasureSpec, seed: int, samples: int, n: int = 4
) -> AxiomReport:
    """Stress the five measure axioms on seeded random allocations.

    Positivity, zero-at-equality, and boundedness look at raw values;
    the two monotonicity axioms look at the index orientation, so a
    mis-declared direction shows up as an order violation.  Every failed
    axiom records concrete counterexamples that re-fail deterministically.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = random.Random(seed)

    points = [uniform_vector(n)]
    points += [random_weight_vector(rng, n) for _ in range(samples)]

    bad_positive: list[Counterexample] = []
    bad_finite: list[Counterexample] = []
    for w in points:
        value = evaluate(m, w)
        if not math.isfinite(value):
            bad_finite.append((w.as_strings(),))
            continue
        if value < -EQUALITY_TOL:
            bad_positive.append((w.as_strings(),))

    bad_zero: list[Counterexample] = []
    at_uniform = evaluate(m, uniform_vector(n))
    if not (abs(at_uniform) <= EQUALITY_TOL):
        bad_zero.append((uniform_vector(n).as_strings(),))
    for _ in range(samples):
        w = _clearly_nonuniform(rng, n)
        if abs(evaluate(m, w)) <= EQUALITY_TOL:
            bad_zero.append((w.as_strings(),))
            if len(bad_zero) >= _MAX_RECORDED:
                break

    bad_order: list[Counterexample] = []
    for _ in range(samples):
        alpha, beta = random_majorization_pair(rng, n)
        if index_value(m, alpha) > index_value(m, beta) + EQUALITY_TOL:
            bad_order.append((alpha.as_strings(), beta.as_strings()))

    strict: AxiomVerdict | None = None
    if m.strict:
        bad_strict: list[Counterexample] = []
        for _ in range(samples):
            alpha, beta = random_strict_majorization_pair(rng, n)
            if not (index_value(m, beta) - index_value(m, alpha) > EQUALITY_TOL):
                bad_strict.append((alpha.as_strings(), beta.as_strings()))
        strict = AxiomVerdict(
            not bad_strict, tuple(bad_strict[:_MAX_RECORDED])
        )

    return AxiomReport(
        measure_id=m.id,
        seed=seed,
        samples=samples,
        n=n,
        positivity=AxiomVerdict(
            not bad_positive, tuple(bad_positive[:_MAX_RECORDED])
        ),
        zero_at_equality=AxiomVerdict(not bad_zero, tuple(bad_zero[:_MAX_RECORDED])),
        boundedness=AxiomVerdict(not bad_finite, tuple(bad_finite[:_MAX_RECORDED])),
        order_respecting=AxiomVerdict(
            not bad_order, tuple(bad_order[:_MAX_RECORDED])
        ),
        strict_monotone=strict,
    )


# --------------------------------------------------------------------------
# Derivative-based Schur condition.
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SchurCheckReport:
    """Breakdown of the symmetry + pairwise-sign test at one point."""

    symmetric: bool
    sign_condition: bool
    max_symmetry_gap: float
    max_sign_product: float

    @property
    def passed(self) -> bool:
        return self.symmetric and self.sign_condition


def schur_ostrowski_report(
    f: AmbientFn,
    point: WeightVector,
    step: float = FD_STEP,
    seed: int = 0,
) -> SchurCheckReport:
    """Probe a function for the differential signature of spread-seeking.

    ``f`` must be symmetric and, for every coordinate pair, the larger
    coordinate must carry the (weakly) smaller partial derivative:
    (x_i - x_j) * (d_i f - d_j f) <= 0.  Partials are central finite
    differences in the ambient space, so the point must sit far enough
    inside the simplex for both probes of each coordinate to stay positive.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if float(min(point.weights)) <= step:
        raise DomainError(
            "point too close to the boundary for this finite-difference step"
        )
    xs = [float(w) for w in point.weights]
    n = len(xs)

    rng = random.Random(seed)
    reference = f(xs)
    max_gap = 0.0
    for _ in range(10):
        shuffled = xs[:]
        rng.shuffle(shuffled)
        max_gap = max(max_gap, abs(f(shuffled) - reference))
    symmetric = max_gap <= SYMMETRY_TOL

    partials = []
    for i in range(n):
        up = xs[:]
        down = xs[:]
        up[i] += step
        down[i] -= step
        partials.append((f(up) - f(down)) / (2 * step))

    max_product = -math.inf
    for i in range(n):
        for j in range(i + 1, n):
            product = (xs[i] - xs[j]) * (partials[i] - partials[j])
            max_product = max(max_product, product)
    sign_ok = max_product <= SIGN_PRODUCT_TOL

    return SchurCheckReport(symmetric, sign_ok, max_gap, max_product)


def schur_ostrowski_check(
    f: AmbientFn,
    point: WeightVector,
    step: float = FD_STEP,
    seed: int = 0,
) -> bool:
    """True iff the symmetry and pairwise sign conditions both hold at the point."""
    return schur_ostrowski_report(f, point, step, seed).passed


def concave_sum_rank(
    alpha: WeightVector,
    beta: WeightVector,
    seed: int = 0,
    family_size: int = 64,
) -> bool:
    """Check sum-of-g rankings over a sampled family of concave functions.

    For every sampled concave g, the flatter allocation must win:
    sum g(alpha_i) >= sum g(beta_i) - 1e-12.  The family is the seeded
    angle family g_t(x) = -max(x - t, 0) plus square root and a shifted
    logarithm; it is a spot check, not a proof over all concave g.
    """
    if not majorizes(beta, alpha):
        raise NotMajorized("second argument must majorize the first")

    rng = random.Random(seed)
    thresholds = [rng.random() for _ in range(family_size)]
    families: list[Callable[[float], float]] = [
        (lambda x, t=t: -max(x - t, 0.0)) for t in thresholds
    ]
    families.append(math.sqrt)
    families.append(lambda x: math.log(x + 1e-6))

    a = [float(w) for w in alpha.weights]
    b = [float(w) for w in beta.weights]
    for g in families:
        if math.fsum(g(x) for x in a) < math.fsum(g(x) for x in b) - EQUALITY_TOL:
            return False
    return True


__all__ = [
    "FD_STEP",
    "SIGN_PRODUCT_TOL",
    "SYMMETRY_TOL",
    "EQUALITY_TOL",
    "Direction",
    "MeasureSpec",
    "LOG_CONTROL",
    "registry",
    "get_measure",
    "evaluate",
    "exact_value",
    "index_value",
    "ambient_utility",
    "AxiomVerdict",
    "AxiomReport",
    "axiom_suite",
    "SchurCheckReport",
    "schur_ostrowski_report",
    "schur_ostrowski_check",
    "concave_sum_rank",
]
