"""Doubly stochastic matrices, transforms, decompositions, witnesses."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import majorization_pairs, weight_vectors
from naivediv.errors import (
    DimensionMismatch,
    IndexOutOfRange,
    LengthMismatch,
    NotMajorized,
)
from naivediv.matrices import (
    DoublyStochasticMatrix,
    SquareMatrix,
    TTransform,
    apply,
    apply_transform,
    averaging_step_count,
    d_stochastic_witness,
    hlp_witness,
    is_d_stochastic,
    is_doubly_stochastic,
    is_permutation,
    muirhead_decompose,
    multivariate_feasible,
    random_doubly_stochastic,
    random_majorization_pair,
    t_to_matrix,
    uniform_mixing_matrix,
)
from naivediv.simplex import (
    WeightVector,
    majorizes,
    random_weight_vector,
    uniform_vector,
    weight_vector,
)

SWAP2 = SquareMatrix(((F(0), F(1)), (F(1), F(0))))


def full_mix(n):
    return uniform_mixing_matrix(n)


class TestPredicates:
    def test_identity_is_doubly_stochastic(self):
        assert is_doubly_stochastic(SquareMatrix.identity(3))

    def test_full_mixing_matrix(self):
        assert is_doubly_stochastic(full_mix(3))

    def test_bad_row_sum(self):
        m = SquareMatrix(
            ((F(9, 10), F(0)), (F(1, 10), F(1)))
        )  # first row sums to 9/10
        assert not is_doubly_stochastic(m)

    def test_negative_entry(self):
        m = SquareMatrix(((F(3, 2), F(-1, 2)), (F(-1, 2), F(3, 2))))
        assert not is_doubly_stochastic(m)

    def test_permutation_detection(self):
        assert is_permutation(SquareMatrix.identity(3))
        assert is_permutation(SWAP2)
        assert not is_permutation(full_mix(2))

    def test_d_stochastic_examples(self):
        d = weight_vector(["1/2", "1/4", "1/4"])
        assert is_d_stochastic(SquareMatrix.identity(3), d)
        # the swap does not fix (3/4, 1/4)
        skew = weight_vector(["3/4", "1/4"])
        assert not is_d_stochastic(SWAP2, skew)
        # with the uniform vector the notion collapses to doubly stochastic
        assert is_d_stochastic(full_mix(3), uniform_vector(3))

    def test_d_stochastic_dimension_check(self):
        with pytest.raises(DimensionMismatch):
            is_d_stochastic(SquareMatrix.identity(3), uniform_vector(2))

    @given(st.integers(0, 2**32), st.integers(2, 5))
    def test_uniform_d_stochastic_iff_doubly_stochastic(self, seed, n):
        rng = random.Random(seed)
        if rng.random() < 0.5:
            m = random_doubly_stochastic(seed, n, k=rng.randint(1, 4))
            expected = True
        else:
            # break a random entry, then repair the row sum but not the column
            base = [
                [F(rng.randint(0, 4), 4) for _ in range(n)] for _ in range(n)
            ]
            for row in base:
                total = sum(row)
                row[-1] += 1 - total
            m = SquareMatrix(tuple(tuple(row) for row in base))
            expected = is_doubly_stochastic(m)
        assert is_d_stochastic(m, uniform_vector(n)) == expected


class TestApply:
    def test_full_mix_hits_uniform(self):
        w = weight_vector(["7/10", "1/5", "1/10"])
        assert apply(w, full_mix(3)).weights == uniform_vector(3).weights

    def test_identity_fixes_everything(self):
        w = weight_vector(["7/10", "1/5", "1/10"])
        assert apply(w, SquareMatrix.identity(3)).weights == w.weights

    def test_single_averaging_matrix(self):
        m = t_to_matrix(TTransform(0, 2, F(1, 2)), 3)
        w = weight_vector(["1/2", "1/3", "1/6"])
        assert apply(w, m).weights == uniform_vector(3).weights

    def test_rejects_non_doubly_stochastic(self):
        m = SquareMatrix(((F(1), F(1)), (F(0), F(0))))
        with pytest.raises(ValueError):
            apply(uniform_vector(2), m)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            apply(uniform_vector(2), SquareMatrix.identity(3))

    @given(weight_vectors(min_n=2, max_n=5), st.integers(0, 2**32))
    def test_result_is_majorized_by_input(self, w, seed):
        m = random_doubly_stochastic(seed, w.n, k=1 + seed % 4)
        out = apply(w, m)
        assert majorizes(w, out)


class TestTTransform:
    def test_lambda_bounds(self):
        with pytest.raises(ValueError):
            TTransform(0, 1, F(3, 2))
        with pytest.raises(ValueError):
            TTransform(0, 0, F(1, 2))

    def test_identity_matrix_at_lambda_one(self):
        assert t_to_matrix(TTransform(0, 1, F(1)), 2).rows == (
            (F(1), F(0)),
            (F(0), F(1)),
        )

    def test_swap_matrix_at_lambda_zero(self):
        assert t_to_matrix(TTransform(0, 1, F(0)), 2).rows == SWAP2.rows

    def test_half_mix_matrix(self):
        m = t_to_matrix(TTransform(0, 2, F(1, 2)), 3)
        assert m.rows == (
            (F(1, 2), F(0), F(1, 2)),
            (F(0), F(1), F(0)),
            (F(1, 2), F(0), F(1, 2)),
        )

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            t_to_matrix(TTransform(0, 3, F(1, 2)), 3)

    @given(weight_vectors(min_n=2, max_n=6), st.data())
    def test_matrix_and_direct_application_agree(self, w, data):
        j = data.draw(st.integers(0, w.n - 1))
        k = data.draw(st.integers(0, w.n - 1).filter(lambda x: x != j))
        lam = F(data.draw(st.integers(0, 12)), 12)
        t = TTransform(j, k, lam)
        assert apply_transform(w, t).weights == apply(w, t_to_matrix(t, w.n)).weights


class TestMuirheadDecompose:
    def test_single_step_to_uniform(self):
        w = weight_vector(["1/2", "1/3", "1/6"])
        steps = muirhead_decompose(w, uniform_vector(3))
        assert [(t.j, t.k, t.lam) for t in steps] == [(0, 2, F(1, 2))]

    def test_two_step_decomposition(self):
        w = weight_vector(["7/10", "1/5", "1/10"])
        steps = muirhead_decompose(w, uniform_vector(3))
        assert [(t.j, t.k, t.lam) for t in steps] == [
            (0, 2, F(11, 18)),
            (0, 1, F(1, 2)),
        ]
        # oracle: multiply the two transform matrices and apply exactly
        product = t_to_matrix(steps[0], 3) @ t_to_matrix(steps[1], 3)
        assert apply(w, DoublyStochasticMatrix(product.rows)).weights == (
            uniform_vector(3).weights
        )

    def test_identical_vectors_need_nothing(self):
        w = weight_vector(["2/5", "2/5", "1/5"])
        assert muirhead_decompose(w, w) == []

    def test_not_majorized_is_refused(self):
        w = weight_vector(["1/2", "1/3", "1/6"])
        with pytest.raises(NotMajorized):
            muirhead_decompose(uniform_vector(3), w)
        with pytest.raises(LengthMismatch):
            muirhead_decompose(w, uniform_vector(4))

    def test_permuted_target_reached_exactly(self):
        beta = weight_vector(["7/10", "1/5", "1/10"])
        alpha = weight_vector(["1/6", "1/2", "1/3"])  # scrambled arrangement
        steps = muirhead_decompose(beta, alpha)
        current = beta
        for t in steps:
            current = apply_transform(current, t)
        assert current.weights == alpha.weights
        assert averaging_step_count(steps) <= beta.n - 1

    @given(majorization_pairs(min_n=2, max_n=6))
    def test_chain_reproduces_target_with_bounded_averaging(self, pair):
        alpha, beta = pair
        steps = muirhead_decompose(beta, alpha)
        current = beta
        for t in steps:
            current = apply_transform(current, t)
        assert current.weights == alpha.weights
        assert averaging_step_count(steps) <= beta.n - 1


class TestHlpWitness:
    def test_pinned_witness_matrix(self):
        w = weight_vector(["1/2", "1/3", "1/6"])
        p = hlp_witness(w, uniform_vector(3))
        assert p.rows == (
            (F(1, 2), F(0), F(1, 2)),
            (F(0), F(1), F(0)),
            (F(1, 2), F(0), F(1, 2)),
        )

    def test_identity_for_equal_vectors(self):
        w = weight_vector(["2/5", "2/5", "1/5"])
        assert hlp_witness(w, w).rows == SquareMatrix.identity(3).rows

    @given(majorization_pairs(min_n=2, max_n=5))
    def test_witness_reproduces_target(self, pair):
        alpha, beta = pair
        p = hlp_witness(beta, alpha)
        assert is_doubly_stochastic(p)
        assert apply(beta, p).weights == alpha.weights


class TestMultivariateFeasible:
    def test_feasible_by_construction(self):
        rng = random.Random(3)
        y = [random_weight_vector(rng, 4) for _ in range(3)]
        p = random_doubly_stochastic(99, 4, k=3)
        x = [apply(row, p) for row in y]
        witness = multivariate_feasible(x, y)
        assert witness is not None
        assert is_doubly_stochastic(witness)
        assert all(
            apply(row, witness).weights == target.weights
            for row, target in zip(y, x)
        )

    def test_x_equals_y_is_feasible(self):
        rows = [weight_vector(["1/2", "1/2", "0"]), uniform_vector(3)]
        assert multivariate_feasible(rows, rows) is not None

    def test_row_majorization_violation_is_infeasible(self):
        y = [uniform_vector(3)]
        x = [weight_vector(["1", "0", "0"])]  # strictly majorizes the row of y
        assert multivariate_feasible(x, y) is None

    def test_dimension_checks(self):
        with pytest.raises(DimensionMismatch):
            multivariate_feasible([uniform_vector(3)], [])
        with pytest.raises(DimensionMismatch):
            multivariate_feasible([uniform_vector(3)], [uniform_vector(4)])

    @given(weight_vectors(min_n=2, max_n=5), weight_vectors(min_n=2, max_n=5))
    def test_single_row_agrees_with_majorization(self, x, y):
        if x.n != y.n:
            return
        witness = multivariate_feasible([x], [y])
        assert (witness is not None) == majorizes(y, x)


class TestDStochasticWitness:
    def test_benchmark_itself_is_reachable(self):
        d = weight_vector(["1/2", "1/4", "1/4"])
        beta = weight_vector(["7/10", "1/5", "1/10"])
        a = d_stochastic_witness(beta, d, d)
        assert a is not None
        assert is_d_stochastic(a, d)
        n = d.n
        reached = tuple(
            sum(beta.weights[i] * a.rows[i][j] for i in range(n)) for j in range(n)
        )
        assert reached == d.weights

    def test_infeasible_direction(self):
        d = uniform_vector(3)
        beta = uniform_vector(3)
        alpha = weight_vector(["1/2", "1/3", "1/6"])
        # uniform cannot be spread back out by an averaging matrix
        assert d_stochastic_witness(beta, alpha, d) is None


class TestRandomDoublyStochastic:
    def test_single_extreme_point_is_permutation(self):
        assert is_permutation(random_doubly_stochastic(17, 4, k=1))

    def test_convex_combination_is_doubly_stochastic(self):
        assert is_doubly_stochastic(random_doubly_stochastic(17, 4, k=5))

    def test_same_seed_same_matrix(self):
        a = random_doubly_stochastic(23, 5, k=3)
        b = random_doubly_stochastic(23, 5, k=3)
        assert a.rows == b.rows


def test_random_majorization_pair_is_ordered():
    rng = random.Random(5)
    for _ in range(50):
        alpha, beta = random_majorization_pair(rng, 4)
        assert majorizes(beta, alpha)


def test_composition_of_doubly_stochastic_is_doubly_stochastic():
    a = random_doubly_stochastic(1, 4, k=2)
    b = random_doubly_stochastic(2, 4, k=3)
    assert is_doubly_stochastic(a @ b)
