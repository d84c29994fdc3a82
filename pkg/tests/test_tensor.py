"""Tests for the tensor container, reshaping, unfoldings, and Kronecker ops."""

import numpy as np
import pytest

from irskron.tensor import kron, rank_one_tensor, tensorize, unfold, vectorize


def _ordered_factorizations(n, min_part=2):
    """All ordered tuples of integers >= min_part whose product is n."""
    if n == 1:
        return [()]
    out = []
    for d in range(min_part, n + 1):
        if n % d == 0:
            for rest in _ordered_factorizations(n // d, min_part):
                out.append((d,) + rest)
    return out


def _random_unit_phases(rng, n):
    return np.exp(1j * rng.uniform(-np.pi, np.pi, n))


class TestTensorize:
    def test_two_by_two_mapping(self):
        a, b, c, d = 1 + 2j, -3j, 0.5, 2 - 1j
        t = tensorize([a, b, c, d], [2, 2])
        assert t.data[0, 0] == a
        assert t.data[1, 0] == b
        assert t.data[0, 1] == c
        assert t.data[1, 1] == d

    def test_order_one_is_identity_reshape(self):
        y = np.array([1 + 1j, 2.0, -3j])
        t = tensorize(y, [3])
        assert np.array_equal(t.data, y)

    def test_frontal_slices(self):
        t = tensorize(np.arange(1, 9), [2, 2, 2])
        assert np.array_equal(t.data[:, :, 0], np.array([[1, 3], [2, 4]]))
        assert np.array_equal(t.data[:, :, 1], np.array([[5, 7], [6, 8]]))

    def test_index_map_oracle(self):
        # Oracle: evaluate the flat index n_1 + n_2*N_1 + n_3*N_2*N_1 + ...
        # directly, element by element.
        rng = np.random.default_rng(11)
        for dims in [(3,), (2, 5), (4, 3, 2), (2, 3, 2, 2)]:
            n = int(np.prod(dims))
            y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            t = tensorize(y, dims)
            for multi_index in np.ndindex(*dims):
                flat = 0
                stride = 1
                for idx, size in zip(multi_index, dims):
                    flat += idx * stride
                    stride *= size
                assert t.data[multi_index] == y[flat]

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="does not fit"):
            tensorize(np.ones(6), [2, 2])

    def test_matrix_input_rejected(self):
        with pytest.raises(ValueError, match="1-D"):
            tensorize(np.ones((2, 3)), [6])


class TestVectorize:
    def test_round_trip_explicit(self):
        y = np.arange(1, 9).astype(complex)
        assert np.array_equal(vectorize(tensorize(y, [2, 2, 2])), y)

    def test_order_one(self):
        y = np.array([2j, 1.5, -1])
        assert np.array_equal(vectorize(tensorize(y, [3])), y)

    def test_rank_one_matches_kron_chain(self):
        rng = np.random.default_rng(3)
        f1 = _random_unit_phases(rng, 4)
        f2 = _random_unit_phases(rng, 3)
        got = vectorize(rank_one_tensor([f1, f2]))
        assert np.allclose(got, np.kron(f2, f1), atol=1e-15)

    def test_round_trip_exhaustive_small_n(self):
        # Every ordered factorization of every N up to 64, bitwise.
        rng = np.random.default_rng(5)
        for n in range(1, 65):
            y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            shapes = [(n,)] + [f for f in _ordered_factorizations(n) if len(f) > 1]
            for dims in shapes:
                assert np.array_equal(vectorize(tensorize(y, dims)), y)


class TestUnfold:
    def test_mode_one(self):
        t = tensorize(np.arange(1, 9), [2, 2, 2])
        assert np.array_equal(unfold(t, 1), np.array([[1, 3, 5, 7], [2, 4, 6, 8]]))

    def test_mode_three(self):
        t = tensorize(np.arange(1, 9), [2, 2, 2])
        assert np.array_equal(unfold(t, 3), np.array([[1, 2, 3, 4], [5, 6, 7, 8]]))

    def test_order_one_gives_column(self):
        t = tensorize([1j, 2], [2])
        assert unfold(t, 1).shape == (2, 1)
        assert np.array_equal(unfold(t, 1)[:, 0], t.data)

    def test_mode_out_of_range(self):
        t = tensorize(np.arange(4), [2, 2])
        for mode in (0, 3, -1):
            with pytest.raises(ValueError, match="mode"):
                unfold(t, mode)

    def test_rank_one_unfolding_identity(self):
        # For rank-one tensors every unfolding is factor * (kron chain)^T.
        rng = np.random.default_rng(17)
        for dims in [(3, 4), (2, 3, 4), (2, 2, 3, 2), (2, 2, 2, 2, 2)]:
            factors = [_random_unit_phases(rng, d) for d in dims]
            t = rank_one_tensor(factors)
            norm_t = np.linalg.norm(t.data)
            for p in range(1, len(dims) + 1):
                rest = [factors[q] for q in range(len(dims)) if q != p - 1]
                chain = rest[0]
                for f in rest[1:]:
                    chain = np.kron(f, chain)
                expected = np.outer(factors[p - 1], chain)
                err = np.linalg.norm(unfold(t, p) - expected)
                assert err <= 1e-12 * norm_t


class TestKron:
    def test_definition(self):
        assert np.array_equal(kron(np.array([1, 2]), np.array([3, 4])), [3, 4, 6, 8])

    def test_identity_factor(self):
        a = np.array([2.0, -1j, 3])
        assert np.array_equal(kron(np.array([1]), a), a)

    def test_vec_outer_property_exact_integers(self):
        # a (x) b == vec(outer(b, a)) with column stacking, exactly.
        rng = np.random.default_rng(23)
        for _ in range(20):
            a = rng.integers(-9, 10, rng.integers(1, 6)).astype(complex)
            b = rng.integers(-9, 10, rng.integers(1, 6)).astype(complex)
            vec_outer = np.outer(b, a).reshape(-1, order="F")
            assert np.array_equal(kron(a, b), vec_outer)

    def test_matrix_rejected(self):
        with pytest.raises(ValueError, match="1-D"):
            kron(np.ones((2, 2)), np.ones(2))


class TestRankOneTensor:
    def test_hand_expansion(self):
        t = rank_one_tensor([np.array([1, 1j]), np.array([1, -1])])
        assert np.allclose(vectorize(t), [1, 1j, -1, -1j], atol=1e-15)

    def test_single_factor(self):
        f = np.array([1j, -2, 0.5])
        t = rank_one_tensor([f])
        assert np.array_equal(t.data, f)

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="at least one"):
            rank_one_tensor([])

    def test_entries_are_products(self):
        rng = np.random.default_rng(31)
        factors = [_random_unit_phases(rng, d) for d in (3, 2, 4)]
        t = rank_one_tensor(factors)
        for idx in np.ndindex(*t.dims):
            expected = factors[0][idx[0]] * factors[1][idx[1]] * factors[2][idx[2]]
            assert abs(t.data[idx] - expected) < 1e-15
