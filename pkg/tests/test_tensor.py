"""Tests for indices, tensors and pairwise contraction."""

import numpy as np
import pytest

from tncount.errors import TensorError
from tncount.tensor.contract import pairwise_contract, shared_indices
from tncount.tensor.core import (
    ClauseOrigin,
    CopyOrigin,
    Index,
    Tensor,
    address,
    assignment_at,
    copy_tensor,
    tensor_from_entries,
)


@pytest.fixture
def ijk():
    return Index.new(label="i"), Index.new(label="j"), Index.new(label="k")


class TestIndex:
    def test_identity_is_the_id(self):
        a = Index(7, 2, "a")
        assert a == Index(7, 3, "b")
        assert Index.new() != Index.new()

    def test_size_must_be_positive(self):
        with pytest.raises(TensorError):
            Index.new(0)


class TestCopyTensor:
    def test_vector(self, ijk):
        assert copy_tensor(ijk[:1]).values.tolist() == [1.0, 1.0]

    def test_matrix_is_identity(self, ijk):
        np.testing.assert_array_equal(copy_tensor(ijk[:2]).values, np.eye(2))

    def test_rank_three(self, ijk):
        values = copy_tensor(ijk).values
        assert values.sum() == 2.0
        assert values[0, 0, 0] == 1.0 and values[1, 1, 1] == 1.0

    def test_empty_is_scalar_one(self):
        assert copy_tensor(()).scalar() == 1.0

    def test_mixed_sizes_rejected(self):
        with pytest.raises(TensorError):
            copy_tensor([Index.new(2), Index.new(3)])


class TestOriginTensors:
    def test_weighted_copy(self, ijk):
        t = Tensor(ijk[:2], origin=CopyOrigin(1, (0.3, 0.7)))
        np.testing.assert_allclose(t.values, [[0.3, 0.0], [0.0, 0.7]])

    def test_rank_zero_copy_carries_the_weight_sum(self):
        assert Tensor((), origin=CopyOrigin(1, (0.3, 0.7))).scalar() == pytest.approx(1.0)

    def test_clause_is_zero_only_on_the_falsifying_assignment(self, ijk):
        # x or not y or z
        t = Tensor(ijk, origin=ClauseOrigin(0, (frozenset({1}), frozenset({0}), frozenset({1}))))
        assert t.values.sum() == 7.0
        assert t.values[0, 1, 0] == 0.0

    def test_tautological_pair_is_constant_one(self, ijk):
        t = Tensor(ijk[:1], origin=ClauseOrigin(0, (frozenset({0, 1}),)))
        assert t.values.tolist() == [1.0, 1.0]

    def test_needs_values_or_origin(self, ijk):
        with pytest.raises(TensorError):
            Tensor(ijk)


class TestTensor:
    def test_repeated_index_rejected(self, ijk):
        i = ijk[0]
        with pytest.raises(TensorError):
            Tensor((i, i), np.eye(2))

    def test_value_count_must_match(self, ijk):
        with pytest.raises(TensorError):
            Tensor(ijk[:2], [1.0, 2.0, 3.0])

    def test_aligned_permutes_axes(self, ijk):
        i, j, _ = ijk
        t = Tensor((i, j), [[1, 2], [3, 4]])
        np.testing.assert_array_equal(t.aligned((j, i)), [[1, 3], [2, 4]])

    def test_entry(self, ijk):
        i, j, _ = ijk
        t = Tensor((i, j), [[1, 2], [3, 4]])
        assert t.entry({i: 1, j: 0, ijk[2]: 1}) == 3.0

    def test_from_entries(self, ijk):
        i, j, _ = ijk
        assert tensor_from_entries((i, j), lambda a: 0.0).values.sum() == 0.0
        assert tensor_from_entries((), lambda a: 1.0).scalar() == 1.0
        same = tensor_from_entries((i, j), lambda a: float(a[i] == a[j]))
        np.testing.assert_array_equal(same.values, copy_tensor((i, j)).values)

    def test_address_round_trip(self, ijk):
        offset = address(ijk, {ijk[0]: 1, ijk[1]: 0, ijk[2]: 1})
        assert offset == 5
        assert assignment_at(ijk, offset) == {ijk[0]: 1, ijk[1]: 0, ijk[2]: 1}


class TestPairwiseContract:
    def test_copy_chain_is_copy_of_symmetric_difference(self, ijk):
        i, j, k = ijk
        result = pairwise_contract(copy_tensor((i, j)), copy_tensor((j, k)))
        assert result.indices == (i, k)
        np.testing.assert_array_equal(result.values, np.eye(2))

    def test_scalars_multiply(self):
        assert pairwise_contract(Tensor((), 2.0), Tensor((), 3.0)).scalar() == 6.0

    def test_dot_product(self, ijk):
        i = ijk[0]
        assert pairwise_contract(Tensor((i,), [1, 2]), Tensor((i,), [3, 5])).scalar() == 13.0

    def test_outer_product(self, ijk):
        i, j, _ = ijk
        result = pairwise_contract(Tensor((i,), [1, 2]), Tensor((j,), [3, 5]))
        np.testing.assert_array_equal(result.values, [[3, 5], [6, 10]])

    def test_matches_einsum(self, ijk):
        i, j, k = ijk
        l = Index.new(3)
        rng = np.random.default_rng(0)
        a = Tensor((i, l, j), rng.random((2, 3, 2)))
        b = Tensor((k, j, l), rng.random((2, 2, 3)))
        result = pairwise_contract(a, b)
        assert shared_indices(a, b) == [l, j]
        np.testing.assert_allclose(result.values, np.einsum("alb,cbl->ac", a.values, b.values))

    def test_size_mismatch_rejected(self):
        a = Index(999_001, 2)
        b = Index(999_001, 3)
        with pytest.raises(TensorError):
            pairwise_contract(Tensor((a,), [1, 1]), Tensor((b,), [1, 1, 1]))

    @staticmethod
    def _random_triple(seed):
        """Three random tensors where every index is on one or two of them."""
        rng = np.random.default_rng(seed)
        held = [[], [], []]
        for _ in range(int(rng.integers(1, 7))):
            index = Index.new(int(rng.integers(1, 4)))
            for owner in rng.choice(3, size=int(rng.integers(1, 3)), replace=False):
                held[owner].append(index)
        tensors = []
        for indices in held:
            order = [indices[k] for k in rng.permutation(len(indices))]
            tensors.append(Tensor(order, rng.standard_normal([i.size for i in order])))
        return tensors

    def test_commutes(self):
        for seed in range(40):
            a, b, _ = self._random_triple(seed)
            ab, ba = pairwise_contract(a, b), pairwise_contract(b, a)
            assert ab.index_set == ba.index_set
            np.testing.assert_allclose(ab.aligned(ba.indices), ba.values, rtol=1e-12, atol=1e-12)

    def test_associates(self):
        for seed in range(40):
            a, b, c = self._random_triple(seed)
            left = pairwise_contract(pairwise_contract(a, b), c)
            right = pairwise_contract(a, pairwise_contract(b, c))
            assert left.index_set == right.index_set
            np.testing.assert_allclose(
                left.aligned(right.indices), right.values, rtol=1e-10, atol=1e-10
            )
