"""Tests for the dendrogram core: validation, derived matrices, ordering,
and the merge-table text format.

Expected matrix values for the fixed examples were derived by hand from
the LCA definitions; the random sweeps check against the brute-force
parent-walk oracles in helpers.py.
"""

import numpy as np
import pytest

from branchembed import (
    CondensedMatrix,
    Dendrogram,
    DendrogramError,
    DuplicateChild,
    ForwardReference,
    MergeRecord,
    NegativeHeight,
    NonMonotonic,
    ParseError,
    SizeMismatch,
    cophenetic_matrix,
    kinship_matrix,
    leaf_order,
    parse_merge_table,
    serialize_merge_table,
    validate_dendrogram,
)
from helpers import brute_cophenetic, brute_kinship, random_dendrogram

EPS = 1e-12


@pytest.fixture
def two_block():
    # ((0,1) at 1, (2,3) at 1) joined at 2.5
    return validate_dendrogram(
        [(0, 1, 1.0, 2), (2, 3, 1.0, 2), (4, 5, 2.5, 4)], 4)


@pytest.fixture
def caterpillar():
    # (((0,1),2),3) with heights 1 < 2 < 3
    return validate_dendrogram(
        [(0, 1, 1.0, 2), (4, 2, 2.0, 3), (5, 3, 3.0, 4)], 4)


class TestValidation:
    def test_accepts_valid_table(self):
        d = validate_dendrogram(
            [(0, 1, 2.0, 2), (2, 3, 1.0, 2), (4, 5, 3.0, 4)], 4)
        assert isinstance(d, Dendrogram)
        assert d.n_leaves == 4 and d.n_nodes == 7 and d.root == 6
        assert list(d.records())[0] == MergeRecord(0, 1, 2.0, 2)

    def test_accepts_array_input(self):
        arr = np.array([[0, 1, 1.0, 2], [2, 3, 1.5, 2], [4, 5, 2.0, 4]])
        d = validate_dendrogram(arr, 4)
        assert d.size[-1] == 4

    def test_rejects_wrong_record_count(self):
        with pytest.raises(DendrogramError):
            validate_dendrogram([(0, 1, 1.0, 2)], 4)

    def test_duplicate_child_same_record(self):
        with pytest.raises(DuplicateChild) as err:
            validate_dendrogram([(0, 0, 1.0, 2), (2, 1, 2.0, 3)], 3)
        assert err.value.record == 0

    def test_duplicate_child_across_records(self):
        with pytest.raises(DuplicateChild) as err:
            validate_dendrogram(
                [(0, 1, 1.0, 2), (1, 2, 2.0, 3)], 3)
        assert err.value.record == 1

    def test_forward_reference(self):
        with pytest.raises(ForwardReference) as err:
            validate_dendrogram([(0, 3, 1.0, 2), (1, 2, 2.0, 3)], 3)
        assert err.value.record == 0

    def test_negative_id(self):
        with pytest.raises(ForwardReference):
            validate_dendrogram([(-1, 1, 1.0, 2), (3, 2, 2.0, 3)], 3)

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch) as err:
            validate_dendrogram([(0, 1, 1.0, 2), (3, 2, 2.0, 4)], 3)
        assert err.value.record == 1

    def test_non_monotonic(self):
        with pytest.raises(NonMonotonic) as err:
            validate_dendrogram([(0, 1, 2.0, 2), (3, 2, 1.0, 3)], 3)
        assert err.value.record == 1

    def test_negative_height(self):
        with pytest.raises(NegativeHeight) as err:
            validate_dendrogram([(0, 1, -0.5, 2), (3, 2, 1.0, 3)], 3)
        assert err.value.record == 0

    def test_monotonicity_allows_roundoff_slack(self):
        h = 1.0
        d = validate_dendrogram(
            [(0, 1, h, 2), (3, 2, h * (1 - 1e-15), 3)], 3)
        assert d.n_leaves == 3

    def test_equal_heights_allowed(self):
        d = validate_dendrogram([(0, 1, 1.0, 2), (3, 2, 1.0, 3)], 3)
        assert d.height[0] == d.height[1]

    def test_arrays_frozen(self, two_block):
        with pytest.raises(ValueError):
            two_block.height[0] = 5.0


class TestCondensedMatrix:
    def test_index_layout(self):
        cm = CondensedMatrix(4, np.arange(6, dtype=float))
        expected = {(0, 1): 0, (0, 2): 1, (0, 3): 2,
                    (1, 2): 3, (1, 3): 4, (2, 3): 5}
        for (i, j), flat in expected.items():
            assert cm.index(i, j) == flat
            assert cm.index(j, i) == flat
            assert cm.value(i, j) == float(flat)

    def test_diagonal_rejected(self):
        cm = CondensedMatrix(3, np.zeros(3))
        with pytest.raises(ValueError):
            cm.index(1, 1)

    def test_square_round_trip(self):
        rng = np.random.default_rng(7)
        vals = rng.uniform(size=10 * 9 // 2)
        cm = CondensedMatrix(10, vals)
        back = CondensedMatrix.from_square(cm.to_square())
        assert np.array_equal(back.values, vals)

    def test_rejects_bad_length(self):
        with pytest.raises(ValueError):
            CondensedMatrix(4, np.zeros(5))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            CondensedMatrix(3, np.array([1.0, np.nan, 2.0]))


class TestCophenetic:
    def test_two_block_example(self, two_block):
        cm = cophenetic_matrix(two_block)
        assert cm.value(0, 1) == 1.0
        assert cm.value(2, 3) == 1.0
        for i in (0, 1):
            for j in (2, 3):
                assert cm.value(i, j) == 2.5

    def test_two_leaves(self):
        d = validate_dendrogram([(0, 1, 4.2, 2)], 2)
        assert cophenetic_matrix(d).values.tolist() == [4.2]

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_brute_force(self, seed):
        rng = np.random.default_rng(seed)
        d = random_dendrogram(int(rng.integers(2, 40)), rng)
        got = cophenetic_matrix(d).values
        assert np.allclose(got, brute_cophenetic(d), rtol=0, atol=0)

    @pytest.mark.parametrize("seed", range(5))
    def test_ultrametric(self, seed):
        rng = np.random.default_rng(100 + seed)
        n = int(rng.integers(3, 25))
        sq = cophenetic_matrix(random_dendrogram(n, rng)).to_square()
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    assert sq[i, j] <= max(sq[i, k], sq[k, j])


class TestKinship:
    def test_caterpillar_example(self, caterpillar):
        km = kinship_matrix(caterpillar)
        assert km.value(0, 1) == 2.0
        assert km.value(0, 2) == 3.0
        assert km.value(1, 2) == 3.0
        assert km.value(0, 3) == 4.0
        assert km.value(1, 3) == 4.0
        assert km.value(2, 3) == 3.0

    def test_balanced_example(self, two_block):
        km = kinship_matrix(two_block)
        assert km.value(0, 1) == 2.0
        assert km.value(2, 3) == 2.0
        for i in (0, 1):
            for j in (2, 3):
                assert km.value(i, j) == 4.0

    def test_values_are_small_integers(self, caterpillar):
        vals = kinship_matrix(caterpillar).values
        assert np.array_equal(vals, np.round(vals))
        assert vals.min() >= 2

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_brute_force(self, seed):
        rng = np.random.default_rng(200 + seed)
        d = random_dendrogram(int(rng.integers(2, 40)), rng)
        got = kinship_matrix(d).values
        assert np.array_equal(got, brute_kinship(d))

    @pytest.mark.parametrize("seed", range(5))
    def test_triangle_inequality(self, seed):
        rng = np.random.default_rng(300 + seed)
        n = int(rng.integers(3, 20))
        sq = kinship_matrix(random_dendrogram(n, rng)).to_square()
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if i != j and j != k and i != k:
                        assert sq[i, j] <= sq[i, k] + sq[k, j]


class TestLeafOrder:
    def test_two_block(self, two_block):
        assert leaf_order(two_block) == [0, 1, 2, 3]

    def test_caterpillar(self, caterpillar):
        assert leaf_order(caterpillar) == [0, 1, 2, 3]

    def test_respects_left_right(self):
        d = validate_dendrogram(
            [(1, 0, 1.0, 2), (2, 3, 2.0, 3)], 3)
        assert leaf_order(d) == [2, 1, 0]

    @pytest.mark.parametrize("seed", range(6))
    def test_is_permutation(self, seed):
        rng = np.random.default_rng(400 + seed)
        n = int(rng.integers(2, 60))
        order = leaf_order(random_dendrogram(n, rng))
        assert sorted(order) == list(range(n))

    @pytest.mark.parametrize("seed", range(6))
    def test_adjacent_pairs_are_closest_across_their_boundary(self, seed):
        # For adjacent leaves (u, v), any pair spanning the same boundary
        # from farther out meets at the same node or higher.
        rng = np.random.default_rng(500 + seed)
        n = int(rng.integers(3, 30))
        d = random_dendrogram(n, rng)
        order = leaf_order(d)
        sq = cophenetic_matrix(d).to_square()
        for k in range(n - 1):
            u, v = order[k], order[k + 1]
            h = sq[u, v]
            for later in order[k + 2:]:
                assert sq[u, later] >= h - EPS
            for earlier in order[:k]:
                assert sq[earlier, v] >= h - EPS


class TestMergeTableText:
    def test_parse_example(self):
        d = parse_merge_table("0,1,1.0,2\n")
        assert d.n_leaves == 2
        assert list(d.records()) == [MergeRecord(0, 1, 1.0, 2)]

    def test_parse_multi_record(self):
        text = "0,1,1.5,2\n2,3,2,2\n4,5,3.25,4\n"
        d = parse_merge_table(text)
        assert d.n_leaves == 4
        assert d.height.tolist() == [1.5, 2.0, 3.25]

    def test_parse_rejects_field_count(self):
        with pytest.raises(ParseError) as err:
            parse_merge_table("0,1,1.0\n")
        assert err.value.line == 1

    def test_parse_rejects_non_numeric(self):
        with pytest.raises(ParseError) as err:
            parse_merge_table("0,1,1.0,2\n2,x,2.0,3\n")
        assert err.value.line == 2

    def test_parse_rejects_float_id(self):
        with pytest.raises(ParseError):
            parse_merge_table("0.5,1,1.0,2\n")

    def test_parse_validates(self):
        with pytest.raises(NonMonotonic):
            parse_merge_table("0,1,2.0,2\n3,2,1.0,3\n")

    def test_serialize_format(self, two_block):
        text = serialize_merge_table(two_block)
        assert text == "0,1,1,2\n2,3,1,2\n4,5,2.5,4\n"

    @pytest.mark.parametrize("seed", range(6))
    def test_round_trip(self, seed):
        rng = np.random.default_rng(600 + seed)
        d = random_dendrogram(int(rng.integers(2, 50)), rng)
        text = serialize_merge_table(d)
        back = parse_merge_table(text)
        assert back == d
        assert serialize_merge_table(back) == text

    def test_heights_survive_full_precision(self):
        h1 = 1.0 / 3.0
        h2 = np.nextafter(h1, 1.0) * 2
        d = validate_dendrogram([(0, 1, h1, 2), (3, 2, h2, 3)], 3)
        back = parse_merge_table(serialize_merge_table(d))
        assert back.height[0] == h1 and back.height[1] == h2
