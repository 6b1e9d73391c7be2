"""Path encodings, walk functionals, and the cyclic distance bound."""

import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bimaplab.errors import BimapLabError
from bimaplab.paths import (
    LatticePath,
    check_contour_record_identity,
    contour_path,
    corner_distance_upper_bound,
    height_and_label_profiles,
    height_from_path_records,
    label_path,
    lukasiewicz_path,
    walk_functionals,
    white_contour_path,
    walk_path,
)
from bimaplab.rng import RngState
from bimaplab.sampler import sample_conditioned_tree, sample_mobile
from bimaplab.trees import validate_mobile, validate_tree


HAND_TREE = validate_tree([1, 2, 0, 0])
HAND_MOBILE = validate_mobile(HAND_TREE, [0, 1, 0])


class TestEncodings:
    def test_contour(self):
        assert contour_path(validate_tree([1, 0])).values.tolist() == [0, 1, 0]
        assert contour_path(HAND_TREE).values.tolist() == [0, 1, 2, 1, 2, 1, 0]

    def test_white_contour(self):
        assert white_contour_path(HAND_TREE).values.tolist() == [0, 1, 1, 0]
        assert white_contour_path(validate_tree([1, 0])).values.tolist() == [0, 0]

    def test_even_contour_times_are_doubled_white(self):
        for n, seed in ((50, 0), (200, 1)):
            tree = sample_conditioned_tree(n, RngState(17, seed))
            c = contour_path(tree).values
            c0 = white_contour_path(tree).values
            assert np.array_equal(c[::2], 2 * c0)

    def test_label_path(self):
        assert label_path(HAND_MOBILE).values.tolist() == [0, 1, 0, 0]
        single = validate_mobile(validate_tree([1, 0]), [0])
        assert label_path(single).values.tolist() == [0, 0]

    def test_label_path_steps_at_least_minus_one(self):
        mob = sample_mobile(500, RngState(23))
        steps = np.diff(label_path(mob).values)
        assert steps.min() >= -1

    def test_lukasiewicz(self):
        assert lukasiewicz_path(HAND_TREE).values.tolist() == [1, 3, 2, 1, 0]
        assert lukasiewicz_path(validate_tree([1, 0])).values.tolist() == [1, 1, 0]

    def test_record_identity_small_and_sampled(self):
        from bimaplab.enumeration import enumerate_plane_trees

        for n in range(1, 6):
            for tree in enumerate_plane_trees(n):
                assert check_contour_record_identity(tree)
        for seed in range(5):
            tree = sample_conditioned_tree(1000, RngState(31, seed))
            assert check_contour_record_identity(tree)

    def test_record_counts_start_at_zero(self):
        counts = height_from_path_records(lukasiewicz_path(HAND_TREE))
        assert counts[0] == 0
        # k=2 evaluation by hand: only j=0 qualifies
        assert counts[2] == 1


class TestWalkFunctionals:
    def test_hand_path(self):
        path = walk_path([1, 3, 2, 1, 0])
        f = walk_functionals(path, 3)
        assert f.future_min_count == 0
        assert f.max_value == 3
        assert f.min_value == 1

    def test_increasing_path(self):
        f = walk_functionals(walk_path([1, 2, 3]), 2)
        assert f.record_count == 2
        assert f.max_value == 3
        assert f.future_min_count == 2

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            walk_functionals(walk_path([1, 2]), 5)

    @given(st.lists(st.integers(min_value=-1, max_value=4), min_size=1, max_size=60),
           st.data())
    @settings(max_examples=200, deadline=None)
    def test_reversal_agrees_with_direct(self, steps, data):
        values = np.concatenate([[1], 1 + np.cumsum(steps)])
        m = data.draw(st.integers(min_value=0, max_value=len(values) - 1))
        f = walk_functionals(walk_path(values), m)
        # brute-force the direct definition
        brute = sum(
            1
            for j in range(m)
            if values[j] < min(values[j + 1 : m + 1])
        )
        assert f.future_min_count == brute
        brute_records = sum(
            1 for k in range(1, m + 1) if values[k] > max(values[:k])
        )
        assert f.record_count == brute_records


class TestHeightProfiles:
    def test_single_edge(self):
        mob = validate_mobile(validate_tree([1, 0]), [0])
        h, lab = height_and_label_profiles(mob)
        assert h.values.tolist() == [0, 1, 0]
        assert lab.values.tolist() == [0, 0, 0]

    def test_black_inherits_parent_label(self):
        h, lab = height_and_label_profiles(HAND_MOBILE)
        assert h.values.tolist() == [0, 1, 2, 2, 0]
        assert lab.values.tolist() == [0, 0, 1, 0, 0]


class TestDistanceBound:
    def test_degenerate_pair(self):
        assert corner_distance_upper_bound([0, 1, 0, 0], 1, 1) == 2

    def test_hand_value(self):
        assert corner_distance_upper_bound([0, 1, 0, 0], 1, 2) == 3

    def test_symmetry(self):
        L = label_path(sample_mobile(300, RngState(3)))
        gen = RngState(4).generator()
        s = gen.integers(0, 300, 50)
        t = gen.integers(0, 300, 50)
        assert np.array_equal(
            corner_distance_upper_bound(L, s, t),
            corner_distance_upper_bound(L, t, s),
        )

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            corner_distance_upper_bound([0, 1, 0, 0], 0, 9)


def test_path_kind_invariants_enforced():
    with pytest.raises(BimapLabError):
        LatticePath([0, 2, 0], "contour")  # step of 2
    with pytest.raises(BimapLabError):
        LatticePath([1, 0, 1, 0], "excursion")  # hits 0 early
    with pytest.raises(ValueError):
        LatticePath([0, 1], "mystery")


def test_csv_export():
    buf = io.StringIO()
    contour_path(HAND_TREE).to_csv(buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "index,value"
    assert lines[1] == "0,0"
    assert len(lines) == 8
