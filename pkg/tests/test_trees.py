"""Tree encoding, contours, mobiles, labeling counts."""

import io

import numpy as np
import pytest

from bimaplab.errors import BadLabeling, BadRootLabel, MalformedTree
from bimaplab.rng import RngState
from bimaplab.sampler import sample_conditioned_tree, sample_mobile
from bimaplab.trees import (
    Mobile,
    contour_sequence,
    count_labelings,
    parse_mobiles,
    validate_mobile,
    validate_tree,
    white_contour_sequence,
    write_mobile,
)


class TestValidateTree:
    def test_smallest_tree(self):
        t = validate_tree([1, 0])
        assert t.edge_count == 1
        assert t.depths.tolist() == [0, 1]

    def test_hand_tree(self):
        t = validate_tree([1, 2, 0, 0])
        assert t.edge_count == 3
        assert t.parents.tolist() == [-1, 0, 1, 1]
        assert t.white_vertices.tolist() == [0, 2, 3]

    def test_overclaimed_children_rejected(self):
        with pytest.raises(MalformedTree):
            validate_tree([2, 0])

    def test_early_termination_rejected(self):
        with pytest.raises(MalformedTree):
            validate_tree([1, 0, 0])

    def test_negative_rejected(self):
        with pytest.raises(MalformedTree):
            validate_tree([1, -1])


class TestContour:
    def test_single_edge(self):
        assert contour_sequence(validate_tree([1, 0])).tolist() == [0, 1, 0]

    def test_hand_tree(self):
        seq = contour_sequence(validate_tree([1, 2, 0, 0]))
        assert seq.tolist() == [0, 1, 2, 1, 3, 1, 0]

    def test_endpoints_are_root(self):
        for counts in ([1, 0], [3, 0, 1, 0, 0], [1, 2, 1, 0, 0]):
            seq = contour_sequence(validate_tree(counts))
            assert seq[0] == 0 and seq[-1] == 0
            assert len(seq) == 2 * (len(counts) - 1) + 1
            # consecutive entries are parent/child
            t = validate_tree(counts)
            for a, b in zip(seq, seq[1:]):
                assert t.parents[b] == a or t.parents[a] == b
            assert set(seq.tolist()) == set(range(len(counts)))

    def test_white_contour(self):
        wc = white_contour_sequence(validate_tree([1, 2, 0, 0]))
        assert wc.tolist() == [0, 2, 3, 0]
        t = validate_tree([1, 0])
        assert white_contour_sequence(t).tolist() == [0, 0]


class TestMobiles:
    def test_valid_labeling(self):
        t = validate_tree([1, 2, 0, 0])
        mob = validate_mobile(t, [0, 1, 0])
        assert mob.labels.tolist() == [0, 1, 0]

    def test_jump_of_two_down_rejected(self):
        t = validate_tree([1, 2, 0, 0])
        with pytest.raises(BadLabeling):
            validate_mobile(t, [0, 2, 0])

    def test_single_edge(self):
        mob = validate_mobile(validate_tree([1, 0]), [0])
        assert mob.edge_count == 1

    def test_root_label_must_be_zero(self):
        with pytest.raises(BadRootLabel):
            validate_mobile(validate_tree([1, 0]), [1])

    def test_label_count_checked(self):
        with pytest.raises(BadLabeling):
            validate_mobile(validate_tree([1, 2, 0, 0]), [0, 1])

    def test_closing_increment_checked(self):
        # parent 0, single child 2: entering +2 is fine only if it is;
        # the cycle 0 -> 2 -> 0 has closing increment -2
        t = validate_tree([1, 1, 0])
        with pytest.raises(BadLabeling):
            validate_mobile(t, [0, 2])
        validate_mobile(t, [0, 1])
        validate_mobile(t, [0, -1])


class TestCountLabelings:
    @pytest.mark.parametrize(
        "counts,expected",
        [([1, 0], 1), ([1, 1, 0], 3), ([1, 2, 0, 0], 10), ([2, 0, 0], 1)],
    )
    def test_hand_values(self, counts, expected):
        assert count_labelings(validate_tree(counts)) == expected

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_counts_by_exhaustion(self, n):
        """The binomial product counts exactly the admissible labelings."""
        from itertools import product

        from bimaplab.enumeration import enumerate_plane_trees

        for tree in enumerate_plane_trees(n):
            whites = tree.white_vertices
            k = len(whites)
            accepted = 0
            span = range(-n, n + 1)
            for labels in product(span, repeat=k - 1):
                try:
                    validate_mobile(tree, np.array((0,) + labels))
                    accepted += 1
                except BadLabeling:
                    pass
            assert accepted == count_labelings(tree)


def test_sampled_trees_valid_and_deterministic():
    a = sample_conditioned_tree(200, RngState(3))
    b = sample_conditioned_tree(200, RngState(3))
    assert a == b
    validate_tree(a.child_counts)
    mob1 = sample_mobile(200, RngState(4))
    mob2 = sample_mobile(200, RngState(4))
    assert mob1 == mob2
    validate_mobile(mob1.tree, mob1.labels)


def test_mobile_text_roundtrip():
    mob = sample_mobile(20, RngState(5))
    buf = io.StringIO()
    write_mobile(mob, buf, eps=1)
    write_mobile(mob, buf)  # second record without eps line
    records = parse_mobiles(buf.getvalue())
    assert len(records) == 2
    assert records[0] == (mob, 1)
    assert records[1] == (mob, 0)


def test_mobile_parse_rejects_garbage():
    with pytest.raises(MalformedTree):
        parse_mobiles("MOBILE n=2\n1 0\n0\n")  # header inconsistent
    with pytest.raises(MalformedTree):
        parse_mobiles("nonsense\n")
