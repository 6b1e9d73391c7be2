"""Corner-successor bijection and combinatorial map structure."""

import io

import numpy as np
import pytest

from bimaplab.bijection import (
    corner_successor,
    map_to_mobile,
    map_to_mobile_with_corners,
    mobile_to_map,
    successor_array,
)
from bimaplab.enumeration import enumerate_mobiles
from bimaplab.errors import NotBipartite, NotPointed
from bimaplab.maps import (
    CombinatorialMap,
    canonical_code,
    match_rooted_maps,
    parse_map,
    validate_map,
    write_map,
)
from bimaplab.metrics import bfs
from bimaplab.rng import RngState
from bimaplab.sampler import sample_mobile
from bimaplab.trees import validate_mobile, validate_tree

HAND_MOBILE = validate_mobile(validate_tree([1, 2, 0, 0]), [0, 1, 0])


class TestSuccessor:
    def test_minimum_corner_goes_to_distinguished(self):
        assert corner_successor(HAND_MOBILE, 0) is None
        assert corner_successor(HAND_MOBILE, 2) is None

    def test_wrapping_search(self):
        assert corner_successor(HAND_MOBILE, 1) == 2

    def test_single_edge(self):
        mob = validate_mobile(validate_tree([1, 0]), [0])
        assert corner_successor(mob, 0) is None

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            corner_successor(HAND_MOBILE, 3)

    def test_array_wraps_cyclically(self):
        # labels 0,1,2,1: successor of the trailing 1-corner wraps to
        # the first 0-corner
        succ = successor_array(np.array([0, 1, 2, 1]))
        assert succ.tolist() == [-1, 0, 3, 0]


class TestForward:
    def test_single_edge_map(self):
        mob = validate_mobile(validate_tree([1, 0]), [0])
        m = mobile_to_map(mob, 0)
        assert m.n_edges == 1
        assert m.root == 0
        assert m.origin == 1
        assert validate_map(m).ok

    def test_hand_example_structure(self):
        m = mobile_to_map(HAND_MOBILE, 0)
        rep = validate_map(m)
        assert rep.ok
        assert rep.vertex_count == 4
        assert rep.face_count == 1
        assert m.face_degrees.tolist() == [6]
        prof = bfs(m, m.origin)
        # vertex of corner 1 is the label-1 white vertex, two steps away
        assert prof.distance_of(m.vertex_of_corner(1)) == 2

    def test_face_degrees_are_twice_black_degrees(self):
        for mob in enumerate_mobiles(4):
            m = mobile_to_map(mob, 0)
            tree = mob.tree
            black_deg = sorted(
                int(tree.child_counts[b]) + 1 for b in tree.black_vertices
            )
            assert sorted(d // 2 for d in m.face_degrees) == black_deg

    def test_root_orientation_bit(self):
        m0 = mobile_to_map(HAND_MOBILE, 0)
        m1 = mobile_to_map(HAND_MOBILE, 1)
        assert m0.root == 0 and m1.root == 1
        assert np.array_equal(m0.sigma, m1.sigma)


class TestInverse:
    def test_single_edge(self):
        mob = validate_mobile(validate_tree([1, 0]), [0])
        for eps in (0, 1):
            back, eps2 = map_to_mobile(mobile_to_map(mob, eps))
            assert back == mob and eps2 == eps

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_exhaustive_roundtrip(self, n):
        for mob in enumerate_mobiles(n):
            for eps in (0, 1):
                back, eps2 = map_to_mobile(mobile_to_map(mob, eps))
                assert back == mob and eps2 == eps

    def test_sampled_roundtrip(self):
        for seed in range(5):
            mob = sample_mobile(500, RngState(19, seed))
            eps = seed % 2
            back, eps2 = map_to_mobile(mobile_to_map(mob, eps))
            assert back == mob and eps2 == eps

    def test_corner_edges_identity_on_fresh_maps(self):
        mob = sample_mobile(100, RngState(20))
        m = mobile_to_map(mob, 0)
        _, _, corner_edges = map_to_mobile_with_corners(m)
        assert corner_edges.tolist() == list(range(100))

    def test_unpointed_rejected(self):
        m = mobile_to_map(HAND_MOBILE, 0)
        stripped = CombinatorialMap(m.sigma, m.root, None)
        with pytest.raises(NotPointed):
            map_to_mobile(stripped)

    def test_odd_face_rejected(self):
        # one vertex, one loop edge: faces of degree 1
        loop = CombinatorialMap(np.array([1, 0]), 0, origin=0)
        assert not validate_map(loop).ok
        with pytest.raises(NotBipartite):
            map_to_mobile(loop)


class TestCanonicalCode:
    def test_distinct_codes_for_relabeled_but_different_maps(self):
        # same underlying graph, mirrored rotation at the center vertex
        mob_a = validate_mobile(validate_tree([2, 0, 1, 0]), [0, -1])
        mob_b = validate_mobile(validate_tree([2, 1, 0, 0]), [0, -1])
        code_a = canonical_code(mobile_to_map(mob_a, 0))
        code_b = canonical_code(mobile_to_map(mob_b, 0))
        assert code_a != code_b

    def test_code_invariant_under_relabeling(self):
        mob = sample_mobile(60, RngState(21))
        m = mobile_to_map(mob, 0)
        # relabel half-edges by an alpha-compatible permutation:
        # edge e -> pi(e), flipping ends of some edges
        gen = RngState(22).generator()
        edge_perm = gen.permutation(m.n_edges)
        flip = gen.integers(0, 2, m.n_edges)
        new_id = np.empty(2 * m.n_edges, dtype=np.int64)
        for e in range(m.n_edges):
            new_id[2 * e] = 2 * edge_perm[e] + flip[e]
            new_id[2 * e + 1] = 2 * edge_perm[e] + (1 - flip[e])
        old_of_new = np.empty_like(new_id)
        old_of_new[new_id] = np.arange(2 * m.n_edges)
        sigma2 = new_id[m.sigma[old_of_new]]
        m2 = CombinatorialMap(
            sigma2,
            root=int(new_id[m.root]),
            origin=int(np.min(new_id[m.vertex_of == m.origin])),
        )
        assert canonical_code(m2) == canonical_code(m)
        psi = match_rooted_maps(m, m2)
        assert psi is not None
        assert np.array_equal(psi, new_id)

    def test_origin_distinguishes_pointings(self):
        mob = validate_mobile(validate_tree([2, 0, 0]), [0])
        m = mobile_to_map(mob, 0)
        other_vertices = [v for v in m.vertex_ids if v != m.origin]
        codes = {canonical_code(CombinatorialMap(m.sigma, m.root, int(v)))
                 for v in other_vertices}
        assert canonical_code(m) not in codes


def test_map_text_roundtrip():
    m = mobile_to_map(HAND_MOBILE, 1)
    buf = io.StringIO()
    write_map(m, buf)
    m2 = parse_map(buf.getvalue())
    assert m2 == m
    stripped = CombinatorialMap(m.sigma, m.root, None)
    buf = io.StringIO()
    write_map(stripped, buf)
    assert parse_map(buf.getvalue()).origin is None
