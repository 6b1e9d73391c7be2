"""Sampler laws: bridges, cycle shifts, decoding, labels, forests."""

from collections import Counter

import numpy as np
import pytest
from scipy import stats

from bimaplab.errors import MalformedExcursion, NotABridge
from bimaplab.laws import standard_laws
from bimaplab.paths import LatticePath, lukasiewicz_path, walk_path
from bimaplab.rng import RngState
from bimaplab.sampler import (
    cycle_shift_to_excursion,
    decode_two_type_tree,
    sample_conditioned_tree,
    sample_labels,
    sample_mobile,
    sample_nu_bridge,
    sample_progeny_sizes,
    sample_unconditioned_forest,
    sample_unconditioned_tree,
)
from bimaplab.trees import validate_mobile, validate_tree


class TestBridge:
    def test_increments_sum_to_minus_one(self):
        for n in (1, 7, 100):
            bridge = sample_nu_bridge(n, RngState(1, n))
            inc = bridge.increments
            assert inc.shape[0] == n + 1
            assert inc.sum() == -1
            assert inc.min() >= -1

    def test_deterministic_replay(self):
        a = sample_nu_bridge(10_000, RngState(42))
        b = sample_nu_bridge(10_000, RngState(42))
        assert a == b

    def test_two_step_conditional_law(self):
        """At n=1 the only jump pairs summing to -1 are (-1,0), (0,-1)."""
        counts = Counter()
        for rep in range(4000):
            inc = tuple(sample_nu_bridge(1, RngState(7, rep)).increments)
            counts[inc] += 1
        assert set(counts) == {(-1, 0), (0, -1)}
        assert counts[(-1, 0)] / 4000 == pytest.approx(0.5, abs=0.03)


class TestCycleShift:
    def test_hand_rotations(self):
        bridge = walk_path([1, 0, 0])  # increments (-1, 0)
        exc = cycle_shift_to_excursion(bridge)
        assert exc.increments.tolist() == [0, -1]
        assert exc.values.tolist() == [1, 1, 0]

        bridge = walk_path([1, 0, -1, 0])  # increments (-1, -1, 1)
        exc = cycle_shift_to_excursion(bridge)
        assert exc.increments.tolist() == [1, -1, -1]
        assert exc.values.tolist() == [1, 2, 1, 0]

    def test_valid_excursion_unchanged(self):
        exc_in = LatticePath([1, 3, 2, 1, 0], "excursion")
        assert cycle_shift_to_excursion(exc_in) == exc_in

    def test_uniqueness_brute_force(self):
        """Exactly one rotation of a bridge is a first-passage excursion."""
        gen = RngState(13).generator()
        laws = standard_laws()
        for _ in range(60):
            while True:
                inc = laws.sample_jumps(gen, 8)
                if inc.sum() == -1:
                    break
            good = 0
            for r in range(8):
                rot = np.concatenate([inc[r:], inc[:r]])
                vals = np.concatenate([[1], 1 + np.cumsum(rot)])
                if vals[-1] == 0 and np.all(vals[:-1] >= 1):
                    good += 1
            assert good == 1

    def test_bad_bridge_rejected(self):
        with pytest.raises(NotABridge):
            cycle_shift_to_excursion(walk_path([1, 2, 1]))  # sums to 0


class TestDecode:
    def test_hand_decoding(self):
        exc = LatticePath([1, 3, 2, 1, 0], "excursion")
        assert decode_two_type_tree(exc) == validate_tree([1, 2, 0, 0])

    def test_single_increment_rejected(self):
        with pytest.raises(MalformedExcursion):
            decode_two_type_tree(LatticePath([1, 0], "excursion"))

    @pytest.mark.parametrize("seed", range(8))
    def test_roundtrip_through_walk(self, seed):
        bridge = sample_nu_bridge(400, RngState(3, seed))
        exc = cycle_shift_to_excursion(bridge)
        tree = decode_two_type_tree(exc)
        assert lukasiewicz_path(tree) == exc


class TestConditionedLaw:
    def test_n1_support(self):
        for rep in range(20):
            tree = sample_conditioned_tree(1, RngState(5, rep))
            assert tree == validate_tree([1, 0])

    def test_edge_counts(self):
        for n in (2, 5, 33):
            assert sample_conditioned_tree(n, RngState(6, n)).edge_count == n

    def test_chi_square_against_exact_law_n3(self):
        from bimaplab.enumeration import exact_tree_law

        law = exact_tree_law(3)
        trees = list(law)
        index = {t: i for i, t in enumerate(trees)}
        counts = np.zeros(len(trees))
        reps = 20_000
        for rep in range(reps):
            counts[index[sample_conditioned_tree(3, RngState(21, rep))]] += 1
        expected = np.array([float(law[t]) for t in trees]) * reps
        _, p = stats.chisquare(counts, expected)
        assert p > 1e-3


class TestLabels:
    def test_k1_uniform_over_three(self):
        tree = validate_tree([1, 1, 0])
        counts = Counter()
        reps = 6000
        for rep in range(reps):
            mob = sample_labels(tree, RngState(8, rep))
            counts[int(mob.labels[1])] += 1
        assert set(counts) == {-1, 0, 1}
        for value in counts.values():
            assert value / reps == pytest.approx(1 / 3, abs=0.02)

    def test_k0_trivial(self):
        tree = validate_tree([1, 0])
        mob = sample_labels(tree, RngState(9))
        assert mob.labels.tolist() == [0]

    def test_sampled_labelings_admissible(self):
        for seed in range(5):
            mob = sample_mobile(300, RngState(10, seed))
            validate_mobile(mob.tree, mob.labels)


class TestUnconditioned:
    def test_single_root_probability(self):
        """P(no edges) = white law at zero = 2/3."""
        hits = 0
        reps = 5000
        for rep in range(reps):
            if sample_unconditioned_tree(RngState(11, rep)).edge_count == 0:
                hits += 1
        assert hits / reps == pytest.approx(2 / 3, abs=0.02)

    def test_one_edge_tree_probability(self):
        """P(tree = root plus one black leaf) = mu0(1) mu1(0) = 1/12."""
        target = validate_tree([1, 0])
        hits = 0
        reps = 12_000
        for rep in range(reps):
            if sample_unconditioned_tree(RngState(12, rep)) == target:
                hits += 1
        assert hits / reps == pytest.approx(1 / 12, abs=0.01)

    def test_forest_returns_mobiles(self):
        forest = sample_unconditioned_forest(50, RngState(13))
        assert len(forest) == 50
        for mob in forest:
            validate_mobile(mob.tree, mob.labels)

    def test_progeny_sizes_match_direct_growth(self):
        """Walk-censored progenies agree in law with direct tree growth."""
        sizes, censored = sample_progeny_sizes(8000, RngState(14), max_edges=64)
        direct = np.array([
            sample_unconditioned_tree(RngState(15, rep)).edge_count
            for rep in range(8000)
        ])
        for k in (0, 1, 2, 5):
            a = np.mean(sizes[~censored] == k)
            b = np.mean(direct == k)
            assert a == pytest.approx(b, abs=0.02)
        assert np.mean(censored) == pytest.approx(np.mean(direct > 64), abs=0.02)

    def test_progeny_exact_small_values(self):
        sizes, censored = sample_progeny_sizes(30_000, RngState(16), max_edges=40)
        assert np.mean(sizes[~censored] == 0) == pytest.approx(2 / 3, abs=0.01)
        assert np.mean(sizes[~censored] == 1) == pytest.approx(1 / 12, abs=0.01)
