"""Offspring and jump law tables: exact values and moments."""

from fractions import Fraction

import numpy as np
import pytest

from bimaplab.laws import (
    GeometricWalkLaw,
    mu0_exact,
    mu1_exact,
    nu_exact,
    standard_laws,
)
from bimaplab.rng import RngState


def test_exact_pmf_values():
    assert mu0_exact(0) == Fraction(2, 3)
    assert mu0_exact(1) == Fraction(2, 9)
    assert mu1_exact(0) == Fraction(3, 8)
    assert mu1_exact(1) == Fraction(3, 8) * 3 * Fraction(3, 16)
    assert nu_exact(-1) == Fraction(2, 3)
    assert nu_exact(0) == Fraction(1, 8)
    assert nu_exact(1) == Fraction(9, 128)
    assert nu_exact(-2) == 0


def test_truncation_tail_below_threshold():
    laws = standard_laws()
    assert abs(laws.renormalization) < 1e-14
    assert laws.mu0.sum() > 1 - 1e-14
    assert laws.mu1.sum() > 1 - 1e-14


def test_moments():
    m = standard_laws().moments()
    assert m["mu0_mean"] == pytest.approx(0.5, abs=1e-12)
    assert m["mu1_mean"] == pytest.approx(2.0, abs=1e-12)
    assert m["mu0_var"] == pytest.approx(0.75, abs=1e-10)
    assert m["mu1_var"] == pytest.approx(7.5, abs=1e-10)
    assert m["nu_mean"] == pytest.approx(0.0, abs=1e-10)
    assert m["nu_var"] == pytest.approx(4.5, abs=1e-10)


def test_jump_sampler_matches_pmf():
    laws = standard_laws()
    gen = RngState(1).generator()
    draws = laws.sample_jumps(gen, 200_000)
    assert draws.min() == -1
    freq_minus1 = np.mean(draws == -1)
    assert freq_minus1 == pytest.approx(2.0 / 3.0, abs=5e-3)
    freq_zero = np.mean(draws == 0)
    assert freq_zero == pytest.approx(1.0 / 8.0, abs=5e-3)


def test_jump_sampler_deterministic():
    laws = standard_laws()
    a = laws.sample_jumps(RngState(9, 3).generator(), 1000)
    b = laws.sample_jumps(RngState(9, 3).generator(), 1000)
    assert np.array_equal(a, b)
    c = laws.sample_jumps(RngState(9, 4).generator(), 1000)
    assert not np.array_equal(a, c)


def test_geometric_walk_law():
    law = GeometricWalkLaw.build()
    assert law.probs[0] == pytest.approx(0.5, abs=1e-12)   # jump -1
    j = law.values.astype(float)
    assert float(law.probs @ j) == pytest.approx(0.0, abs=1e-10)
    assert float(law.probs @ j**2) == pytest.approx(2.0, abs=1e-9)
