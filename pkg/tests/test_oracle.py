import math

import numpy as np
import pytest

from chordlab import (Chord, RandomStream, adaptive_oracle, batch_check,
                      count_regions, count_regions_signvector, figure_config,
                      small_case_table)
from chordlab.distributions import sample_chord_arrays, sine_distance

HALF_PI = 0.5 * math.pi


def random_config(seed, stream_index, n):
    stream = RandomStream(seed, stream_index)
    a, th = sample_chord_arrays(stream, sine_distance(), n)
    return [Chord(float(x), float(t)) for x, t in zip(a, th)], stream


class TestCountRegionsSignvector:
    def test_no_chords(self):
        rep = count_regions_signvector([], 1000, RandomStream(1))
        assert rep.oracle_count == 1
        assert rep.formula_count == 1
        assert rep.agreed

    def test_perpendicular_diameters(self):
        chords = [Chord(0.0, HALF_PI), Chord(HALF_PI, HALF_PI)]
        rep = count_regions_signvector(chords, 10_000, RandomStream(2))
        assert rep.oracle_count == 4
        assert rep.formula_count == 4

    def test_figure_configuration(self):
        rep = count_regions_signvector(list(figure_config()), 50_000,
                                       RandomStream(3))
        assert rep.formula_count == 8
        assert rep.oracle_count == 8

    def test_minimum_points_enforced(self):
        with pytest.raises(ValueError, match="at least"):
            count_regions_signvector([], 10, RandomStream(0))

    def test_capacity_limit(self):
        chords = [Chord(i * 0.1, 0.3) for i in range(33)]
        with pytest.raises(ValueError, match="at most 32"):
            count_regions_signvector(chords, 10_000, RandomStream(0))

    def test_never_exceeds_formula(self):
        for k in range(30):
            chords, stream = random_config(11, k, 1 + k % 8)
            rep = count_regions_signvector(chords, 2000, stream)
            assert rep.oracle_count <= rep.formula_count

    def test_nondecreasing_in_budget(self):
        chords, _ = random_config(5, 0, 7)
        counts = []
        for budget in (1000, 4000, 16_000, 64_000):
            rep = count_regions_signvector(chords, budget, RandomStream(8, 1))
            counts.append(rep.oracle_count)
        assert all(b >= a for a, b in zip(counts, counts[1:]))


class TestAdaptiveOracle:
    def test_two_crossing_chords_stabilize_quickly(self):
        chords = [Chord(0.0, HALF_PI), Chord(HALF_PI, HALF_PI)]
        rep = adaptive_oracle(chords, stream=RandomStream(4))
        assert rep.agreed
        assert rep.oracle_count == 4
        assert rep.sample_points <= 3 * 10_000

    def test_sliver_configuration_converges(self):
        # two nearly-parallel chords a hair apart, crossed by a diameter:
        # the thin strip pieces are far below uniform-sampling resolution
        delta = 2e-4
        chords = [Chord(0.0, math.pi / 4),
                  Chord(delta, math.pi / 4),
                  Chord(7 * math.pi / 4, HALF_PI)]
        assert count_regions(chords) == 7
        rep = adaptive_oracle(chords, stream=RandomStream(6))
        assert rep.agreed
        assert rep.sample_points > 10_000

    def test_budget_cap_respected(self):
        chords, stream = random_config(7, 0, 6)
        rep = adaptive_oracle(chords, max_points=40_000, stream=stream)
        assert rep.sample_points <= 40_000 + 10_000  # probes ride on top

    def test_capacity_limit(self):
        chords = [Chord(i * 0.05, 0.2) for i in range(40)]
        with pytest.raises(ValueError, match="at most 32"):
            adaptive_oracle(chords)


class TestSmallCaseTable:
    def test_formula_matches_expected(self):
        for case in small_case_table():
            assert case.formula_count == case.expected, case.description

    def test_oracle_matches_expected(self):
        for i, case in enumerate(small_case_table()):
            rep = adaptive_oracle(list(case.chords),
                                  stream=RandomStream(20, i))
            assert rep.oracle_count == case.expected, case.description
            assert rep.agreed

    def test_table_covers_region_ladder(self):
        expected = [c.expected for c in small_case_table()]
        assert expected == [1, 2, 3, 4, 7, 8]


class TestBatchCheck:
    def test_small_batch_full_agreement(self):
        report = batch_check(100, 8, seed=3)
        assert report["agreement_rate"] >= 0.995
        assert report["overcount_violations"] == 0
        assert report["configurations"] == 100

    def test_zero_chord_configs_trivially_agree(self):
        report = batch_check(3, 0, seed=1)
        assert report["agreement_rate"] == 1.0

    def test_capacity_validation(self):
        with pytest.raises(ValueError, match="at most 32"):
            batch_check(1, 40)

    def test_deterministic(self):
        a = batch_check(20, 6, seed=9)
        b = batch_check(20, 6, seed=9)
        assert a == b
