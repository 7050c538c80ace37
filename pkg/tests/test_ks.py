import math

import numpy as np
import pytest
from scipy import special

from chordlab import (Histogram, RandomStream, histogram, ks_for_batch,
                      ks_one_sample_normal, ks_table, normalize,
                      sine_distance, std_normal_cdf)
from chordlab.ks import histogram_to_csv, ks_table_to_csv


class TestStdNormalCdf:
    def test_zero(self):
        assert std_normal_cdf(0.0) == 0.5

    def test_far_tail(self):
        assert abs(std_normal_cdf(40.0) - 1.0) <= 1e-15

    def test_quantile_value(self):
        # 97.5% point of the standard normal
        assert std_normal_cdf(1.959963985) == pytest.approx(0.975, abs=1e-9)

    def test_vectorized(self):
        x = np.array([-1.0, 0.0, 1.0])
        out = std_normal_cdf(x)
        assert out.shape == (3,)
        assert out[1] == 0.5


class TestNormalize:
    def test_centering(self):
        assert normalize([2576.0], 2576.0, 144.3).tolist() == [0.0]

    def test_unit_step(self):
        assert normalize([10.0 + 3.0], 10.0, 3.0).tolist() == [1.0]

    def test_empty(self):
        assert normalize([], 0.0, 1.0).size == 0

    def test_sigma_validation(self):
        with pytest.raises(ValueError):
            normalize([1.0], 0.0, 0.0)
        with pytest.raises(ValueError):
            normalize([1.0], 0.0, -2.0)


class TestKsOneSampleNormal:
    def test_best_possible_plugin_fit(self):
        m = 100
        x = special.ndtri((np.arange(1, m + 1) - 0.5) / m)
        rep = ks_one_sample_normal(x)
        assert rep.statistic == pytest.approx(1.0 / (2 * m), abs=1e-12)
        assert rep.p_value > 0.999

    def test_degenerate_sample_rejected(self):
        rep = ks_one_sample_normal(np.zeros(100))
        assert rep.statistic == pytest.approx(0.5, abs=1e-12)
        assert rep.p_value < 1e-10

    def test_sample_size_validation(self):
        with pytest.raises(ValueError, match="at least 5"):
            ks_one_sample_normal([0.1, 0.2, 0.3, 0.4])

    def test_p_value_monotone_in_statistic(self):
        # fabricate samples with growing shift: statistic grows, p shrinks
        m = 200
        base = special.ndtri((np.arange(1, m + 1) - 0.5) / m)
        stats, ps = [], []
        for shift in np.linspace(0.0, 1.0, 12):
            rep = ks_one_sample_normal(base + shift)
            stats.append(rep.statistic)
            ps.append(rep.p_value)
        assert all(b >= a for a, b in zip(stats, stats[1:]))
        assert all(b <= a + 1e-15 for a, b in zip(ps, ps[1:]))

    def test_own_quantiles_never_exceed_half_bin(self):
        for m in (5, 17, 100, 999):
            x = special.ndtri((np.arange(1, m + 1) - 0.5) / m)
            rep = ks_one_sample_normal(x)
            assert rep.statistic <= 1.0 / (2 * m) + 1e-12

    def test_calibration_under_null(self):
        # fraction of p < 0.05 over true-normal batches stays near nominal
        stream = RandomStream(99)
        rejections = 0
        batches = 200
        for _ in range(batches):
            rep = ks_one_sample_normal(stream.normals(200))
            rejections += rep.p_value < 0.05
        assert 0.01 <= rejections / batches <= 0.10


class TestHistogram:
    def test_two_bins(self):
        h = histogram([1.0, 2.0, 3.0, 4.0], 2)
        assert np.allclose(h.bin_edges, [1.0, 2.5, 4.0])
        assert h.counts.tolist() == [2, 2]

    def test_top_edge_inclusive(self):
        h = histogram([0.0, 1.0], 2)
        assert h.counts.tolist() == [1, 1]

    def test_constant_samples(self):
        h = histogram([3.0] * 7, 4)
        assert h.counts.sum() == 7
        assert np.all(np.diff(h.bin_edges) > 0.0)
        width = h.bin_edges[-1] - h.bin_edges[0]
        assert width == pytest.approx(1e-9, rel=0.01)

    def test_counts_conserved(self):
        rng = np.random.default_rng(1)
        samples = rng.normal(size=1000)
        h = histogram(samples, 30)
        assert int(h.counts.sum()) == 1000
        assert np.all(np.diff(h.bin_edges) > 0.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            histogram([], 3)
        with pytest.raises(ValueError):
            histogram([1.0], 0)

    def test_csv_emission(self):
        text = histogram_to_csv(histogram([1.0, 2.0, 3.0, 4.0], 2))
        lines = text.splitlines()
        assert lines[0] == "bin_left,bin_right,count"
        assert len(lines) == 3
        assert lines[1].endswith(",2")


class TestKsPipeline:
    def test_headline_experiment(self):
        rep, z = ks_for_batch(100, 1000, sine_distance(), seed=7)
        assert rep.sample_size == 1000
        assert rep.statistic < 0.06
        assert rep.p_value > 0.01
        assert abs(float(np.mean(z))) < 0.2

    def test_degenerate_single_chord_surfaces_sigma_error(self):
        with pytest.raises(ValueError, match="sigma"):
            ks_for_batch(1, 100, sine_distance(), seed=1)

    def test_table_five_rows(self):
        rows = ks_table([10, 20, 40, 80, 160], 100, seed=1)
        assert [r["number_of_chords"] for r in rows] == [10, 20, 40, 80, 160]
        assert [r["index"] for r in rows] == [0, 1, 2, 3, 4]
        for row in rows:
            assert row["repetition"] == 100
            assert 0.0 <= row["statistic"] <= 1.0
            assert 0.0 <= row["p_value"] <= 1.0

    def test_table_degenerate_row_raises_cleanly(self):
        with pytest.raises(ValueError, match="sigma"):
            ks_table([1], 100, seed=1)

    def test_table_csv_column_order(self):
        rows = ks_table([10, 20], 50, seed=2)
        lines = ks_table_to_csv(rows).splitlines()
        assert lines[0] == "index,number_of_chords,repetition,statistic,p_value"
        assert len(lines) == 3
        assert lines[1].startswith("0,10,50,")

    def test_table_deterministic(self):
        a = ks_table_to_csv(ks_table([10, 20], 50, seed=3))
        b = ks_table_to_csv(ks_table([10, 20], 50, seed=3))
        assert a == b

    def test_rows_decorrelated_from_each_other(self):
        # same n in different rows gets a different derived seed
        rows = ks_table([10, 10], 50, seed=3)
        assert rows[0]["statistic"] != rows[1]["statistic"]
