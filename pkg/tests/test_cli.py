import json
import math

import numpy as np
import pytest

from chordlab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSimulate:
    def test_writes_rows_and_summary(self, tmp_path, capsys):
        out = tmp_path / "sim.csv"
        code, stdout, _ = run_cli(capsys, "simulate", "--n", "20", "--reps",
                                  "50", "--seed", "42", "--out", str(out))
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "rep_index,r_n,f_n"
        assert len(lines) == 51
        assert "sample mean F" in stdout
        assert "analytic mean F" in stdout

    def test_single_chord_rows_all_two(self, tmp_path, capsys):
        out = tmp_path / "sim.csv"
        code, _, _ = run_cli(capsys, "simulate", "--n", "1", "--reps", "3",
                             "--out", str(out))
        assert code == 0
        rows = out.read_text().splitlines()[1:]
        assert all(row.endswith(",2") for row in rows)

    def test_json_format_carries_metadata(self, tmp_path, capsys):
        out = tmp_path / "sim.json"
        code, _, _ = run_cli(capsys, "simulate", "--n", "5", "--reps", "4",
                             "--format", "json", "--out", str(out))
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["config"]["seed"] == 0
        assert len(doc["samples"]) == 4
        assert "versions" in doc["meta"]

    def test_missing_table_file_exits_two(self, tmp_path, capsys):
        code, _, err = run_cli(capsys, "simulate", "--n", "10", "--reps", "2",
                               "--dist", "table:missing.txt",
                               "--out", str(tmp_path / "x.csv"))
        assert code == 2
        assert "missing.txt" in err

    def test_byte_identical_reruns(self, tmp_path, capsys):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        for out in (a, b):
            code, _, _ = run_cli(capsys, "simulate", "--n", "15", "--reps",
                                 "20", "--seed", "5", "--out", str(out))
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_seed_random_prints_choice(self, tmp_path, capsys):
        code, stdout, _ = run_cli(capsys, "simulate", "--n", "5", "--reps",
                                  "2", "--seed", "random",
                                  "--out", str(tmp_path / "r.csv"))
        assert code == 0
        assert "seed:" in stdout


class TestMoments:
    def test_sine_with_n(self, capsys):
        code, stdout, _ = run_cli(capsys, "moments", "--dist", "sine",
                                  "--n", "100")
        assert code == 0
        doc = json.loads(stdout)
        assert doc["e_a12"] == 0.5
        assert doc["e_a12a13"] == pytest.approx(0.27019, abs=1e-5)
        assert doc["mean_f"] == 2576.0
        assert doc["sigma"] == pytest.approx(144.32, abs=0.05)

    def test_uniform_cross_probability(self, capsys):
        code, stdout, _ = run_cli(capsys, "moments", "--dist", "uniform")
        assert code == 0
        doc = json.loads(stdout)
        assert doc["e_a12"] == pytest.approx(1.0 / 3.0, abs=1e-5)

    def test_without_n_omits_region_fields(self, capsys):
        code, stdout, _ = run_cli(capsys, "moments", "--dist", "sine")
        assert code == 0
        doc = json.loads(stdout)
        assert "mean_f" not in doc
        assert "sigma" not in doc


class TestBounds:
    def test_single_n(self, capsys):
        code, stdout, _ = run_cli(capsys, "bounds", "--dist", "sine",
                                  "--n", "100")
        assert code == 0
        header, row = stdout.splitlines()
        cols = dict(zip(header.split(","), row.split(",")))
        assert float(cols["smooth_bound"]) == pytest.approx(95.36, abs=0.5)
        assert float(cols["kolmogorov_bound"]) == pytest.approx(465.8, abs=1)

    def test_stability_column(self, capsys):
        code, stdout, _ = run_cli(capsys, "bounds", "--n",
                                  "1000,10000,100000")
        assert code == 0
        rows = stdout.splitlines()[1:]
        final = [float(r.split(",")[-1]) for r in rows]
        assert abs(final[2] - final[1]) / final[1] < 0.03

    def test_small_n_rejected(self, capsys):
        code, _, err = run_cli(capsys, "bounds", "--n", "5")
        assert code == 2
        assert "n > 5" in err


class TestKstest:
    def test_single_run_report(self, capsys):
        code, stdout, _ = run_cli(capsys, "kstest", "--n", "100", "--reps",
                                  "300", "--seed", "7")
        assert code == 0
        doc = json.loads(stdout)
        assert doc["statistic"] < 0.1
        assert doc["p_value"] > 0.001
        assert doc["sample_size"] == 300

    def test_table_mode(self, capsys):
        code, stdout, _ = run_cli(capsys, "kstest", "--n-list", "10,20",
                                  "--reps", "50")
        assert code == 0
        lines = stdout.splitlines()
        assert lines[0] == "index,number_of_chords,repetition,statistic,p_value"
        assert len(lines) == 3

    def test_degenerate_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "kstest", "--n", "1", "--reps", "100")
        assert code == 2
        assert "sigma" in err

    def test_histogram_emission(self, tmp_path, capsys):
        out = tmp_path / "ks.json"
        code, stdout, _ = run_cli(capsys, "kstest", "--n", "30", "--reps",
                                  "100", "--bins", "10", "--out", str(out))
        assert code == 0
        hist = (tmp_path / "ks.json.hist.csv").read_text().splitlines()
        assert hist[0] == "bin_left,bin_right,count"
        counts = sum(int(line.rsplit(",", 1)[1]) for line in hist[1:])
        assert counts == 100

    def test_requires_n_or_n_list(self, capsys):
        code, _, err = run_cli(capsys, "kstest", "--reps", "50")
        assert code == 2
        assert "--n" in err


class TestOracleCheck:
    def test_report_fields(self, capsys):
        code, stdout, _ = run_cli(capsys, "oracle-check", "--count", "10",
                                  "--n-max", "5", "--seed", "3")
        assert code == 0
        doc = json.loads(stdout)
        assert doc["configurations"] == 10
        assert doc["agreement_rate"] == 1.0
        assert doc["overcount_violations"] == 0

    def test_zero_chords_trivially_agrees(self, capsys):
        code, stdout, _ = run_cli(capsys, "oracle-check", "--count", "1",
                                  "--n-max", "0")
        assert code == 0
        assert json.loads(stdout)["agreement_rate"] == 1.0

    def test_capacity_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "oracle-check", "--n-max", "40")
        assert code == 2
        assert "32" in err


class TestCliPlumbing:
    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0

    def test_unknown_command_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2
