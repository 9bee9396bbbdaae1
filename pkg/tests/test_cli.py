"""Command-line surface: exit codes, output schema, reproducibility."""

import csv
import json
import math

import pytest

from impactseries.cli import COLUMNS, main


def read_csv(path):
    with open(path, newline="") as handle:
        return list(csv.DictReader(handle))


def read_json(path):
    with open(path) as handle:
        return json.load(handle)["rows"]


class TestPredict:
    def test_qm_at_zero_phases(self, capsys):
        code = main(["predict", "--model", "qm", "--alpha", "0", "--beta", "0", "--gamma", "0"])
        out = capsys.readouterr().out
        assert code == 0
        assert "side1: p(+)=0.166667 p(-)=0.833333" in out
        assert "side2: p(+)=0.833333 p(-)=0.166667" in out
        assert "p(-+)=0.75" in out

    def test_rnl_spacelike(self, capsys):
        code = main(["predict", "--model", "rnl", "--ordering", "spacelike",
                     "--beta", "0", "--gamma", "0"])
        out = capsys.readouterr().out
        assert code == 0
        assert "side1: p(+)=0.5 p(-)=0.5" in out
        assert "side2: p(+)=0.833333 p(-)=0.166667" in out

    def test_causal_spacelike_is_a_contract_error(self, capsys):
        code = main(["predict", "--model", "causal", "--ordering", "spacelike"])
        captured = capsys.readouterr()
        assert code == 2
        assert "time orderings 1 and 2" in captured.err

    def test_causal_ordering_two_leaves_side2_open(self, capsys):
        code = main(["predict", "--model", "causal", "--ordering", "2"])
        out = capsys.readouterr().out
        assert code == 0
        assert "side1: p(+)=0.5 p(-)=0.5" in out
        assert "side2: undefined" in out

    def test_degrees_flag(self, capsys):
        code = main(["predict", "--model", "qm", "--alpha", "180", "--degrees"])
        out = capsys.readouterr().out
        assert code == 0
        assert "side1: p(+)=0.833333" in out

    def test_short_class_prediction(self, capsys):
        code = main(["predict", "--model", "qm", "--subensemble", "l"])
        out = capsys.readouterr().out
        assert code == 0
        assert "side1: p(+)=0.833333" in out

    def test_row_emission(self, tmp_path, capsys):
        out_file = tmp_path / "predict.json"
        code = main(["predict", "--model", "qm", "--format", "json", "--out", str(out_file)])
        capsys.readouterr()
        assert code == 0
        rows = read_json(out_file)
        assert len(rows) == 1
        assert rows[0]["p1_plus_analytic"] == pytest.approx(0.166667)
        assert rows[0]["events"] is None
        assert list(rows[0]) == list(COLUMNS)


class TestSimulate:
    ARGS = ["simulate", "--model", "qm", "--events", "200000", "--seed", "42",
            "--alpha", "0", "--beta", "0", "--gamma", "0"]

    def test_headline_statistic(self, capsys):
        code = main(self.ARGS)
        out = capsys.readouterr().out
        assert code == 0
        line = next(l for l in out.splitlines() if l.startswith("E="))
        value = float(line.split()[0].split("=")[1])
        assert abs(abs(value) - 2 / 3) < 0.01

    def test_rnl_is_consistent_with_zero(self, capsys):
        code = main(["simulate", "--model", "rnl", "--events", "200000", "--seed", "42"])
        out = capsys.readouterr().out
        assert code == 0
        line = next(l for l in out.splitlines() if l.startswith("E="))
        value = float(line.split()[0].split("=")[1])
        sigma = float(line.split()[1].split("=")[1])
        assert abs(value) <= 4 * sigma

    def test_byte_identical_repeat_runs(self, tmp_path, capsys):
        first = tmp_path / "first.csv"
        second = tmp_path / "second.csv"
        assert main(self.ARGS + ["--out", str(first)]) == 0
        assert main(self.ARGS + ["--out", str(second)]) == 0
        capsys.readouterr()
        assert first.read_bytes() == second.read_bytes()

    def test_csv_and_json_carry_identical_numbers(self, tmp_path, capsys):
        csv_path = tmp_path / "run.csv"
        json_path = tmp_path / "run.json"
        assert main(self.ARGS + ["--out", str(csv_path)]) == 0
        assert main(self.ARGS + ["--format", "json", "--out", str(json_path)]) == 0
        capsys.readouterr()
        csv_row = read_csv(csv_path)[0]
        json_row = read_json(json_path)[0]
        assert set(csv_row) == set(json_row) == set(COLUMNS)
        for column in COLUMNS:
            text, value = csv_row[column], json_row[column]
            if value is None:
                assert text == ""
            elif isinstance(value, str):
                assert text == value
            else:
                assert float(text) == pytest.approx(float(value), rel=1e-12)

    def test_row_carries_full_provenance(self, tmp_path, capsys):
        out_file = tmp_path / "run.csv"
        assert main(self.ARGS + ["--out", str(out_file)]) == 0
        capsys.readouterr()
        row = read_csv(out_file)[0]
        assert row["model"] == "qm"
        assert row["seed"] == "42"
        assert row["events"] == "200000"
        assert row["subensemble"] == "L"
        assert int(row["accepted"]) + int(row["rejected"]) == 200000

    def test_invalid_events_is_an_argument_error(self, capsys):
        code = main(["simulate", "--model", "qm", "--events", "0"])
        captured = capsys.readouterr()
        assert code == 2
        assert "error" in captured.err.lower()

    def test_unknown_model_is_an_argument_error(self, capsys):
        code = main(["simulate", "--model", "pilotwave"])
        capsys.readouterr()
        assert code == 2


class TestCompare:
    def test_fringe_against_flat_line(self, tmp_path, capsys):
        out_file = tmp_path / "scan.csv"
        code = main([
            "compare", "--axis", "alpha", "--grid", f"0:{2 * math.pi}:13",
            "--events", "20000", "--seed", "3", "--out", str(out_file),
        ])
        capsys.readouterr()
        assert code == 0
        rows = read_csv(out_file)
        assert len(rows) == 26
        qm_values = [float(r["p1_plus_analytic"]) for r in rows if r["model"] == "qm"]
        rnl_values = [float(r["p1_plus_analytic"]) for r in rows if r["model"] == "rnl"]
        assert max(qm_values) == pytest.approx(5 / 6, abs=1e-4)
        assert min(qm_values) == pytest.approx(1 / 6, abs=1e-4)
        assert (max(qm_values) - min(qm_values)) / 2 == pytest.approx(1 / 3, abs=1e-4)
        assert rnl_values == [pytest.approx(0.5)] * 13

    def test_rows_replay_from_embedded_provenance(self, tmp_path, capsys):
        from impactseries.amplitudes import PhaseSettings
        from impactseries.montecarlo import RunConfig, run
        from impactseries.pathspace import TimeOrdering
        from impactseries.theories import TheoryKind, TheoryModel

        out_file = tmp_path / "scan.csv"
        assert main([
            "compare", "--axis", "beta", "--grid", "0:3:3",
            "--events", "10000", "--seed", "8", "--out", str(out_file),
        ]) == 0
        capsys.readouterr()
        for row in read_csv(out_file):
            config = RunConfig(
                model=TheoryModel(TheoryKind(row["model"]), TimeOrdering(row["ordering"])),
                phases=PhaseSettings(
                    float(row["alpha"]), float(row["beta"]), float(row["gamma"])
                ),
                events=int(row["events"]),
                seed=int(row["seed"]),
            )
            replayed = run(config)
            assert replayed.counts() == (
                int(row["r_pp"]), int(row["r_pm"]), int(row["r_mp"]), int(row["r_mm"])
            )

    def test_single_point_grid(self, tmp_path, capsys):
        out_file = tmp_path / "one.csv"
        code = main(["compare", "--grid", "1.2:1.2:1", "--events", "5000",
                     "--out", str(out_file)])
        capsys.readouterr()
        assert code == 0
        assert len(read_csv(out_file)) == 2  # one qm row, one rnl row

    def test_malformed_grid(self, capsys):
        code = main(["compare", "--grid", "0:1"])
        captured = capsys.readouterr()
        assert code == 2
        assert "grid" in captured.err


class TestValidateOracle:
    def test_default_layout_passes(self, capsys):
        code = main(["validate-oracle"])
        out = capsys.readouterr().out
        assert code == 0
        assert "oracle validation: PASS" in out
        assert "FAIL" not in out

    def test_miswired_layout_fails_naming_the_entry(self, tmp_path, capsys):
        layout = tmp_path / "crossed.geom"
        layout.write_text(
            "photon1.source = a\n"
            "photon1.stage1.short = a->a\n"
            "photon1.stage1.long  = b->b phase=alpha\n"
            "photon1.detector.plus  = a\n"
            "photon1.detector.minus = b\n"
            "photon2.source = a\n"
            "photon2.stage1.short = a->a\n"
            "photon2.stage1.long  = b->b phase=beta\n"
            "photon2.stage2.short = a->b\n"
            "photon2.stage2.long  = b->a phase=gamma\n"
            "photon2.detector.plus  = a\n"
            "photon2.detector.minus = b\n"
        )
        code = main(["validate-oracle", "--geometry", str(layout)])
        out = capsys.readouterr().out
        assert code == 3
        assert "oracle validation: FAIL" in out
        assert "first mismatch" in out

    def test_non_unitary_convention_is_rejected_before_derivation(self, capsys):
        code = main(["validate-oracle", "--splitter-t", "1", "--splitter-r", "1"])
        captured = capsys.readouterr()
        assert code == 2
        assert "unitary" in captured.err

    def test_unreadable_geometry_file(self, capsys):
        code = main(["validate-oracle", "--geometry", "/no/such/file.geom"])
        captured = capsys.readouterr()
        assert code == 2
        assert "geometry" in captured.err
