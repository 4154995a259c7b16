import json

import numpy as np
import pytest

from switchsim import channels, cli
from switchsim.channels import ChoiOperator, choi_to_kraus
from switchsim.linalg import max_entangled_ket


class TestCapacityCommand:
    def test_csv_header_and_reference_row(self, tmp_path):
        out = tmp_path / "cap.csv"
        rc = cli.main(["capacity", "--d", "2", "--n-min", "2", "--n-max", "5", "--out", str(out)])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == cli.CSV_HEADER
        first = lines[1].split(",")
        assert first[0] == "2" and first[1] == "2"
        assert float(first[5]) == pytest.approx(0.0487949406953985, abs=1e-5)

    def test_rows_monotone_in_n(self, tmp_path):
        out = tmp_path / "cap.csv"
        cli.main(["capacity", "--d", "2", "--n-min", "2", "--n-max", "30", "--out", str(out)])
        caps = [float(line.split(",")[5]) for line in out.read_text().splitlines()[1:]]
        assert all(b > a for a, b in zip(caps, caps[1:]))

    def test_json_equivalence(self, tmp_path):
        csv_path = tmp_path / "cap.csv"
        json_path = tmp_path / "cap.json"
        cli.main(["capacity", "--d", "3", "--n-min", "2", "--n-max", "4", "--out", str(csv_path)])
        cli.main(
            ["capacity", "--d", "3", "--n-min", "2", "--n-max", "4", "--out", str(json_path),
             "--format", "json"]
        )
        records = json.loads(json_path.read_text())
        lines = csv_path.read_text().splitlines()[1:]
        assert len(records) == len(lines)
        for rec, line in zip(records, lines):
            cols = line.split(",")
            assert rec["N"] == int(cols[0]) and rec["d"] == int(cols[1])
            assert rec["capacity_bits"] == float(cols[5])

    def test_csv_fields_round_trip_floats(self, tmp_path):
        out = tmp_path / "cap.csv"
        cli.main(["capacity", "--d", "2", "--n-min", "2", "--n-max", "2", "--out", str(out)])
        from switchsim.info import classical_capacity

        row = out.read_text().splitlines()[1].split(",")
        rep = classical_capacity(2, 2)
        assert float(row[3]) == rep.s_min_e0
        assert float(row[5]) == rep.capacity

    def test_byte_identical_runs(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["capacity", "--d", "2", "--d", "3", "--n-min", "2", "--n-max", "10"]
        cli.main(args + ["--out", str(a)])
        cli.main(args + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_sorted_by_d_then_n(self, tmp_path):
        out = tmp_path / "cap.csv"
        cli.main(
            ["capacity", "--d", "3", "--d", "2", "--n-min", "2", "--n-max", "3", "--out", str(out)]
        )
        keys = [tuple(map(int, line.split(",")[:2][::-1])) for line in out.read_text().splitlines()[1:]]
        assert keys == sorted(keys)

    def test_bad_config_rejected(self):
        with pytest.raises(ValueError):
            cli.SweepConfig((2,), 1, 5, "x.csv")
        with pytest.raises(ValueError):
            cli.SweepConfig((), 2, 5, "x.csv")


class TestChoiCommand:
    def test_closed_vs_brute_files_agree(self, tmp_path):
        a, b = tmp_path / "closed.json", tmp_path / "brute.json"
        assert cli.main(["choi", "--n", "3", "--d", "2", "--form", "closed", "--out", str(a)]) == 0
        assert cli.main(["choi", "--n", "3", "--d", "2", "--form", "brute", "--out", str(b)]) == 0
        ca = cli.choi_from_json_dict(json.loads(a.read_text()))
        cb = cli.choi_from_json_dict(json.loads(b.read_text()))
        assert np.max(np.abs(ca.matrix - cb.matrix)) <= 1e-9

    def test_dump_trace_is_input_dimension(self, tmp_path):
        out = tmp_path / "c.json"
        cli.main(["choi", "--n", "2", "--d", "3", "--out", str(out)])
        obj = json.loads(out.read_text())
        assert obj["dims"] == [2, 3, 3]
        assert obj["convention"] == "operator"
        c = cli.choi_from_json_dict(obj)
        assert abs(np.trace(c.matrix) - 3.0) <= 1e-12

    def test_round_trip_exact(self, tmp_path):
        out = tmp_path / "c.json"
        cli.main(["choi", "--n", "2", "--d", "2", "--form", "brute", "--out", str(out)])
        from switchsim.switch import depolarizing_switch, effective_channel_bruteforce

        want = effective_channel_bruteforce(depolarizing_switch(2, 2))
        got = cli.choi_from_json_dict(json.loads(out.read_text()))
        assert np.array_equal(got.matrix, want.matrix)

    def test_budget_exceeded_exits_2(self, tmp_path):
        rc = cli.main(
            ["choi", "--n", "5", "--d", "2", "--form", "brute", "--budget", "10",
             "--out", str(tmp_path / "c.json")]
        )
        assert rc == 2

    def test_unwritable_path_exits_2(self, tmp_path):
        rc = cli.main(["choi", "--n", "2", "--d", "2", "--out", str(tmp_path / "no" / "c.json")])
        assert rc == 2


class TestThresholdsCommand:
    def test_table_values(self, capsys):
        assert cli.main(["thresholds", "--d-max", "4"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        rows = [line.split() for line in lines[1:]]
        assert [r[0] for r in rows] == ["2", "3", "4"]
        assert [r[1] for r in rows] == ["4", "5", "6"]
        assert float(rows[0][2]) == pytest.approx(0.154700538, abs=1e-9)


class TestProtocolCommand:
    def test_json_report(self, capsys):
        assert cli.main(["protocol", "--n", "100", "--d", "2", "--shots", "1000", "--seed", "5"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["N"] == 100 and obj["d"] == 2 and obj["n_pairs"] == 1000
        assert obj["k_e0"] + round(obj["empirical_p"] * 1000) == 1000
        assert obj["e0_distillable"] is True

    def test_deterministic_per_seed(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        args = ["protocol", "--n", "50", "--d", "2", "--shots", "2000", "--seed", "9"]
        cli.main(args + ["--out", str(a)])
        cli.main(args + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestVerifyCommand:
    def test_passes_on_correct_build(self, capsys):
        assert cli.main(["verify", "--seed", "1"]) == 0
        out = capsys.readouterr().out
        for name, _, _ in cli.VERIFY_CHECKS:
            assert name in out
        assert "FAIL" not in out.replace("PASS", "")

    def test_budget_too_small_exits_2(self, capsys):
        assert cli.main(["verify", "--budget", "10"]) == 2
        assert "exceeds the budget" in capsys.readouterr().err

    def test_injected_sign_error_is_named(self, monkeypatch, capsys):
        # flip the sign of the state term: a valid channel, but the wrong one
        def flipped(d):
            phi = max_entangled_ket(d)
            m = (d * np.eye(d * d) + d * np.outer(phi, phi.conj())) / (d * d + 1.0)
            return choi_to_kraus(ChoiOperator(m, d, d, "operator"))

        monkeypatch.setattr(channels, "e1_channel", flipped)
        rc = cli.main(["verify"])
        captured = capsys.readouterr()
        assert rc == 1
        assert "FAILED: e1-choi-match" in captured.err


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
