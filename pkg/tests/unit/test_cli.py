"""interface.cli 单元测试：参数解析、子命令输出与退出码。"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

import pytest

from infrastructure.io.file_io import dump_json
from interface.cli import _parse_args, main


@pytest.fixture
def log_dir(restore_root_handlers):
    with tempfile.TemporaryDirectory() as tmp:
        yield tmp


def _run(capsys, log_dir: str, *argv: str) -> tuple[int, str, str]:
    code = main([*argv, "--log-dir", log_dir])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


ANT_1233 = ["--m1", "1", "--n1", "2", "--m2", "3", "--n2", "3"]


class TestParseArgs:
    """参数解析。"""

    def test_region_defaults(self) -> None:
        _, ns = _parse_args(["region", *ANT_1233])
        assert ns.command == "region"
        assert (ns.m1, ns.n1, ns.m2, ns.n2) == (1, 2, 3, 3)
        assert ns.channel == "fic"
        assert ns.csit == "no"
        assert ns.format == "json"
        assert ns.out is None

    def test_powers_list(self) -> None:
        _, ns = _parse_args(["simulate", *ANT_1233, "--powers-db", "60,80"])
        assert ns.powers_db == [60.0, 80.0]

    def test_special_random_exclusive(self) -> None:
        with pytest.raises(SystemExit) as exc:
            _parse_args(["scheme", *ANT_1233, "--special", "--random"])
        assert exc.value.code == 2

    @pytest.mark.parametrize(
        "argv",
        [
            ["region", "--m1", "0", "--n1", "2", "--m2", "3", "--n2", "3"],
            ["region", "--m1", "1", "--n1", "2", "--m2", "3"],
            ["region", *ANT_1233, "--from-json", "region.json"],
            ["region", *ANT_1233, "--channel", "xyz"],
            ["region", *ANT_1233, "--rank-tol", "1.5"],
            ["simulate", *ANT_1233, "--seed", "-1"],
            ["simulate", *ANT_1233, "--powers-db", "nan,60"],
            ["simulate", *ANT_1233, "--powers-db", "60,inf"],
            ["simulate", *ANT_1233, "--powers-db=-inf,60"],
            ["sweep", "--max-antennas", "7"],
            ["sweep", "--max-antennas", "0"],
            ["sweep", "--property", "nope"],
        ],
    )
    def test_usage_errors(self, argv: list[str]) -> None:
        with pytest.raises(SystemExit) as exc:
            _parse_args(argv)
        assert exc.value.code == 2

    def test_no_subcommand(self) -> None:
        with pytest.raises(SystemExit) as exc:
            _parse_args([])
        assert exc.value.code == 2


class TestRegionCommand:
    def test_fic_nocsit_json(self, capsys, log_dir) -> None:
        code, out, _ = _run(capsys, log_dir, "region", *ANT_1233, "--channel", "fic", "--csit", "no")
        assert code == 0
        data = json.loads(out)
        assert data["config"] == "(1,2,3,3)"
        assert data["vertices"] == [["0", "0"], ["1", "0"], ["1", "3/2"], ["0", "3"]]
        assert dump_json(json.loads(out)) + "\n" == out

    def test_zic_csit_json(self, capsys, log_dir) -> None:
        code, out, _ = _run(
            capsys, log_dir, "region", "--m1", "1", "--n1", "1", "--m2", "1", "--n2", "1",
            "--channel", "zic", "--csit", "yes",
        )
        assert code == 0
        assert json.loads(out)["vertices"] == [["0", "0"], ["1", "0"], ["0", "1"]]

    def test_csv(self, capsys, log_dir) -> None:
        code, out, _ = _run(capsys, log_dir, "region", *ANT_1233, "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "d1,d2"
        assert lines[3] == "1,3/2"

    def test_out_file(self, capsys, log_dir) -> None:
        target = Path(log_dir) / "region.json"
        code, out, err = _run(capsys, log_dir, "region", *ANT_1233, "--out", str(target))
        assert code == 0
        assert out == ""
        assert "已写入" in err
        assert json.loads(target.read_text(encoding="utf-8"))["csit"] is False

    def test_from_json_round_trip(self, capsys, log_dir) -> None:
        target = Path(log_dir) / "region.json"
        _run(capsys, log_dir, "region", *ANT_1233, "--out", str(target))
        code, out, _ = _run(capsys, log_dir, "region", "--from-json", str(target), "--format", "csv")
        assert code == 0
        assert out == "d1,d2\n0,0\n1,0\n1,3/2\n0,3\n"
        code, out, _ = _run(capsys, log_dir, "region", "--from-json", str(target))
        assert json.loads(out) == json.loads(target.read_text(encoding="utf-8"))

    def test_from_json_tampered(self, capsys, log_dir) -> None:
        target = Path(log_dir) / "region.json"
        _run(capsys, log_dir, "region", *ANT_1233, "--out", str(target))
        data = json.loads(target.read_text(encoding="utf-8"))
        data["vertices"][2] = ["1", "2"]
        target.write_text(json.dumps(data), encoding="utf-8")
        code, out, err = _run(capsys, log_dir, "region", "--from-json", str(target))
        assert code == 2
        assert out == ""
        assert "不一致" in err

    def test_from_json_missing_file(self, capsys, log_dir) -> None:
        with pytest.raises(SystemExit) as exc:
            main(["region", "--from-json", str(Path(log_dir) / "none.json"), "--log-dir", log_dir])
        assert exc.value.code == 2

    def test_antenna_limit(self, capsys, log_dir) -> None:
        with pytest.raises(SystemExit) as exc:
            main(["region", "--m1", "65", "--n1", "2", "--m2", "3", "--n2", "3", "--log-dir", log_dir])
        assert exc.value.code == 2

    def test_log_file_written(self, capsys, log_dir) -> None:
        _run(capsys, log_dir, "region", *ANT_1233)
        assert any(p.name.startswith("dof_lab_") for p in Path(log_dir).iterdir())


class TestSchemeCommand:
    def test_special_passes(self, capsys, log_dir) -> None:
        code, out, _ = _run(capsys, log_dir, "scheme", *ANT_1233, "--special")
        assert code == 0
        data = json.loads(out)
        assert data["pass"] is True
        assert data["rank_u"] == 2
        assert data["rank_p_tilde"] == 3
        assert data["realization"] == "special"

    def test_random_passes(self, capsys, log_dir) -> None:
        code, out, _ = _run(capsys, log_dir, "scheme", "--m1", "2", "--n1", "3", "--m2", "4", "--n2", "4", "--random", "--seed", "7")
        assert code == 0
        data = json.loads(out)
        assert data["realization"] == "random"
        assert data["seed"] == 7

    def test_precondition_exit_2(self, capsys, log_dir) -> None:
        code, out, err = _run(capsys, log_dir, "scheme", "--m1", "2", "--n1", "2", "--m2", "3", "--n2", "3")
        assert code == 2
        assert out == ""
        assert "M1 < N1" in err

    def test_export_matrices(self, capsys, log_dir) -> None:
        target = Path(log_dir) / "mats"
        code, _, _ = _run(capsys, log_dir, "scheme", *ANT_1233, "--export-matrices", str(target))
        assert code == 0
        assert sorted(p.name for p in target.iterdir()) == ["p.csv", "q.csv", "u.csv", "v.csv"]


class TestSimulateCommand:
    def test_single_power_is_usage_error(self, capsys, log_dir) -> None:
        with pytest.raises(SystemExit) as exc:
            main(["simulate", *ANT_1233, "--powers-db", "60", "--log-dir", log_dir])
        assert exc.value.code == 2

    def test_non_finite_power_is_usage_error(self, capsys, log_dir) -> None:
        with pytest.raises(SystemExit) as exc:
            main(["simulate", *ANT_1233, "--powers-db", "nan,60", "--trials", "2", "--log-dir", log_dir])
        assert exc.value.code == 2

    def test_csv_and_summary(self, capsys, log_dir) -> None:
        code, out, _ = _run(
            capsys, log_dir, "simulate", *ANT_1233, "--powers-db", "60,80", "--trials", "10", "--seed", "1",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "power_db,r1_bits,r2_bits,trial"
        assert len(lines) == 1 + 20 + 1
        summary = json.loads(lines[-1])
        assert summary["d1_hat"] == pytest.approx(1.0, abs=0.1)
        assert summary["d2_hat"] == pytest.approx(1.5, abs=0.1)
        assert summary["seed"] == 1
        assert summary["within_region"] is True
        assert summary["within_fic_region"] is True

    def test_byte_identical_reruns(self, capsys, log_dir) -> None:
        argv = ["simulate", *ANT_1233, "--powers-db", "60,80", "--trials", "5", "--seed", "2"]
        _, first, _ = _run(capsys, log_dir, *argv)
        _, second, _ = _run(capsys, log_dir, *argv)
        assert first == second

    def test_from_xlsx_reestimates(self, capsys, log_dir) -> None:
        target = Path(log_dir) / "rates.xlsx"
        argv = ["simulate", *ANT_1233, "--powers-db", "60,80", "--trials", "10", "--seed", "1"]
        code, out, _ = _run(capsys, log_dir, *argv, "--format", "xlsx", "--out", str(target))
        assert code == 0
        direct = json.loads(out.strip().splitlines()[-1])
        code, out, _ = _run(capsys, log_dir, "simulate", *ANT_1233, "--from-xlsx", str(target))
        assert code == 0
        summary = json.loads(out)
        assert summary["d1_hat"] == pytest.approx(direct["d1_hat"])
        assert summary["d2_hat"] == pytest.approx(direct["d2_hat"])
        assert summary["trials"] == 10
        assert summary["powers_db"] == [60.0, 80.0]
        assert summary["within_fic_region"] is True

    def test_from_xlsx_missing_file(self, capsys, log_dir) -> None:
        with pytest.raises(SystemExit) as exc:
            main(["simulate", *ANT_1233, "--from-xlsx", str(Path(log_dir) / "none.xlsx"), "--log-dir", log_dir])
        assert exc.value.code == 2

    def test_xlsx_requires_out(self, capsys, log_dir) -> None:
        with pytest.raises(SystemExit) as exc:
            main(["simulate", *ANT_1233, "--format", "xlsx", "--log-dir", log_dir])
        assert exc.value.code == 2


class TestSweepCommand:
    def test_table(self, capsys, log_dir) -> None:
        code, out, _ = _run(capsys, log_dir, "sweep", "--max-antennas", "4")
        assert code == 0
        assert "lemma3" in out and "zf" in out

    def test_json_selected(self, capsys, log_dir) -> None:
        code, out, _ = _run(capsys, log_dir, "sweep", "--max-antennas", "2", "--property", "csit", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert [r["name"] for r in data["results"]] == ["csit"]
        assert data["zf_seed"] is None

    def test_failure_exit_1(self, capsys, log_dir, monkeypatch) -> None:
        from models.schemas import PropertyResult, SweepSummary

        failing = SweepSummary(max_antennas=2, results=[PropertyResult(name="csit", checked=1, passed=0, counterexamples=["(1,1,1,1)"])])
        monkeypatch.setattr("interface.cli.run_sweep", lambda *a, **k: failing)
        code, _, err = _run(capsys, log_dir, "sweep", "--max-antennas", "2")
        assert code == 1
        assert "csit" in err
