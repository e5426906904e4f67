"""End-to-end CLI contract: byte-stable reports, schemas, exit codes."""

import json
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from kedge.cli import main
from kedge.ratmath import rat
from kedge.verdict import InconsistencyError
from kedge.verify import SuiteResult

GOLDEN = Path(__file__).parent / "golden"

DELTA_ARGS = ["delta", "--n", "0", "--m", "2", "--beta1", "1/2", "--beta2", "1/2"]
CURVE_ARGS = [
    "volume-curve", "--n", "0", "--m", "2",
    "--beta1", "1/2", "--beta2", "1/2", "--curve", "E1",
]
VERIFY_ARGS = ["verify", "--samples", "3", "--seed", "7"]
SCAN_ARGS = [
    "scan", "--n", "1", "--m", "0",
    "--beta1-grid", "1/2:2:1/4", "--beta2-grid", "1/4:1:1/4",
]


def run_cli(capsys, argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    out, err = capsys.readouterr()
    return excinfo.value.code, out, err


def load_schema(name):
    text = (resources.files("kedge.schemas") / name).read_text(encoding="utf-8")
    schema = json.loads(text)
    jsonschema.Draft202012Validator.check_schema(schema)
    return schema


class TestGoldens:
    @pytest.mark.parametrize(
        "argv, golden",
        [
            (DELTA_ARGS, "delta_f0_blow2_half.json"),
            (CURVE_ARGS, "volume_curve_e1.json"),
            (VERIFY_ARGS, "verify_small.json"),
            (SCAN_ARGS, "scan_m0.csv"),
        ],
    )
    def test_byte_identical(self, capsys, argv, golden):
        code, out, err = run_cli(capsys, argv)
        assert code == 0
        assert out == (GOLDEN / golden).read_text(encoding="utf-8")

    def test_scan_determinism(self, capsys):
        first = run_cli(capsys, SCAN_ARGS)
        second = run_cli(capsys, SCAN_ARGS)
        assert first == second


class TestSchemas:
    def test_delta_schema(self, capsys):
        schema = load_schema("delta_report.schema.json")
        for extra in ([], ["--approx"]):
            _, out, _ = run_cli(capsys, DELTA_ARGS + extra)
            jsonschema.validate(json.loads(out), schema)

    def test_volume_curve_schema(self, capsys):
        schema = load_schema("volume_curve_report.schema.json")
        for extra in ([], ["--approx"]):
            _, out, _ = run_cli(capsys, CURVE_ARGS + extra)
            jsonschema.validate(json.loads(out), schema)

    def test_verify_schema(self, capsys):
        schema = load_schema("verify_report.schema.json")
        _, out, _ = run_cli(capsys, VERIFY_ARGS)
        jsonschema.validate(json.loads(out), schema)

    def test_schema_rejects_lossy_rational(self):
        schema = load_schema("delta_report.schema.json")
        report = json.loads((GOLDEN / "delta_f0_blow2_half.json").read_text())
        report["delta"] = 0.9130434782608695
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(report, schema)


class TestApprox:
    def test_delta_approx_fields(self, capsys):
        code, out, _ = run_cli(capsys, DELTA_ARGS + ["--approx"])
        assert code == 0
        report = json.loads(out)
        assert report["delta"] == "21/23"
        assert report["delta_approx"] == pytest.approx(21 / 23)
        assert report["per_divisor"]["C2tilde"]["ratio_approx"] == pytest.approx(21 / 23)

    def test_volume_curve_approx_fields(self, capsys):
        code, out, _ = run_cli(capsys, CURVE_ARGS + ["--approx"])
        assert code == 0
        report = json.loads(out)
        assert report["tau_approx"] == pytest.approx(2.5)
        assert report["S_approx"] == pytest.approx(22 / 21)

    def test_scan_approx_columns(self, capsys):
        code, out, _ = run_cli(capsys, SCAN_ARGS + ["--approx"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == (
            "beta1,beta2,condition_sign,delta,status,"
            "beta1_approx,beta2_approx,delta_approx"
        )
        first = lines[1].split(",")
        assert first[5] == "0.5"
        assert float(first[7]) == pytest.approx(5 / 7)


class TestInputHandling:
    def test_decimal_rejected_by_default(self, capsys):
        code, _, err = run_cli(
            capsys, ["delta", "--n", "0", "--m", "2", "--beta1", "0.5", "--beta2", "1/2"]
        )
        assert code == 1
        assert "decimal" in err

    def test_decimal_accepted_with_flag(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["delta", "--n", "0", "--m", "2", "--beta1", "0.5", "--beta2", "0.5",
             "--accept-decimal"],
        )
        assert code == 0
        assert out == (GOLDEN / "delta_f0_blow2_half.json").read_text(encoding="utf-8")

    def test_outside_ample_range(self, capsys):
        code, _, err = run_cli(
            capsys, ["delta", "--n", "2", "--m", "0", "--beta1", "1/1", "--beta2", "1/2"]
        )
        assert code == 1
        assert "outside the ample range" in err

    def test_bad_surface_params(self, capsys):
        code, _, err = run_cli(
            capsys, ["delta", "--n", "-1", "--m", "2", "--beta1", "1/2", "--beta2", "1/2"]
        )
        assert code == 1

    def test_unknown_curve_label(self, capsys):
        code, _, err = run_cli(capsys, CURVE_ARGS[:-1] + ["Q7"])
        assert code == 1

    def test_curve_index_out_of_range(self, capsys):
        code, _, err = run_cli(capsys, CURVE_ARGS[:-1] + ["E3"])
        assert code == 1
        assert "m=2" in err

    def test_missing_required_option(self, capsys):
        code, _, err = run_cli(capsys, ["delta", "--n", "0", "--m", "2", "--beta1", "1/2"])
        assert code == 1

    def test_unknown_suite(self, capsys):
        code, _, err = run_cli(capsys, ["verify", "--suite", "nope"])
        assert code == 1

    def test_nonpositive_samples(self, capsys):
        code, _, err = run_cli(capsys, ["verify", "--samples", "0"])
        assert code == 1

    @pytest.mark.parametrize(
        "grid, message",
        [
            ("1:2", "expected start:stop:step"),
            ("1/2:2:0", "step must be positive"),
            ("0:2:1/4", "angles must be positive"),
            ("x:2:1/4", "malformed"),
            ("1/10000:2:1/10000", "too large"),
        ],
    )
    def test_bad_grids(self, capsys, grid, message):
        code, _, err = run_cli(capsys, SCAN_ARGS[:-3] + [grid, "--beta2-grid", "1/4:1:1/4"])
        assert code == 1
        assert message in err

    def test_empty_grid_header_only(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["scan", "--n", "1", "--m", "0",
             "--beta1-grid", "2:1:1/2", "--beta2-grid", "1/4:1:1/4"],
        )
        assert code == 0
        assert out == "beta1,beta2,condition_sign,delta,status\n"


class TestInconsistencyExit:
    def test_delta_inconsistency_is_exit_2(self, capsys, monkeypatch):
        def boom(params, angles):
            raise InconsistencyError("routes disagree (synthetic)")

        monkeypatch.setattr("kedge.cli.k_polystable", boom)
        code, _, err = run_cli(capsys, DELTA_ARGS)
        assert code == 2
        assert "inconsistency" in err

    def test_scan_inconsistency_is_exit_2(self, capsys, monkeypatch):
        def boom(params, angles):
            raise InconsistencyError("routes disagree (synthetic)")

        monkeypatch.setattr("kedge.cli.k_polystable", boom)
        code, _, err = run_cli(capsys, SCAN_ARGS)
        assert code == 2

    def test_failing_suite_is_exit_2(self, capsys, monkeypatch):
        failing = SuiteResult(
            suite="halving", samples=1, checks=1, passed=False,
            counterexample={"n": 1},
        )
        monkeypatch.setattr("kedge.cli.run_suites", lambda *a: [failing])
        code, out, _ = run_cli(capsys, ["verify", "--suite", "halving"])
        assert code == 2
        assert json.loads(out)["ok"] is False


class TestConfigAndOutput:
    def test_config_supplies_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "kedge.cfg"
        cfg.write_text(
            "# surface under study\nn = 0\nm = 2\nbeta1 = 1/2\nbeta2 = 1/2\n"
        )
        code, out, _ = run_cli(capsys, ["--config", str(cfg), "delta"])
        assert code == 0
        assert out == (GOLDEN / "delta_f0_blow2_half.json").read_text(encoding="utf-8")

    def test_cli_overrides_config(self, capsys, tmp_path):
        cfg = tmp_path / "kedge.cfg"
        cfg.write_text("n = 0\nm = 2\nbeta1 = 1/2\nbeta2 = 1/2\n")
        code, out, _ = run_cli(
            capsys, ["--config", str(cfg), "delta", "--beta2", "2/3"]
        )
        assert code == 0
        assert json.loads(out)["beta2"] == "2/3"

    def test_config_reaches_other_subcommands(self, capsys, tmp_path):
        cfg = tmp_path / "kedge.cfg"
        cfg.write_text("n = 0\nm = 2\nbeta1 = 1/2\nbeta2 = 1/2\ncurve = E1\n")
        code, out, _ = run_cli(capsys, ["--config", str(cfg), "volume-curve"])
        assert code == 0
        assert out == (GOLDEN / "volume_curve_e1.json").read_text(encoding="utf-8")

    def test_malformed_config(self, capsys, tmp_path):
        cfg = tmp_path / "kedge.cfg"
        cfg.write_text("n 0\n")
        code, _, err = run_cli(capsys, ["--config", str(cfg), "delta"])
        assert code == 1
        assert "config line 1" in err

    def test_unreadable_config(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, ["--config", str(tmp_path / "absent.cfg"), "delta"])
        assert code == 1
        assert "cannot read config file" in err

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(capsys, DELTA_ARGS + ["-o", str(target)])
        assert code == 0
        assert out == ""
        assert target.read_text(encoding="utf-8") == (
            GOLDEN / "delta_f0_blow2_half.json"
        ).read_text(encoding="utf-8")

    def test_output_dir_env_prefixes_relative_paths(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("KEDGE_OUTPUT_DIR", str(tmp_path))
        code, _, _ = run_cli(capsys, SCAN_ARGS + ["-o", "sub/scan.csv"])
        assert code == 0
        written = tmp_path / "sub" / "scan.csv"
        assert written.read_text(encoding="utf-8") == (
            GOLDEN / "scan_m0.csv"
        ).read_text(encoding="utf-8")

    def test_output_dir_env_ignores_absolute_paths(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("KEDGE_OUTPUT_DIR", str(tmp_path / "unused"))
        target = tmp_path / "direct.json"
        code, _, _ = run_cli(capsys, DELTA_ARGS + ["-o", str(target)])
        assert code == 0
        assert target.exists()
        assert not (tmp_path / "unused").exists()


class TestScanContent:
    def test_condition_locus_row(self, capsys):
        # (2/1, 1/1) sits on the condition locus but on the ample
        # boundary: sign 0, empty delta cell, OutsideAmpleRange.
        _, out, _ = run_cli(capsys, SCAN_ARGS)
        rows = out.splitlines()
        assert rows[-1] == "2/1,1/1,0,,OutsideAmpleRange"

    def test_toric_diagonal_locus(self, capsys):
        # For n = m = 0 the polystable locus is exactly the diagonal.
        code, out, _ = run_cli(
            capsys,
            ["scan", "--n", "0", "--m", "0",
             "--beta1-grid", "1/4:1:1/4", "--beta2-grid", "1/4:1:1/4"],
        )
        assert code == 0
        for row in out.splitlines()[1:]:
            beta1, beta2, cs, delta, status = row.split(",")
            on_diagonal = beta1 == beta2
            assert (status == "KPolystable") is on_diagonal
            assert (cs == "0") is on_diagonal
            assert (delta == "1/1") is on_diagonal

    def test_scan_against_direct_evaluation(self, capsys):
        from kedge.verdict import k_polystable
        from kedge.picard import Angles

        _, out, _ = run_cli(capsys, SCAN_ARGS)
        row = out.splitlines()[1].split(",")
        v = k_polystable((1, 0), Angles(rat(1, 2), rat(1, 4)))
        assert row[2] == str(v.condition_sign)
        assert row[3] == "5/7" and v.delta == rat(5, 7)
        assert row[4] == v.status
