"""End-to-end CLI behaviour: subcommands, file outputs, exit codes."""

import json
import subprocess
import sys

import pytest

from bfmi.boolfn import Dictator, make_class
from bfmi.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCompute:
    def test_dictator_sits_on_the_bound(self, capsys):
        code, out, _ = run(capsys, "compute", "--n", "3", "--function", "dictator:j=1", "--p", "1/4")
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"mi_bits", "bound_bits", "margin_bits"}
        assert abs(doc["margin_bits"]) <= 1e-12

    def test_dump_joint(self, capsys, tmp_path):
        path = tmp_path / "joint.csv"
        code, *_ = run(
            capsys,
            "compute", "--n", "2", "--function", "class1:i=0", "--p", "1/4",
            "--dump-joint", str(path),
        )
        assert code == 0
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "y_index,p0_num,p0_den,p1_num,p1_den"
        assert len(lines) == 5

    def test_table_file_input(self, capsys, tmp_path):
        table = make_class(3, Dictator(2))
        path = tmp_path / "table.json"
        path.write_text(table.to_json())
        code, out, _ = run(capsys, "compute", "--table", str(path), "--p", "1/8")
        assert code == 0
        assert abs(json.loads(out)["margin_bits"]) <= 1e-12

    def test_table_dimension_mismatch_is_usage_error(self, capsys, tmp_path):
        path = tmp_path / "table.json"
        path.write_text(make_class(2, Dictator(1)).to_json())
        code, _, err = run(capsys, "compute", "--table", str(path), "--n", "3", "--p", "1/8")
        assert code == 2
        assert "disagrees" in err

    def test_missing_p_is_usage_error(self, capsys):
        code, _, err = run(capsys, "compute", "--n", "2", "--function", "class1")
        assert code == 2
        assert "needs --p" in err


class TestVerify:
    def test_small_grid_passes(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--classes", "class1,class3", "--n-max", "3", "--p-den", "4"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["version"] == 1
        assert all(r["status"] == "pass" for r in doc["reports"])

    def test_csv_format_and_out_file(self, capsys, tmp_path):
        path = tmp_path / "reports.csv"
        code, out, _ = run(
            capsys,
            "verify", "--classes", "dictator", "--n-max", "2", "--p", "1/4",
            "--format", "csv", "--out", str(path),
        )
        assert code == 0
        assert out == ""
        assert path.read_text().splitlines()[0].startswith("class_spec,")

    def test_lemma_spot_checks(self, capsys):
        code, _, err = run(
            capsys,
            "verify", "--classes", "class1", "--n-max", "2", "--p", "1/4",
            "--lemma-samples", "5", "--seed", "3",
        )
        assert code == 0
        assert "5/5 ok" in err


class TestKaramata:
    def test_certificate_and_dump(self, capsys, tmp_path):
        path = tmp_path / "sums.csv"
        code, out, _ = run(capsys, "karamata", "--n", "2", "--p", "1/4", "--dump-sums", str(path))
        assert code == 0
        doc = json.loads(out)
        assert doc["holds"] is True
        assert doc["sub_inequalities"]["two_wmax_le_a_plus_c"] is True
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "k,SL_num,SL_den,SR_num,SR_den,ok"
        assert len(lines) == 13  # 2^2 * (2^2 - 1) prefixes
        # grand totals agree at the last prefix
        last = lines[-1].split(",")
        assert last[1:5] == ["3", "1", "3", "1"]
        assert all(line.endswith("True") for line in lines[1:])

    def test_grid_mode_certifies_every_point(self, capsys):
        code, out, _ = run(capsys, "karamata", "--n", "3", "--p-den", "8")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["certificates"]) == 5
        assert all(c["holds"] for c in doc["certificates"])

    def test_dump_sums_needs_single_p(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "karamata", "--n", "2", "--dump-sums", str(tmp_path / "x.csv")
        )
        assert code == 2
        assert "single --p" in err


class TestExhaustive:
    def test_n2_json(self, capsys):
        code, out, _ = run(capsys, "exhaustive", "--n", "2", "--p", "1/4")
        assert code == 0
        doc = json.loads(out)
        assert doc["summaries"][0]["num_functions_scanned"] == 16

    def test_n5_without_canonical_is_usage_error(self, capsys):
        code, _, err = run(capsys, "exhaustive", "--n", "5", "--p", "1/4")
        assert code == 2
        assert "canonicalization" in err


class TestSweepAndReduce:
    def test_sweep_rows(self, capsys):
        code, out, _ = run(capsys, "sweep", "--function", "dictator:j=1", "--n", "2", "--p-den", "4")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "p,mi_bits,bound_bits,margin_bits"
        assert len(lines) == 4
        assert lines[1].split(",")[0] == "0"

    def test_reduce_check(self, capsys):
        code, out, _ = run(capsys, "reduce-check", "--n", "4", "--r", "2", "--p", "1/8")
        assert code == 0
        assert json.loads(out)["abs_diff"] <= 1e-12


class TestUsageErrors:
    def test_unknown_command_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_malformed_p_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["compute", "--n", "2", "--function", "class1", "--p", "0.7"])
        assert exc.value.code == 2

    def test_bad_class_spec_is_usage_error(self, capsys):
        code, _, err = run(capsys, "compute", "--n", "2", "--function", "clazz9", "--p", "1/4")
        assert code == 2
        assert "error" in err


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "bfmi.cli", "compute", "--n", "2",
             "--function", "dictator:j=1", "--p", "0"],
            capture_output=True, text=True, timeout=120,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["mi_bits"] == 1.0
