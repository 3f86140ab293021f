import os

import pytest

from bribery.cli import main
from bribery.harness import CheckCaps, run_check
from bribery.model import SolveResult


@pytest.fixture
def basic_file(tmp_path):
    path = tmp_path / "basic.election"
    path.write_text(
        "candidates: a b p\n"
        "rule: plurality\n"
        "voter: order=a>b>p\n"
        "voter: order=a>b>p\n"
        "voter: order=b>a>p\n"
        "voter: order=p>a>b\n"
    )
    return str(path)


class TestBribe:
    def test_feasible_exit_zero(self, basic_file, capsys):
        code = main(["bribe", "--file", basic_file, "--target", "p", "--budget", "1"])
        out = capsys.readouterr().out
        assert code == 0
        report = dict(
            line.split(": ", 1) for line in out.strip().splitlines() if ": " in line
        )
        assert report["feasible"] == "true"
        assert report["solver"] == "greedy"
        assert "cost" in report
        assert any(line.startswith("witness.0:") for line in out.splitlines())

    def test_infeasible_exit_one(self, basic_file, capsys):
        code = main(
            ["bribe", "--file", basic_file, "--target", "p", "--budget", "0"]
        )
        out = capsys.readouterr().out
        assert code == 1
        assert "feasible: false" in out
        assert "witness" not in out

    def test_unknown_target_exit_two(self, basic_file, capsys):
        code = main(["bribe", "--file", basic_file, "--target", "zz", "--budget", "1"])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_rule_override_and_solver_choice(self, basic_file, capsys):
        code = main(
            [
                "bribe", "--file", basic_file, "--target", "p", "--budget", "2",
                "--rule", "scoring 2 1 0", "--solver", "enum",
            ]
        )
        assert code in (0, 1)
        assert "solver: enum" in capsys.readouterr().out

    def test_oracle_solver_agrees(self, basic_file, capsys):
        for budget, want in ((1, 0), (0, 1)):
            code = main(
                ["bribe", "--file", basic_file, "--target", "p",
                 "--budget", str(budget), "--solver", "oracle"]
            )
            capsys.readouterr()
            assert code == want

    def test_solver_mismatch_variant_errors(self, basic_file, capsys):
        # negative flag on a non-plurality rule is a query error
        code = main(
            ["bribe", "--file", basic_file, "--target", "p", "--budget", "1",
             "--rule", "veto", "--negative"]
        )
        assert code == 2


class TestGen:
    def test_partition_reduction_to_file(self, tmp_path, capsys):
        out = tmp_path / "inst.election"
        code = main(
            ["gen", "partition", "1", "1", "2", "--reduction", "plurality-wd",
             "--certificate", "2", "-o", str(out)]
        )
        assert code == 0
        body = out.read_text()
        assert "candidates: p c" in body
        note = (tmp_path / "inst.election.note").read_text()
        assert "expected: feasible" in note
        assert "witness.0:" in note
        # replay through the solver path
        code = main(
            ["bribe", "--file", str(out), "--target", "p", "--budget", "2",
             "--priced", "--weighted"]
        )
        capsys.readouterr()
        assert code == 0

    def test_odd_sum_emits_fixed_no_instance(self, tmp_path, capsys):
        out = tmp_path / "no.election"
        code = main(
            ["gen", "partition", "1", "1", "1", "--reduction", "plurality-wd", "-o", str(out)]
        )
        err = capsys.readouterr().err
        assert code == 0
        assert "infeasible" in (tmp_path / "no.election.note").read_text()
        assert "warning" in err
        code = main(
            ["bribe", "--file", str(out), "--target", "p", "--budget", "0",
             "--priced", "--weighted", "--solver", "oracle"]
        )
        capsys.readouterr()
        assert code == 1

    def test_x3c_generation(self, tmp_path, capsys):
        out = tmp_path / "x3c.election"
        code = main(
            ["gen", "x3c", "--elements", "3", "--set", "0,1,2",
             "--certificate", "0", "-o", str(out)]
        )
        assert code == 0
        note = (tmp_path / "x3c.election.note").read_text()
        assert "expected: feasible" in note
        code = main(
            ["bribe", "--file", str(out), "--target", "p", "--budget", "1",
             "--solver", "oracle"]
        )
        capsys.readouterr()
        assert code == 0

    def test_partition_prime_values_only(self, capsys):
        code = main(["gen", "partition-prime", "1", "1"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.split() == ["23", "14", "25", "16"]

    def test_embed_manip(self, tmp_path, capsys):
        base = tmp_path / "base.election"
        base.write_text(
            "candidates: a p\nrule: scoring 2 0\nvoter: order=a>p\n"
        )
        out = tmp_path / "embedded.election"
        code = main(
            ["gen", "embed-manip", "--file", str(base), "--target", "p",
             "--manipulators", "1,1", "-o", str(out)]
        )
        assert code == 0
        body = out.read_text()
        assert "price=0" in body
        code = main(
            ["bribe", "--file", str(out), "--target", "p", "--budget", "0",
             "--priced", "--solver", "oracle"]
        )
        capsys.readouterr()
        assert code == 0

    def test_bad_certificate_rejected(self, tmp_path, capsys):
        code = main(
            ["gen", "partition", "1", "1", "2", "--reduction", "plurality-wd",
             "--certificate", "0"]
        )
        capsys.readouterr()
        assert code == 2


class TestCheck:
    def test_small_run_is_clean(self, tmp_path, capsys):
        report = tmp_path / "report"
        code = main(
            ["check", "--seed", "5", "--instances", "16", "--report-dir", str(report)]
        )
        out = capsys.readouterr().out
        assert code == 0
        assert "mismatches: 0" in out
        assert (report / "results.csv").exists()
        assert (report / "agreement.png").exists()
        assert (report / "timings.png").exists()
        assert (report / "summary.txt").exists()

    def test_zero_instances(self, capsys):
        code = main(["check", "--seed", "1", "--instances", "0"])
        out = capsys.readouterr().out
        assert code == 0 and "rows: 0" in out

    def test_injected_buggy_solver_detected(self, tmp_path):
        def always_no(q):
            return SolveResult(False, None, "greedy")

        summary = run_check(
            seed=5,
            instances=20,
            caps=CheckCaps(),
            report_dir=str(tmp_path / "rep"),
            solver_overrides={"greedy": always_no},
        )
        assert summary.mismatches
        assert summary.mismatch_files
        replay = summary.mismatch_files[0]
        assert os.path.exists(replay)
        assert os.path.exists(replay.replace(".election", ".note"))
