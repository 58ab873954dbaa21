import json
import subprocess
import sys

import pytest

from filtergames.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


class TestSubcommands:
    def test_play_transcript_schema(self, capsys):
        code, out = run_cli(
            ["play", "--game", "g1", "--filter", "frechet", "--one", "gplay:2k",
             "--two", "offset:1", "--horizon", "20"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"game", "horizon", "innings", "verdict"}
        assert doc["verdict"]["beat_count"] == 20
        assert [i["k"] for i in doc["innings"]] == list(range(1, 21))

    def test_play_g2_verdict_fields(self, capsys):
        code, out = run_cli(
            ["play", "--game", "g2", "--one", "maxplus:1", "--two", "offset:3",
             "--horizon", "10"],
            capsys,
        )
        doc = json.loads(out)
        assert code == 0
        assert set(doc["verdict"]) == {"domination_index", "status", "two_winning"}

    def test_steal_parity_split(self, capsys):
        code, out = run_cli(
            ["steal", "--two", "offset:1", "--first-move", "1", "--horizon", "1000"], capsys
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["interleaving_ok"] and doc["intersection"] == []

    def test_refute_two_includes_verdicts(self, capsys):
        code, out = run_cli(
            ["refute-two", "--two", "offset:1", "--budget", "50", "--horizon", "40"], capsys
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["kind"] == "diagonal-pair"
        assert doc["intersection_size"] == 0
        assert not doc["verdicts"]["f"]["two_winning"] or not doc["verdicts"]["g"]["two_winning"]

    def test_extract_g_closed_form_then_cap(self, capsys):
        code, out = run_cli(["extract-g", "--one", "maxplus:9999", "--upto", "25"], capsys)
        assert code == 0
        assert json.loads(out)["g"][24] == 10000 * 25 + 1
        code, _ = run_cli(
            ["extract-g", "--one", "maxplus:9999", "--upto", "25", "--no-fast-path"], capsys
        )
        assert code == 3

    def test_build_gh(self, capsys):
        code, out = run_cli(["build-gh", "--one", "maxplus:2", "--upto", "3"], capsys)
        doc = json.loads(out)
        assert code == 0
        assert doc["g"] == [2, 6, 11] and doc["h"] == [3, 11]

    def test_defeat_one_small(self, capsys):
        code, out = run_cli(
            ["defeat-one", "--one", "maxplus:2", "--horizon", "4", "--digit-cap", "3000"], capsys
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["produced"] == 4
        assert all(all(v for k, v in c.items() if k != "inning") for c in doc["chain_checks"])

    def test_check_subcommands(self, capsys):
        code, out = run_cli(
            ["check", "enum-bounded", "--filter", "frechet", "--g", "2k",
             "--bases", "1:10", "--scan", "200"],
            capsys,
        )
        assert code == 0 and json.loads(out)["all_pass"]
        code, out = run_cli(
            ["check", "escape", "--filter", "frechet", "--partition", "size=3",
             "--threshold", "5", "--scan", "500"],
            capsys,
        )
        assert code == 0 and not json.loads(out)["found"]
        code, out = run_cli(
            ["check", "rare", "--filter", "rare:leftmost", "--partition", "size=2",
             "--scan", "50"],
            capsys,
        )
        assert code == 0 and json.loads(out)["result"] == "selector"


class TestExitCodes:
    def test_parse_error_is_2(self, capsys):
        assert run_cli(["play", "--game", "g1", "--one", "huh", "--two", "copy",
                        "--horizon", "3"], capsys)[0] == 2

    def test_argparse_error_is_2(self, capsys):
        assert main(["play", "--game", "g3", "--one", "copy", "--two", "copy",
                     "--horizon", "3"]) == 2

    def test_resource_cap_is_3(self, capsys):
        code, _ = run_cli(
            ["extract-g", "--one", "maxplus:2", "--upto", "30", "--no-fast-path"], capsys
        )
        assert code == 3

    def test_precondition_is_4(self, capsys):
        code, _ = run_cli(
            ["defeat-one", "--one", "maxplus:2", "--horizon", "100", "--digit-cap", "6"], capsys
        )
        assert code == 4

    def test_validation_error_is_2(self, capsys):
        code, _ = run_cli(["play", "--game", "g1", "--one", "copy", "--two", "copy",
                           "--horizon", "0"], capsys)
        assert code == 2


class TestConfigAndOut:
    def test_out_file(self, tmp_path, capsys):
        out_path = tmp_path / "t.json"
        code, stdout = run_cli(
            ["steal", "--two", "offset:2", "--horizon", "5", "--out", str(out_path)], capsys
        )
        assert code == 0 and stdout == ""
        assert json.loads(out_path.read_text())["interleaving_ok"]

    def test_config_supplies_defaults_and_flags_override(self, tmp_path, capsys):
        cfg = tmp_path / "play.cfg"
        cfg.write_text("game=g1\none=gplay:2k\ntwo=offset:1\nhorizon=5\nfilter=frechet\n")
        code, out = run_cli(["play", "--config", str(cfg)], capsys)
        assert code == 0 and json.loads(out)["horizon"] == 5
        code, out = run_cli(["play", "--config", str(cfg), "--horizon", "7"], capsys)
        assert code == 0 and json.loads(out)["horizon"] == 7

    def test_batch_runs_configs_concurrently(self, tmp_path, capsys):
        for i, spec in enumerate(("offset:1", "offset:2")):
            (tmp_path / f"job{i}.cfg").write_text(
                f"command=steal\ntwo={spec}\nhorizon=50\n"
            )
        out_dir = tmp_path / "results"
        code = main(
            ["batch", "--jobs", "2", "--out-dir", str(out_dir),
             str(tmp_path / "job0.cfg"), str(tmp_path / "job1.cfg")]
        )
        lines = capsys.readouterr().out.splitlines()
        assert code == 0
        assert lines == ["job0.cfg: exit 0", "job1.cfg: exit 0"]
        assert json.loads((out_dir / "job0.json").read_text())["strategy"] == "offset:1"
        assert json.loads((out_dir / "job1.json").read_text())["strategy"] == "offset:2"


class TestDeterminism:
    def test_in_process_outputs_identical(self, capsys):
        commands = [
            ["play", "--game", "g1", "--one", "gplay:2k", "--two", "offset:1", "--horizon", "30"],
            ["play", "--game", "g2", "--one", "tactic:size=3", "--two", "maxinning",
             "--horizon", "25", "--filter", "nonrare:block=3"],
            ["refute-two", "--two", "maxinning", "--budget", "40", "--horizon", "30"],
            ["steal", "--two", "maxplus:2", "--horizon", "60"],
            ["extract-g", "--one", "maxplus:1", "--upto", "15"],
            ["build-gh", "--one", "maxplus:1", "--upto", "20"],
            ["defeat-one", "--one", "maxplus:1", "--horizon", "3", "--digit-cap", "2000"],
            ["check", "enum-bounded", "--filter", "nonrare:block=3", "--g", "2k",
             "--bases", "1:6", "--scan", "150"],
            ["check", "escape", "--filter", "base:tail", "--partition", "size=4",
             "--threshold", "3", "--scan", "300"],
            ["check", "rare", "--filter", "frechet", "--partition", "size=2", "--scan", "40"],
        ]
        for argv in commands:
            first = run_cli(argv, capsys)
            second = run_cli(argv, capsys)
            assert first == second, argv

    def test_subprocess_runs_byte_identical(self):
        argv = [sys.executable, "-m", "filtergames.cli", "steal", "--two", "maxinning",
                "--horizon", "200"]
        a = subprocess.run(argv, capture_output=True, check=True).stdout
        b = subprocess.run(argv, capture_output=True, check=True).stdout
        assert a == b and a.endswith(b"\n")
