import json
import subprocess
import sys

import pytest

from sunflower_lab import SetFamily, read_setfam, write_setfam
from sunflower_lab.cli import (
    EXIT_BUDGET,
    EXIT_CHECK_FAILURE,
    EXIT_OK,
    EXIT_PARSE,
    main,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_gen_tree(self, capsys, tmp_path):
        out = tmp_path / "t.setfam"
        code, stdout, _ = run_cli(capsys, "gen", "tree", "--r", "3", "--k", "3", "--out", str(out))
        assert code == EXIT_OK
        fam = read_setfam(out)
        assert fam.m == 4 and fam.is_uniform() == 3
        assert "m=4" in stdout

    def test_gen_ls1(self, capsys, tmp_path):
        out = tmp_path / "l.setfam"
        code, stdout, _ = run_cli(capsys, "gen", "ls1", "--r", "3", "--k", "4", "--out", str(out))
        assert code == EXIT_OK
        assert read_setfam(out).m == 5

    def test_gen_product(self, capsys, tmp_path):
        a = tmp_path / "a.setfam"
        b = tmp_path / "b.setfam"
        out = tmp_path / "p.setfam"
        run_cli(capsys, "gen", "tree", "--r", "3", "--k", "2", "--out", str(a))
        run_cli(capsys, "gen", "tree", "--r", "3", "--k", "3", "--out", str(b))
        code, _, _ = run_cli(capsys, "gen", "product", "--in1", str(a), "--in2", str(b), "--out", str(out))
        assert code == EXIT_OK
        assert read_setfam(out).m == 8

    def test_gen_randomlb_deterministic(self, capsys, tmp_path):
        f1 = tmp_path / "r1.setfam"
        f2 = tmp_path / "r2.setfam"
        args = ["gen", "randomlb", "--d", "3", "--r", "3", "--k", "5", "--n", "30", "--m", "20", "--seed", "7"]
        assert run_cli(capsys, *args, "--out", str(f1))[0] == EXIT_OK
        assert run_cli(capsys, *args, "--out", str(f2))[0] == EXIT_OK
        assert f1.read_bytes() == f2.read_bytes()

    def test_gen_disks(self, capsys, tmp_path):
        scene = tmp_path / "pts.scene"
        lines = ["scene2 1 6"] + [f"p {x} {7 * x % 5}" for x in range(6)]
        scene.write_text("\n".join(lines) + "\n")
        out = tmp_path / "d.setfam"
        scene_out = tmp_path / "full.scene"
        code, _, _ = run_cli(
            capsys, "gen", "disks", "--points", str(scene), "--k", "2",
            "--count", "10", "--seed", "3", "--out", str(out),
            "--scene-out", str(scene_out),
        )
        assert code == EXIT_OK
        fam = read_setfam(out)
        assert fam.m == 10 and fam.is_uniform() == 2
        assert scene_out.exists()

    def test_gen_bad_params_exit_code(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "gen", "tree", "--r", "2", "--k", "3", "--out", str(tmp_path / "x"))
        assert code == EXIT_PARSE
        assert "r >= 3" in err


class TestAnalyze:
    @pytest.fixture()
    def tree_file(self, tmp_path, capsys):
        out = tmp_path / "tree34.setfam"
        run_cli(capsys, "gen", "tree", "--r", "3", "--k", "4", "--out", str(out))
        return out

    def test_analyze_text(self, capsys, tree_file):
        code, stdout, _ = run_cli(capsys, "analyze", str(tree_file), "--r", "3")
        assert code == EXIT_OK
        assert "vc: 1" in stdout
        assert "sunflower(r=3): none" in stdout
        assert "0 fail" in stdout

    def test_analyze_json_schema(self, capsys, tree_file):
        code, stdout, _ = run_cli(capsys, "analyze", str(tree_file), "--json")
        assert code == EXIT_OK
        doc = json.loads(stdout)
        assert doc["schema"] == 1
        assert doc["vc"] == 1
        assert doc["sunflower"] == {"found": False}
        assert all(c["status"] != "fail" for c in doc["checks"])

    def test_analyze_finds_disjoint_sunflower(self, capsys, tmp_path):
        f = tmp_path / "disj.setfam"
        write_setfam(SetFamily.from_sets(6, [[0, 1], [2, 3], [4, 5]]), f)
        code, stdout, _ = run_cli(capsys, "analyze", str(f), "--r", "3")
        assert code == EXIT_OK
        assert "core=[] members=[0, 1, 2]" in stdout

    def test_analyze_parse_error_exit(self, capsys, tmp_path):
        bad = tmp_path / "bad.setfam"
        bad.write_text("setfam 1 2 1\n9: 0\n")
        code, _, err = run_cli(capsys, "analyze", str(bad))
        assert code == EXIT_PARSE
        assert "parse error" in err

    def test_analyze_directory_ordering_and_workers(self, capsys, tmp_path):
        for r, k, name in ((3, 2, "b.setfam"), (3, 3, "a.setfam"), (4, 2, "c.setfam")):
            run_cli(capsys, "gen", "tree", "--r", str(r), "--k", str(k), "--out", str(tmp_path / name))
        code1, out1, _ = run_cli(capsys, "analyze", str(tmp_path), "--json", "--workers", "1")
        code4, out4, _ = run_cli(capsys, "analyze", str(tmp_path), "--json", "--workers", "4")
        assert code1 == code4 == EXIT_OK
        assert out1 == out4
        doc = json.loads(out1)
        assert [r["file"] for r in doc["results"]] == ["a.setfam", "b.setfam", "c.setfam"]


class TestAlphaCommand:
    def test_exact(self, capsys, tmp_path):
        f = tmp_path / "disj.setfam"
        write_setfam(SetFamily.from_sets(6, [[0, 1], [2, 3], [4, 5]]), f)
        code, stdout, _ = run_cli(capsys, "alpha", str(f), "--r", "3", "--exact", "--json")
        assert code == EXIT_OK
        doc = json.loads(stdout)
        assert doc["exact"] == {"num": 1, "den": 3}

    def test_single_set_family(self, capsys, tmp_path):
        f = tmp_path / "one.setfam"
        write_setfam(SetFamily.from_sets(2, [[0, 1]]), f)
        code, stdout, _ = run_cli(capsys, "alpha", str(f), "--r", "3", "--exact")
        assert code == EXIT_OK
        assert "alpha exact = 1" in stdout

    def test_trials_deterministic(self, capsys, tmp_path):
        f = tmp_path / "disj.setfam"
        write_setfam(SetFamily.from_sets(6, [[0, 1], [2, 3], [4, 5]]), f)
        args = ("alpha", str(f), "--r", "3", "--trials", "10000", "--seed", "1", "--json")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2


class TestBoundsCommand:
    def test_t3u(self, capsys):
        code, stdout, _ = run_cli(capsys, "bounds", "T3U", "--r", "3", "--k", "2", "--d", "1")
        assert code == EXIT_OK
        assert "= 6" in stdout

    def test_json_rational(self, capsys):
        code, stdout, _ = run_cli(capsys, "bounds", "L3", "--r", "3", "--g", "5", "--json")
        assert code == EXIT_OK
        doc = json.loads(stdout)
        assert doc["value"] == {"num": 1, "den": 25}
        assert doc["over_e"] is True

    def test_out_of_range(self, capsys):
        code, _, err = run_cli(capsys, "bounds", "T1", "--r", "2", "--k", "1")
        assert code == EXIT_PARSE


class TestExtremalCommand:
    def test_ls_kind(self, capsys):
        code, stdout, _ = run_cli(capsys, "extremal", "ls", "--d", "1", "--r", "3", "--k", "2")
        assert code == EXIT_OK
        assert "= 4" in stdout

    def test_family_kind(self, capsys):
        code, stdout, _ = run_cli(capsys, "extremal", "family", "--r", "3", "--k", "1")
        assert code == EXIT_OK
        assert "= 3" in stdout

    def test_budget_exit(self, capsys):
        code, stdout, _ = run_cli(capsys, "extremal", "family", "--r", "3", "--k", "2", "--node-budget", "4")
        assert code == EXIT_BUDGET
        assert "lower bound" in stdout

    def test_identity_report(self, capsys):
        code, stdout, _ = run_cli(
            capsys, "extremal", "multifamily", "--r", "3", "--k", "1", "--identity-report", "--json"
        )
        assert code == EXIT_OK
        doc = json.loads(stdout)
        assert doc["identity_report"]["identities"]["(r-1)*(f-1)+1"] is True


class TestEntryPoint:
    def test_module_invocation(self, tmp_path):
        out = tmp_path / "t.setfam"
        proc = subprocess.run(
            [sys.executable, "-m", "sunflower_lab.cli", "gen", "tree", "--r", "3", "--k", "3", "--out", str(out)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert out.exists()

    def test_usage_error_is_exit_2(self):
        proc = subprocess.run(
            [sys.executable, "-m", "sunflower_lab.cli", "nonsense"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2


class TestExitCodes:
    def test_check_failure_exit_4(self, capsys, tmp_path, monkeypatch):
        # no real family can violate the battery, so force one failing check
        from sunflower_lab import cli as cli_mod
        from sunflower_lab.alpha import CheckResult, InequalityReport

        def fake_checks(*args, **kwargs):
            return InequalityReport((CheckResult("forced", "fail", "synthetic"),))

        monkeypatch.setattr(cli_mod, "check_inequalities", fake_checks)
        f = tmp_path / "t.setfam"
        write_setfam(SetFamily.from_sets(3, [[0, 1], [1, 2]]), f)
        code, stdout, _ = run_cli(capsys, "analyze", str(f))
        assert code == EXIT_CHECK_FAILURE
        assert "1 fail" in stdout

    def test_budget_exit_3_on_analyze(self, capsys, tmp_path):
        f = tmp_path / "big.setfam"
        from sunflower_lab import tree_family

        write_setfam(tree_family(4, 5), f)
        code, _, err = run_cli(capsys, "analyze", str(f), "--node-budget", "5")
        assert code == EXIT_BUDGET
        assert "budget" in err

    def test_threads_env_sets_default_workers(self, monkeypatch):
        from sunflower_lab.cli import _default_workers

        monkeypatch.setenv("SUNFLOWER_LAB_THREADS", "4")
        assert _default_workers() == 4
        monkeypatch.setenv("SUNFLOWER_LAB_THREADS", "garbage")
        assert _default_workers() == 1
        monkeypatch.delenv("SUNFLOWER_LAB_THREADS")
        assert _default_workers() == 1


class TestReproducibility:
    def test_seeded_pipeline_byte_identical(self, capsys, tmp_path):
        blobs = []
        for run in (1, 2):
            subdir = tmp_path / f"run{run}"
            subdir.mkdir()
            fam_path = subdir / "fam.setfam"
            run_cli(
                capsys, "gen", "randomlb", "--d", "3", "--r", "3", "--k", "4",
                "--n", "12", "--m", "10", "--seed", "5", "--out", str(fam_path), "--json",
            )
            _, out, _ = run_cli(capsys, "analyze", str(fam_path), "--json")
            blobs.append(out + fam_path.read_text())
        assert blobs[0] == blobs[1]
