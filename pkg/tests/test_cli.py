import hashlib
import json
import shutil
import subprocess

import pytest

from ffspec import (
    PointSet,
    Space,
    verify_fuglede_small,
    verify_spectral_pair,
    verify_tiling_pair,
)
from ffspec.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def write_lines(path, *rows):
    path.write_text("\n".join(rows) + "\n")
    return str(path)


@pytest.fixture
def line_file(tmp_path):
    rows = ["# axis line", "p 7", "d 3"]
    rows += [f"{t} 0 0" for t in range(7)]
    return write_lines(tmp_path / "line.txt", *rows)


@pytest.fixture
def plane_file(tmp_path):
    rows = ["p 7", "d 3"]
    rows += [f"0 {y} {z}" for y in range(7) for z in range(7)]
    return write_lines(tmp_path / "plane.txt", *rows)


class TestAnalyze:
    def test_line_report(self, line_file, capsys):
        code, out, _ = run_cli(["analyze", "--set", line_file], capsys)
        assert code == 0
        payload = json.loads(out)
        res = payload["result"]
        assert res["p"] == 7 and res["d"] == 3 and res["size"] == 7
        assert res["line_sup"] == 7
        assert res["plane_sup"] == 7
        assert res["direction_count"] == 1
        assert res["zero_set_size"] == 294
        assert res["spectral"]["status"] == "witness"
        assert res["tile"]["status"] == "witness"
        assert payload["meta"]["workers"] == 1

    def test_witnesses_reload_and_verify(self, line_file, capsys):
        code, out, _ = run_cli(["analyze", "--set", line_file], capsys)
        assert code == 0
        res = json.loads(out)["result"]
        spc = Space(res["p"], res["d"])
        E = PointSet.from_coords(
            spc, [(t, 0, 0) for t in range(7)])
        A = PointSet.from_coords(
            spc, [tuple(r) for r in res["spectral"]["witness"]])
        T = PointSet.from_coords(
            spc, [tuple(r) for r in res["tile"]["witness"]])
        assert A.size == 7
        assert E.size * T.size == 343
        assert verify_spectral_pair(E, A)
        assert verify_tiling_pair(E, T)

    def test_plane_both_witnesses(self, plane_file, capsys):
        code, out, _ = run_cli(["analyze", "--set", plane_file], capsys)
        assert code == 0
        res = json.loads(out)["result"]
        assert res["size"] == 49
        assert res["spectral"]["status"] == "witness"
        assert res["tile"]["status"] == "witness"

    def test_size_filtered(self, tmp_path, capsys):
        f = write_lines(tmp_path / "four.txt",
                        "p 7", "d 2", "0 0", "1 0", "0 1", "1 1")
        code, out, _ = run_cli(["analyze", "--set", f], capsys)
        assert code == 0
        res = json.loads(out)["result"]
        assert res["spectral"]["status"] == "size_filtered"
        assert res["spectral"]["nodes"] == 0
        assert res["tile"]["status"] == "size_filtered"
        assert "witness" not in res["spectral"]

    def test_budget_aborts_with_exit_2(self, line_file, capsys):
        code, out, _ = run_cli(
            ["analyze", "--set", line_file, "--budget", "1"], capsys)
        assert code == 2
        res = json.loads(out)["result"]
        assert res["spectral"]["status"] == "aborted"
        assert res["tile"]["status"] == "aborted"

    def test_section_toggles(self, line_file, capsys):
        code, out, _ = run_cli(
            ["analyze", "--set", line_file, "--no-tiling"], capsys)
        res = json.loads(out)["result"]
        assert code == 0 and "tile" not in res and "spectral" in res
        code, out, _ = run_cli(
            ["analyze", "--set", line_file, "--no-spectral"], capsys)
        res = json.loads(out)["result"]
        assert code == 0 and "spectral" not in res and "tile" in res

    def test_report_file(self, line_file, tmp_path, capsys):
        rp = tmp_path / "out.json"
        code, out, _ = run_cli(
            ["analyze", "--set", line_file, "--report", str(rp)], capsys)
        assert code == 0
        assert out == ""
        payload = json.loads(rp.read_text())
        assert payload["result"]["zero_set_size"] == 294

    def test_malformed_file(self, tmp_path, capsys):
        f = write_lines(tmp_path / "bad.txt", "p 7", "d 2", "1 2 3")
        code, _, err = run_cli(["analyze", "--set", f], capsys)
        assert code == 1
        assert err.startswith("error:")

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run_cli(
            ["analyze", "--set", str(tmp_path / "nope.txt")], capsys)
        assert code == 1
        assert "error:" in err


class TestVerify:
    def test_unknown_lemma_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--lemma", "lm99"])
        assert exc.value.code == 1

    def test_fuglede_3_2_report(self, tmp_path, capsys):
        rp = tmp_path / "f32.json"
        code, out, err = run_cli(
            ["verify", "--lemma", "fuglede-3-2", "--report", str(rp)],
            capsys)
        assert code == 0 and out == "" and err == ""
        payload = json.loads(rp.read_text())
        assert set(payload) == {"result", "meta"}
        res = payload["result"]
        assert res["lemma_id"] == "fuglede-3-2"
        assert res["counterexamples"] == []
        sizes = res["details"]["sizes"]
        assert sizes["3"] == {"sets": 84, "spectral": 84, "tiles": 84}
        assert sizes["6"] == {"sets": 84, "spectral": 0, "tiles": 0}
        canonical = json.dumps(res, sort_keys=True, separators=(",", ":"))
        assert payload["meta"]["result_sha256"] == \
            hashlib.sha256(canonical.encode()).hexdigest()
        assert res == verify_fuglede_small(3, 2, (3, 6)).result_dict()

    def test_result_stable_across_threads_and_reruns(self, tmp_path, capsys):
        payloads = []
        for i, threads in enumerate(("1", "2", "1")):
            rp = tmp_path / f"r{i}.json"
            code, _, _ = run_cli(
                ["verify", "--lemma", "fuglede-3-2", "--threads", threads,
                 "--report", str(rp)], capsys)
            assert code == 0
            payloads.append(json.loads(rp.read_text()))
        hashes = {p["meta"]["result_sha256"] for p in payloads}
        assert len(hashes) == 1
        assert payloads[0]["result"] == payloads[1]["result"] \
            == payloads[2]["result"]
        assert payloads[1]["meta"]["workers"] == 2


class TestFalsify:
    ARGS = ["falsify", "--p", "5", "--d", "3", "--size", "10",
            "--trials", "60", "--seed", "123"]

    def test_clean_run(self, capsys):
        code, out, err = run_cli(self.ARGS, capsys)
        assert code == 0 and err == ""
        res = json.loads(out)["result"]
        assert res["seed"] == 123
        assert res["lemma_id"] == "falsify-5-3-10"
        assert res["counterexamples"] == []
        assert sum(res["details"]["outcomes"].values()) == 60

    def test_repeat_runs_identical_result(self, tmp_path, capsys):
        outs = []
        for i in range(2):
            rp = tmp_path / f"f{i}.json"
            code, _, _ = run_cli(self.ARGS + ["--report", str(rp)], capsys)
            assert code == 0
            outs.append(json.loads(rp.read_text()))
        assert outs[0]["result"] == outs[1]["result"]
        assert outs[0]["meta"]["result_sha256"] == \
            outs[1]["meta"]["result_sha256"]

    def test_invalid_size(self, capsys):
        code, _, err = run_cli(
            ["falsify", "--p", "7", "--d", "3", "--size", "20",
             "--trials", "5", "--seed", "1"], capsys)
        assert code == 1
        assert "error:" in err

    def test_missing_required_flag_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["falsify", "--p", "7", "--d", "3"])
        assert exc.value.code == 1


class TestInstalledScript:
    def test_console_entry_point(self, tmp_path):
        exe = shutil.which("ffspec")
        assert exe, "console script not on PATH"
        rp = tmp_path / "cli.json"
        proc = subprocess.run(
            [exe, "verify", "--lemma", "fuglede-3-2", "--report", str(rp)],
            capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0, proc.stderr
        payload = json.loads(rp.read_text())
        assert payload["result"]["lemma_id"] == "fuglede-3-2"
