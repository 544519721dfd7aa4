import json
import subprocess
import sys

from graphfx.cli import main


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "graphfx.cli", *args],
        capture_output=True, text=True, timeout=120,
    )
    return proc


class TestCliRuns:
    def test_bfs_on_generated_graph(self):
        proc = run_cli("bfs", "--graph", "rmat:6,4", "--iters", "2", "--warmup", "0")
        assert proc.returncode == 0
        assert "runtime_ms" in proc.stdout

    def test_json_output_parses(self):
        proc = run_cli("bfs", "--graph", "rmat:5,4", "--iters", "1",
                       "--warmup", "0", "--output", "json")
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        assert report["primitive"] == "bfs"
        assert len(report["runs"]) == 1

    def test_sssp_auto_weights(self):
        proc = run_cli("sssp", "--graph", "rgg:6", "--iters", "1", "--warmup", "0",
                       "--output", "json")
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["mean_mteps"] is None

    def test_tc_runs(self):
        proc = run_cli("tc", "--graph", "er:40,0.2", "--iters", "1", "--warmup", "0",
                       "--output", "json")
        assert proc.returncode == 0

    def test_sweep_emits_csv(self):
        proc = run_cli("sweep", "--graph", "rmat:5,4", "--runs", "1",
                       "--do-a-grid", "1e-3", "--do-b-grid", "0.2")
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[0] == "do_a,do_b,runtime_ms,mteps"

    def test_output_file(self, tmp_path):
        out = tmp_path / "r.json"
        proc = run_cli("bfs", "--graph", "rmat:4,4", "--iters", "1", "--warmup", "0",
                       "--output", "json", "--output-file", str(out))
        assert proc.returncode == 0
        assert json.loads(out.read_text())["primitive"] == "bfs"


class TestCliErrors:
    def test_bad_source_is_config_error(self):
        proc = run_cli("bfs", "--graph", "rmat:4,4", "--source", "9999")
        assert proc.returncode == 2

    def test_bad_graph_spec_is_config_error(self):
        proc = run_cli("bfs", "--graph", "rmat:nope")
        assert proc.returncode == 2

    def test_missing_file_is_data_error(self):
        proc = run_cli("bfs", "--graph", "/does/not/exist.mtx")
        assert proc.returncode == 3

    def test_malformed_file_is_data_error(self, tmp_path):
        bad = tmp_path / "bad.mtx"
        bad.write_text("%%MatrixMarket matrix coordinate pattern general\n2 2 1\nx y\n")
        proc = run_cli("bfs", "--graph", str(bad))
        assert proc.returncode == 3

    def test_unknown_subcommand(self):
        proc = run_cli("mst", "--graph", "rmat:4,4")
        assert proc.returncode == 2


class TestMainFunction:
    def test_in_process_entry(self, capsys):
        rc = main(["bfs", "--graph", "rmat:4,4", "--iters", "1", "--warmup", "0"])
        assert rc == 0
        assert "runtime_ms" in capsys.readouterr().out
