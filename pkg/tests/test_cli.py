import json

import pytest

from cbpp.benchgen import read_instance
from cbpp.cli import main
from cbpp.model import Instance, instance_to_json, solution_from_json


@pytest.fixture
def quarter_files(tmp_path, quarter_instance):
    inst_path = tmp_path / "quarter.json"
    inst_path.write_text(instance_to_json(quarter_instance))
    return inst_path, tmp_path


def run(*argv):
    return main([str(a) for a in argv])


class TestGenerate:
    def test_fixed_family(self, tmp_path):
        out = tmp_path / "inst.json"
        assert run("generate", "--law", "linear", "--n0", "8", "--mode", "fixed",
                   "--bin-side", "112", "-o", out) == 0
        inst = read_instance(out)
        assert inst.n == 40
        assert inst.bin_side == 112.0

    def test_config_file_fills_missing_fields(self, tmp_path):
        cfg = tmp_path / "spec.json"
        cfg.write_text(json.dumps(
            {"n0": 3, "law": "sqrt", "mode": "fixed", "bin_side": 10.0}
        ))
        out = tmp_path / "inst.json"
        assert run("generate", "--config", cfg, "-o", out) == 0
        assert read_instance(out).n == 15

    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "spec.json"
        cfg.write_text(json.dumps(
            {"n0": 3, "law": "sqrt", "mode": "fixed", "bin_side": 10.0}
        ))
        out = tmp_path / "inst.json"
        assert run("generate", "--config", cfg, "--n0", "2", "-o", out) == 0
        assert read_instance(out).n == 10

    def test_missing_parameters_fail(self, tmp_path, capsys):
        assert run("generate", "--law", "linear", "-o", tmp_path / "x.json") == 1
        assert "missing" in capsys.readouterr().err


class TestSolve:
    def test_gacoa_on_quarter_instance(self, quarter_files, quarter_instance, capsys):
        inst_path, tmp = quarter_files
        out = tmp / "sol.json"
        assert run("solve", "-i", inst_path, "--alg", "gacoa", "-o", out) == 0
        assert "bins_used=2" in capsys.readouterr().out
        layout = solution_from_json(out.read_text(), quarter_instance)
        assert len(layout.placements) == 8

    def test_repeat_runs_byte_identical(self, quarter_files):
        inst_path, tmp = quarter_files
        a, b = tmp / "a.json", tmp / "b.json"
        args = ["solve", "-i", inst_path, "--alg", "alns",
                "--iters", "200", "--seed", "5"]
        assert run(*args, "-o", a) == 0
        assert run(*args, "-o", b) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_seed_env_fallback(self, quarter_files, monkeypatch):
        inst_path, tmp = quarter_files
        a, b = tmp / "a.json", tmp / "b.json"
        monkeypatch.setenv("CBPP_SEED", "9")
        assert run("solve", "-i", inst_path, "--alg", "alns",
                   "--iters", "100", "-o", a) == 0
        monkeypatch.delenv("CBPP_SEED")
        assert run("solve", "-i", inst_path, "--alg", "alns",
                   "--iters", "100", "--seed", "9", "-o", b) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_trace_and_stats_outputs(self, quarter_files):
        inst_path, tmp = quarter_files
        out, trace, stats = tmp / "s.json", tmp / "t.csv", tmp / "st.json"
        assert run("solve", "-i", inst_path, "--alg", "lns", "--iters", "50",
                   "-o", out, "--trace", trace, "--stats", stats) == 0
        assert trace.read_bytes().startswith(b"iteration,f\r\n")
        data = json.loads(stats.read_text())
        assert data["iterations_run"] == 50

    def test_missing_input_fails(self, tmp_path, capsys):
        assert run("solve", "-i", tmp_path / "no.json",
                   "-o", tmp_path / "out.json") == 1
        assert "error:" in capsys.readouterr().err


class TestValidateAndRender:
    @pytest.fixture
    def solved(self, quarter_files):
        inst_path, tmp = quarter_files
        sol = tmp / "sol.json"
        assert run("solve", "-i", inst_path, "--alg", "gacoa", "-o", sol) == 0
        return inst_path, sol, tmp

    def test_validate_ok(self, solved, capsys):
        inst_path, sol, _ = solved
        assert run("validate", "-i", sol, "--instance", inst_path) == 0
        assert "OK" in capsys.readouterr().out

    def test_validate_corrupted_solution(self, solved, capsys):
        inst_path, sol, tmp = solved
        data = json.loads(sol.read_text())
        data["placements"][1]["x"] = data["placements"][0]["x"]
        data["placements"][1]["y"] = data["placements"][0]["y"]
        bad = tmp / "bad.json"
        bad.write_text(json.dumps(data))
        assert run("validate", "-i", bad, "--instance", inst_path) == 1
        assert "overlap" in capsys.readouterr().err

    def test_validate_wrong_instance(self, solved, tmp_path, capsys):
        _, sol, _ = solved
        other = tmp_path / "other.json"
        other.write_text(instance_to_json(Instance(4.0, (0.9,) * 8)))
        assert run("validate", "-i", sol, "--instance", other) == 1
        assert "hash" in capsys.readouterr().err

    def test_render(self, solved):
        inst_path, sol, tmp = solved
        svg = tmp / "out.svg"
        assert run("render", "-i", sol, "--instance", inst_path, "-o", svg) == 0
        text = svg.read_text()
        assert text.startswith("<svg ")
        assert text.count("<circle") == 8

    def test_usage_error_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            run("render", "-i", "x.json")  # missing --instance and -o
        assert exc.value.code == 2


class TestCompare:
    def test_two_instances_two_algorithms(self, tmp_path, capsys):
        d = tmp_path / "instances"
        d.mkdir()
        (d / "a.json").write_text(instance_to_json(Instance(4.0, (1.0,) * 8)))
        (d / "b.json").write_text(instance_to_json(Instance(4.0, (1.0,) * 4)))
        out = tmp_path / "cmp.csv"
        assert run("compare", "--dir", d, "--algs", "gacoa,alns",
                   "--iters", "100", "-o", out) == 0
        lines = out.read_bytes().decode().strip().split("\r\n")
        assert len(lines) == 5  # header + 2 instances x 2 algorithms
        assert lines[0].startswith("instance,algorithm,f,K,wall_time")
        assert lines[0].endswith("f_alns_minus_f_gacoa")
        captured = capsys.readouterr().out
        assert "mean f_A - f_G over 2 instances:" in captured

    def test_empty_dir_fails(self, tmp_path, capsys):
        d = tmp_path / "empty"
        d.mkdir()
        assert run("compare", "--dir", d, "-o", tmp_path / "c.csv") == 1
        assert "no instance files" in capsys.readouterr().err
