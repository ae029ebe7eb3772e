"""Command-line behavior: subcommands, formats, determinism, exit codes."""

import json

import pytest

import clusterlab as cl
from clusterlab import cli
from clusterlab.cli import main
from clusterlab.probe import TheoremInconsistencyError

SMALL_CONFIG = {
    "seed": 0,
    "budget": 200,
    "samples": 6,
    "generators": [
        {"name": "line", "positions": [0.0, 1.0, 10.0, 11.0]},
        {"name": "perfect-uniform", "n": 6, "k": 2, "seed": 1},
    ],
    "algorithms": [
        {"id": "kmeans", "k": 2},
        {"id": "ratiocut", "k": 2},
        {"id": "complete"},
    ],
}


def write_dataset(tmp_path, name="ds.json"):
    path = tmp_path / name
    ds = cl.line([0, 1, 10, 11])
    cl.save_dataset(str(path), ds)
    return str(path)


def test_generate_round_trip(tmp_path):
    out = tmp_path / "gen.json"
    code = main(["generate", "--generator", "perfect-uniform",
                 "--n", "6", "--k", "2", "--seed", "3", "--out", str(out)])
    assert code == 0
    ds, planted = cl.load_dataset(str(out))
    assert ds.n == 6 and planted is not None
    assert cl.is_perfect(planted, ds)[0]


def test_generate_line_to_stdout(capsys):
    assert main(["generate", "--generator", "line",
                 "--positions", "0,1,10,11"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n"] == 4 and doc["kind"] == "distance"


def test_run_table_format(tmp_path, capsys):
    path = write_dataset(tmp_path)
    assert main(["run", "--algorithm", "kmeans", "--k", "2",
                 "--dataset", path]) == 0
    out = capsys.readouterr().out
    assert "clustering: [0, 0, 1, 1]" in out
    assert "cost: 1" in out


def test_run_records_format(tmp_path, capsys):
    path = write_dataset(tmp_path)
    assert main(["run", "--algorithm", "average", "--dataset", path,
                 "--format", "records"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dendrogram"] == "((0,1),(2,3));"
    assert doc["levels"]["2"] == [0, 0, 1, 1]


def test_probe_reports_responsive_verdict(tmp_path, capsys):
    path = write_dataset(tmp_path)
    assert main(["probe", "--algorithm", "kmeans", "--k", "2",
                 "--dataset", path, "--clustering", "0,0,1,1",
                 "--budget", "200"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"]["status"] == "responsive"
    assert doc["verdict"]["witnessRemove"] is not None


def test_classify_small_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(SMALL_CONFIG))
    assert main(["classify", "--config", str(cfg)]) == 0
    out = capsys.readouterr().out
    assert "kmeans(k=2)" in out and "sensitive" in out
    assert "complete" in out and "robust" in out


def test_classify_deterministic_bytes(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(SMALL_CONFIG))
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        assert main(["classify", "--config", str(cfg),
                     "--format", "records", "--out", str(out)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_usage_error_unknown_algorithm(tmp_path, capsys):
    path = write_dataset(tmp_path)
    assert main(["run", "--algorithm", "spectral", "--dataset", path]) == 1
    assert "error" in capsys.readouterr().err


def test_usage_error_missing_k(tmp_path):
    path = write_dataset(tmp_path)
    assert main(["run", "--algorithm", "kmeans", "--dataset", path]) == 1


def test_usage_error_missing_required_flag(capsys):
    with pytest.raises(SystemExit) as err:
        main(["run", "--algorithm", "kmeans"])
    assert err.value.code == 1


def test_usage_error_missing_dataset_file():
    assert main(["run", "--algorithm", "kmeans", "--k", "2",
                 "--dataset", "/nonexistent.json"]) == 1


def test_max_n_flag_caps_enumeration(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CLUSTERLAB_MAX_N", "12")
    path = tmp_path / "big.json"
    cl.save_dataset(str(path), cl.random_points(6, seed=0))
    assert main(["--max-n", "5", "run", "--algorithm", "kmeans",
                 "--k", "2", "--dataset", path.as_posix()]) == 1
    assert "cap" in capsys.readouterr().err


def test_inconsistency_exit_code(monkeypatch, capsys):
    def boom(config):
        raise TheoremInconsistencyError("certified clustering removed")

    monkeypatch.setattr(cli, "run_classification", boom)
    assert main(["classify"]) == 2
    assert "theorem inconsistency" in capsys.readouterr().err
