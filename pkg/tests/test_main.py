import os

import pytest
import yaml

from codes.campaign import EXIT_BUDGET, EXIT_FAILURE, EXIT_OK, EXIT_USAGE
from codes.instance_io import load_instance
from codes.main import main
from codes.scalars import GAUSSIAN
from codes.spectra import point_index


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    monkeypatch.delenv("OSDRAZIN_THREADS", raising=False)


@pytest.fixture
def config_path(tmp_path):
    cfg = {
        "theorem": "drazin-transfer-left",
        "family": None,
        "trials": 3,
        "dim": "2",
        "scalar": "rational",
        "seed": 0,
        "sampling": None,
        "ring": {"budget": 10000, "pair_budget": 100000},
        "budget_seconds": 600,
        "workers": 1,
        "format": "text",
        "out": None,
        "wandb": {"project": "test", "log": False},
    }
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(cfg))
    return str(path)


class TestList:
    def test_lists_theorems(self, capsys):
        assert main(["list"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "drazin-transfer-left" in out
        assert "azumaya-audit" in out
        assert "thm-3.5-left" in out and "-> drazin-transfer-left" in out


class TestRun:
    def test_unknown_theorem_is_usage_error(self, config_path):
        assert main(["run", "--config", config_path, "--theorem", "nope"]) == EXIT_USAGE

    def test_default_config_file(self):
        # codes/config.yaml 를 찾는다
        assert main(["run", "--theorem", "nope"]) == EXIT_USAGE

    def test_pass_and_report_files(self, config_path, tmp_path):
        out = tmp_path / "reports" / "drazin.txt"
        status = main(["run", "--config", config_path, "--quiet", "--out", str(out)])
        assert status == EXIT_OK
        assert out.exists()
        assert (tmp_path / "reports" / "drazin.csv").exists()
        assert "trials_run: 3" in out.read_text()

    def test_structured_report(self, config_path, tmp_path):
        out = tmp_path / "audit.yaml"
        status = main(["run", "--config", config_path, "--quiet", "--theorem", "azumaya-audit",
                       "--scalar", "mod:2", "--dim", "2", "--format", "structured", "--out", str(out)])
        assert status == EXIT_OK
        doc = yaml.safe_load(out.read_text())
        assert doc["theorem"] == "azumaya-audit"
        assert doc["trials_run"] == 1 and doc["failed"] == 0
        assert doc["budget_exceeded"] is False

    def test_ring_budget_exit_code(self, config_path):
        status = main(["run", "--config", config_path, "--quiet", "--theorem", "azumaya-audit",
                       "--scalar", "mod:3", "--dim", "3"])
        assert status == EXIT_BUDGET

    def test_theorem_alias(self, config_path):
        args = ["run", "--config", config_path, "--theorem", "thm-3.5-left", "--trials", "1", "--dim", "1",
                "--family", "classical", "--seed", "0", "--quiet"]
        assert main(args) == EXIT_OK

    def test_instance_file(self, config_path, tmp_path):
        path = tmp_path / "quad.yaml"
        assert main(["gen", "--family", "classical-quad", "--dim", "2", "--seed", "7", "--out", str(path)]) == EXIT_OK
        out = tmp_path / "quad_report.yaml"
        status = main(["run", "--config", config_path, "--theorem", "drazin-transfer-right", "--instance", str(path),
                       "--format", "structured", "--out", str(out)])
        assert status == EXIT_OK
        doc = yaml.safe_load(out.read_text())
        assert doc["theorem"] == "drazin-transfer-right" and doc["failed"] == 0

    def test_instance_of_wrong_kind(self, config_path, tmp_path):
        path = tmp_path / "pair.yaml"
        assert main(["gen", "--family", "idempotent-pair", "--out", str(path)]) == EXIT_OK
        assert main(["run", "--config", config_path, "--instance", str(path)]) == EXIT_USAGE

    def test_broken_instance_file(self, config_path, tmp_path):
        one = {"dim": 1, "scalar": "rational", "entries": [["1"]]}
        zero = {"dim": 1, "scalar": "rational", "entries": [["0"]]}
        path = tmp_path / "bad.yaml"
        path.write_text(yaml.safe_dump({"type": "quad", "matrices": {"a": one, "b": zero, "c": one, "d": one}}))
        assert main(["run", "--config", config_path, "--instance", str(path)]) == EXIT_FAILURE

    def test_bad_family(self, config_path):
        assert main(["run", "--config", config_path, "--family", "cline"]) == EXIT_USAGE


class TestGen:
    def test_classical_quad(self, tmp_path):
        out = tmp_path / "quad.yaml"
        assert main(["gen", "--family", "classical-quad", "--dim", "2", "--seed", "7", "--out", str(out)]) == EXIT_OK
        inst = load_instance(str(out))
        assert inst.quad.a.dim == 2

    def test_same_seed_same_file(self, tmp_path):
        paths = [tmp_path / "a.yaml", tmp_path / "b.yaml"]
        for p in paths:
            main(["gen", "--family", "planted-pair", "--dim", "3", "--seed", "11", "--out", str(p)])
        assert paths[0].read_text() == paths[1].read_text()

    def test_planted_jordan_param(self, tmp_path):
        out = tmp_path / "jordan.yaml"
        assert main(["gen", "--family", "planted-jordan", "--param", "spec=[[1, 2]]", "--out", str(out)]) == EXIT_OK
        a = load_instance(str(out)).matrices["a"]
        assert point_index(a, 1) == 2

    def test_gaussian(self, tmp_path):
        out = tmp_path / "quad.yaml"
        assert main(["gen", "--family", "solved-quad", "--scalar", "gaussian", "--out", str(out)]) == EXIT_OK
        assert load_instance(str(out)).quad.a.kind == GAUSSIAN

    def test_zero_rank_pair(self, tmp_path):
        out = tmp_path / "pair.yaml"
        assert main(["gen", "--family", "idempotent-pair", "--param", "rank=0", "--out", str(out)]) == EXIT_OK
        pair = load_instance(str(out)).pair
        assert pair.a.is_zero() and pair.b.is_zero()

    def test_exhaustive_ring(self, tmp_path):
        out = tmp_path / "ring.yaml"
        assert main(["gen", "--family", "exhaustive-ring", "--scalar", "mod:2", "--out", str(out)]) == EXIT_OK
        assert len(load_instance(str(out)).meta["pairs"]) > 0

    def test_exhaustive_ring_needs_mod(self, tmp_path):
        out = tmp_path / "ring.yaml"
        assert main(["gen", "--family", "exhaustive-ring", "--out", str(out)]) == EXIT_USAGE
        assert not os.path.exists(out)

    def test_ring_too_large(self, tmp_path):
        out = tmp_path / "ring.yaml"
        status = main(["gen", "--family", "exhaustive-ring", "--scalar", "mod:5", "--dim", "3", "--out", str(out)])
        assert status == EXIT_FAILURE

    def test_bad_param(self, tmp_path):
        assert main(["gen", "--family", "classical-quad", "--param", "rank", "--out", str(tmp_path / "x")]) == EXIT_USAGE
